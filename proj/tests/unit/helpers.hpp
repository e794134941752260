#pragma once

#include <string>
#include <vector>

#include "artin/groebner.hpp"
#include "artin/parse.hpp"

namespace test {

inline artin::RingPtr ring(std::vector<std::string> names,
                           artin::Field f = artin::Field::rationals()) {
  return artin::make_ring(f, std::move(names));
}

inline artin::Polynomial poly(const artin::RingPtr& r, const std::string& text) {
  return artin::parse_polynomial(text, r);
}

inline artin::Ideal ideal(const artin::RingPtr& r, const std::string& text) {
  return artin::Ideal(r, artin::parse_polynomial_list(text, r));
}

}  // namespace test
