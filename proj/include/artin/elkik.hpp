#pragma once

#include <span>
#include <vector>

#include "artin/groebner.hpp"

namespace artin {

/// Contribution of one equation subset E to the Elkik ideal.
struct ElkikComponent {
  std::vector<std::size_t> equations;  // E, increasing
  std::vector<Minor> minors;           // |E| x |E| minors of the Jacobian rows E
  Ideal colon;                         // ((f_i, i in E) : I)
};

struct ElkikResult {
  Ideal ideal;  // sum over E of (minors of E) * colon
  std::vector<ElkikComponent> components;
};

/// Largest equation count accepted; the subset sum has 2^n terms.
inline constexpr std::size_t kMaxElkikEquations = 20;

/// Elkik ideal of (f_1..f_n) with respect to diff_vars, summed over every
/// subset E including the empty one. Generators are the nonzero products
/// minor * colon generator, without Groebner post-processing.
/// Throws Error(capacity) when n exceeds kMaxElkikEquations.
ElkikResult elkik(std::span<const Polynomial> fs, std::span<const VarId> diff_vars);
Ideal elkik_ideal(std::span<const Polynomial> fs, std::span<const VarId> diff_vars);

}  // namespace artin
