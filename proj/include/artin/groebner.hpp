#pragma once

#include <memory>
#include <vector>

#include "artin/polynomial.hpp"

namespace artin {

/// Polynomial ideal given by generators, optionally carrying a reduced
/// Groebner basis. The cached basis is computed once (by groebner()) and
/// never mutated afterwards, so Ideal values can be shared across threads.
class Ideal {
 public:
  explicit Ideal(RingPtr ring, std::vector<Polynomial> generators = {});

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<Polynomial>& generators() const noexcept { return generators_; }

  bool has_basis() const noexcept { return basis_ != nullptr; }
  /// Pre: has_basis().
  const std::vector<Polynomial>& basis() const;
  const MonomialOrder& basis_order() const;

  /// I + J over the same ring.
  friend Ideal operator+(const Ideal& a, const Ideal& b);

  std::string to_string() const;

 private:
  friend Ideal groebner(const Ideal&, const MonomialOrder&);

  struct Basis {
    MonomialOrder order;
    std::vector<Polynomial> polys;
  };

  RingPtr ring_;
  std::vector<Polynomial> generators_;
  std::shared_ptr<const Basis> basis_;
};

/// Reduced, monic Groebner basis (Buchberger with Gebauer-Moeller pair
/// criteria, normal selection strategy). Idempotent.
Ideal groebner(const Ideal& ideal, const MonomialOrder& order = MonomialOrder::degrevlex());

/// Fully reduced normal form. Uses the cached basis when present, otherwise a
/// degrevlex basis computed for this call.
Polynomial normal_form(const Polynomial& p, const Ideal& ideal);

bool contains(const Ideal& ideal, const Polynomial& p);
/// small is a subset of big.
bool contains(const Ideal& big, const Ideal& small);
/// Mutual membership of generators.
bool ideals_equal(const Ideal& a, const Ideal& b);
bool is_unit_ideal(const Ideal& ideal);

/// Every S-polynomial of the cached basis reduces to zero. Pre: has_basis().
bool satisfies_buchberger_criterion(const Ideal& ideal);

/// I ∩ J by eliminating a fresh tag variable t from t*I + (1-t)*J.
Ideal intersect(const Ideal& a, const Ideal& b);

/// Ideal quotient (J : I) = intersection over generators g of I of
/// (J ∩ (g)) / g.
Ideal colon(const Ideal& numerator, const Ideal& divisor);

/// p in sqrt(I), via 1 in I + (1 - w*p) for a fresh variable w.
bool radical_member(const Polynomial& p, const Ideal& ideal);

}  // namespace artin
