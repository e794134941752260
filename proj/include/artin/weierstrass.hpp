#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "artin/series.hpp"

namespace artin {

/// y^r + a_1(x) y^(r-1) + ... + a_r(x) with a_i(0) = 0. `base` is the
/// two-variable series ring (x, y); the a_i are one-variable series in x, each
/// with its own precision.
struct DistinguishedPolynomial {
  RingPtr base;
  std::vector<TruncatedSeries> a;

  unsigned r() const noexcept { return static_cast<unsigned>(a.size()); }
  /// Throws Error(invalid_argument) when some a_i(0) != 0.
  void validate() const;
  /// ord(a_i) >= i for every i: the division is then compatible with m-adic
  /// truncation.
  bool is_graded() const;
  /// As a two-variable series to precision n (the a_i must be known that far).
  TruncatedSeries as_series(unsigned n) const;
  /// `y^2 + [x + O(m^5)] y + [x^2 + O(m^6)]`.
  std::string to_string() const;
};

DistinguishedPolynomial parse_distinguished(std::string_view text, const RingPtr& base,
                                            int line = 1, int column = 1);

/// Invertible linear change (x, y) -> (a x + b y, c x + d y) with its inverse.
class LinearChange {
 public:
  static LinearChange identity(Field f);
  static LinearChange shear(const Scalar& lambda);  // x -> x + lambda y
  LinearChange(Scalar a, Scalar b, Scalar c, Scalar d);

  LinearChange inverse() const;
  bool is_identity() const;
  TruncatedSeries apply(const TruncatedSeries& u) const;
  /// Substitutes into the variables x, y of p (by VarId).
  Polynomial apply(const Polynomial& p, VarId x, VarId y) const;
  std::string to_string() const;

  const Scalar& a() const noexcept { return m_[0]; }
  const Scalar& b() const noexcept { return m_[1]; }
  const Scalar& c() const noexcept { return m_[2]; }
  const Scalar& d() const noexcept { return m_[3]; }

 private:
  Scalar m_[4];
  Scalar inv_[4];
};

/// ord of u(0, y); the at-least marker when u(0, y) vanishes to precision.
OrderValue y_regular_order(const TruncatedSeries& u);

struct Regularized {
  LinearChange change;
  TruncatedSeries series;  // change applied to u
};

/// Finds a shear x -> x + lambda y after which u is y-regular of order
/// exactly ord(u). Over Q lambda runs 0, 1, 2, ...; over GF(p) it starts at 0
/// and then draws nonzero residues from `seed`.
/// Throws Error(precision) when ord(u) is not certified.
Regularized regularize(const TruncatedSeries& u, std::uint64_t seed = 0);

struct Preparation {
  TruncatedSeries unit;  // precision n - r
  DistinguishedPolynomial dist;
};

/// u = unit * dist mod m^n for u y-regular of order r = ord(u) < n.
/// Throws Error(precondition) otherwise, asking for regularize() first.
Preparation prepare(const TruncatedSeries& u, unsigned n);

struct WDivision {
  TruncatedSeries quotient;            // two variables
  std::vector<TruncatedSeries> remainder;  // rem_j(x), j = 0..r-1
};

/// g = a q + sum_j rem_j(x) y^j, by long division in y. Precisions are
/// tracked per y-degree; when a is graded the remainder terms keep
/// precision n - j and the quotient n - r.
WDivision w_divide(const TruncatedSeries& g, const DistinguishedPolynomial& a, unsigned n);

struct GenericDivisionResult {
  Polynomial quotient;
  Polynomial remainder;
};

/// P = A Q + R with A = V^r + A_1 V^(r-1) + ... + A_r, A_i = a_vars[i-1]
/// indeterminates. deg_V(R) < r and deg(R) <= deg(P).
GenericDivisionResult generic_euclid(const Polynomial& p, unsigned r, VarId v,
                                     std::span<const VarId> a_vars);

}  // namespace artin
