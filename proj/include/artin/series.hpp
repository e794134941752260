#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "artin/polynomial.hpp"

namespace artin {

/// m-adic order of a truncated series: an exact value, or only the lower
/// bound N when every known coefficient vanishes.
class OrderValue {
 public:
  static OrderValue exact(unsigned v) { return OrderValue(v, true); }
  static OrderValue at_least(unsigned n) { return OrderValue(n, false); }

  bool is_finite() const noexcept { return finite_; }
  /// The exact order, or the certified lower bound.
  unsigned value() const noexcept { return v_; }
  /// Certified: ord >= k.
  bool at_least_k(unsigned k) const noexcept { return v_ >= k; }

  /// "3" or ">=20".
  std::string to_string() const;

  friend OrderValue min(const OrderValue& a, const OrderValue& b);
  friend bool operator==(const OrderValue&, const OrderValue&) = default;

 private:
  OrderValue(unsigned v, bool finite) : v_(v), finite_(finite) {}
  unsigned v_;
  bool finite_;
};

/// ||z|| = e^{-ord z}, kept symbolic.
struct Norm {
  OrderValue ord;
  /// "e^-3", or "<= e^-20" for an order lower bound.
  std::string to_string() const;
};

/// Element of k[[x]] or k[[x,y]] known modulo m^N. The base ring holds the
/// one or two series variable names. Coefficients are stored densely by total
/// degree; no stored term has degree >= N.
class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  /// The zero series to precision n.
  TruncatedSeries(RingPtr base, unsigned precision);

  static TruncatedSeries constant(RingPtr base, const Scalar& c, unsigned precision);
  /// Terms of degree >= precision are dropped. p may live over any ring whose
  /// used variables are series variables of `base` (matched by name).
  static TruncatedSeries from_polynomial(const Polynomial& p, RingPtr base, unsigned precision);

  const RingPtr& base() const noexcept { return base_; }
  Field field() const { return base_->field(); }
  unsigned nvars() const noexcept { return static_cast<unsigned>(base_->size()); }
  unsigned precision() const noexcept { return precision_; }

  /// Coefficient of x^i y^j (j must be 0 for one variable). Zero when the
  /// degree is at or beyond the precision.
  Scalar coefficient(unsigned i, unsigned j = 0) const;
  void set_coefficient(unsigned i, unsigned j, const Scalar& c);

  OrderValue order() const;
  Norm norm() const { return {order()}; }
  bool is_zero() const;
  /// Degree-d homogeneous part, over the base ring.
  Polynomial homogeneous_part(unsigned d) const;

  /// Pre: n <= precision().
  TruncatedSeries truncated(unsigned n) const;
  /// Treats the known terms as an exact polynomial and zero-fills up to n.
  TruncatedSeries extended(unsigned n) const;

  TruncatedSeries operator-() const;
  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  /// Precision is the minimum of the operand precisions.
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

  TruncatedSeries scaled(const Scalar& c) const;
  /// Multiplication by x^i y^j; precision is unchanged.
  TruncatedSeries shifted(unsigned i, unsigned j = 0) const;
  TruncatedSeries pow(unsigned e) const;

  /// Exact quotient by d with ord(d) = w finite: solved degree by degree
  /// against the leading form of d. The result has precision
  /// min(N, N_d) - w. Throws Error(not_divisible) when some homogeneous
  /// step leaves a remainder, Error(precision) when ord(d) is unknown.
  TruncatedSeries divide(const TruncatedSeries& d) const;
  /// Pre: nonzero constant term.
  TruncatedSeries inverse() const;

  /// Linear coordinate change x -> a x + b y, y -> c x + d y (two variables).
  TruncatedSeries linear_change(const Scalar& a, const Scalar& b, const Scalar& c,
                                const Scalar& d) const;
  /// Two variables: the coefficient of y^j as a series in x, precision N - j.
  TruncatedSeries y_coefficient(unsigned j) const;
  /// Two variables: u(0, y) as a series in y.
  TruncatedSeries at_x_zero() const;
  /// Embeds a one-variable series as a two-variable one over `base2`,
  /// keeping the variable name.
  TruncatedSeries widened(const RingPtr& base2) const;

  Polynomial to_polynomial(const RingPtr& target) const;
  /// `x + x^4 + O(m^20)`.
  std::string to_string() const;

 private:
  std::size_t index(unsigned i, unsigned j) const;
  std::size_t size_for(unsigned n) const;
  void check_compatible(const TruncatedSeries& o) const;

  RingPtr base_;
  unsigned precision_ = 0;
  std::vector<Scalar> coeffs_;
};

/// Product certified to min(N_a + ord b, N_b + ord a): the unknown tails
/// only contribute beyond that. Sharper than operator*, which keeps
/// min(N_a, N_b).
TruncatedSeries certified_product(const TruncatedSeries& a, const TruncatedSeries& b);

using SeriesVector = std::vector<TruncatedSeries>;

/// max_i ||u_i - v_i||, as the minimum order of the differences.
OrderValue distance_order(std::span<const TruncatedSeries> u, std::span<const TruncatedSeries> v);
Norm distance(std::span<const TruncatedSeries> u, std::span<const TruncatedSeries> v);
OrderValue vector_order(std::span<const TruncatedSeries> v);
unsigned min_precision(std::span<const TruncatedSeries> v);

/// Substitutes zbar[k] for the unknown named unknowns[k]; series variables of
/// f map to themselves. The precision is the minimum over zbar.
/// Throws Error(invalid_argument) when f uses a variable that is neither.
TruncatedSeries evaluate(const Polynomial& f, std::span<const TruncatedSeries> zbar,
                         std::span<const std::string> unknowns);
/// Minimum order over the evaluated generators.
OrderValue ideal_order(std::span<const Polynomial> gens, std::span<const TruncatedSeries> zbar,
                       std::span<const std::string> unknowns);

/// Series literal: polynomial text followed by a mandatory `O(m^N)` suffix
/// (`O(x^N)` is also accepted with one variable).
TruncatedSeries parse_series(std::string_view text, const RingPtr& base, int line = 1,
                             int column = 1);
std::vector<TruncatedSeries> parse_series_list(std::string_view text, const RingPtr& base,
                                               int line = 1, int column = 1);

}  // namespace artin
