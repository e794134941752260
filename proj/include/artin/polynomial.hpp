#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "artin/monomial.hpp"
#include "artin/scalar.hpp"

namespace artin {

/// Ordered variable universe plus coefficient field. Variable i of the ring
/// is VarId i; polynomials over different rings never mix.
class Ring {
 public:
  Ring(Field field, std::vector<std::string> names);

  Field field() const noexcept { return field_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(VarId v) const { return names_.at(v); }

  std::optional<VarId> find(std::string_view name) const;
  /// Throws Error(invalid_argument) for unknown names.
  VarId index(std::string_view name) const;
  /// `base` itself if unused, otherwise base_1, base_2, ...
  std::string fresh_name(const std::string& base) const;

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.field_ == b.field_ && a.names_ == b.names_;
  }

 private:
  Field field_;
  std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const Ring>;

/// Throws Error(invalid_argument) on duplicate or empty names.
RingPtr make_ring(Field field, std::vector<std::string> names);

/// Degree reported for the zero polynomial.
inline constexpr int kMinusInfinity = std::numeric_limits<int>::min();

/// Sparse multivariate polynomial with exact coefficients. Never stores a
/// zero coefficient.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Scalar>;

  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial constant(RingPtr ring, const Scalar& c);
  static Polynomial constant(RingPtr ring, long c);
  static Polynomial variable(RingPtr ring, VarId v);
  static Polynomial variable(RingPtr ring, std::string_view name);
  static Polynomial term(RingPtr ring, const Monomial& m, const Scalar& c);

  const RingPtr& ring() const noexcept { return ring_; }
  Field field() const { return ring_->field(); }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;

  /// Total degree; kMinusInfinity for the zero polynomial.
  int degree() const noexcept;
  unsigned degree_in(VarId v) const noexcept;
  Scalar coefficient(const Monomial& m) const;
  Scalar constant_term() const { return coefficient(Monomial()); }
  bool uses(VarId v) const noexcept;

  void add_term(const Monomial& m, const Scalar& c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  Polynomial scaled(const Scalar& c) const;
  Polynomial times_term(const Monomial& m, const Scalar& c) const;
  Polynomial pow(unsigned e) const;

  /// Formal partial derivative.
  Polynomial derivative(VarId v) const;
  /// Coefficient of v^e, as a polynomial free of v.
  Polynomial coefficient_in(VarId v, unsigned e) const;

  /// Leading monomial and coefficient. Pre: nonzero.
  std::pair<Monomial, Scalar> leading(const MonomialOrder& order) const;

  /// Re-expresses the polynomial over `target`, mapping variables by name.
  /// Throws if a used variable has no counterpart.
  Polynomial embed(const RingPtr& target) const;
  /// Ring homomorphism: source variable i is sent to images[i] (a polynomial
  /// over `target`). Variables not used by the polynomial may have empty
  /// images.
  Polynomial substitute(const RingPtr& target,
                        std::span<const std::optional<Polynomial>> images) const;

  /// Text form accepted by parse_polynomial, e.g. `x^2*y - 3/2*z1`.
  std::string to_string() const;

 private:
  void check_ring(const Polynomial& o) const;

  RingPtr ring_;
  TermMap terms_;
};

/// Multivariate exact division; throws Error(not_divisible) when q does not
/// divide p.
Polynomial divide_exact(const Polynomial& p, const Polynomial& q);

/// Dense grid of polynomials over one ring.
class PolyMatrix {
 public:
  PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const RingPtr& ring() const noexcept { return ring_; }
  Polynomial& at(std::size_t r, std::size_t c) { return entries_.at(r * cols_ + c); }
  const Polynomial& at(std::size_t r, std::size_t c) const { return entries_.at(r * cols_ + c); }

  PolyMatrix submatrix(std::span<const std::size_t> rows,
                       std::span<const std::size_t> cols) const;
  PolyMatrix transposed() const;

 private:
  RingPtr ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Polynomial> entries_;
};

/// Rows are equations, columns are the differentiation variables.
PolyMatrix jacobian(std::span<const Polynomial> fs, std::span<const VarId> diff_vars);
PolyMatrix jacobian(std::span<const Polynomial> fs, std::span<const std::string> diff_vars);

/// Cofactor expansion up to 4x4, fraction-free Bareiss elimination above.
Polynomial determinant(const PolyMatrix& m);

struct Minor {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  Polynomial value;
};

/// All h x h minors, row subsets outer and column subsets inner, both in
/// lexicographic order. h = 0 yields {1}; h above either dimension yields {}.
std::vector<Minor> indexed_minors(const PolyMatrix& m, std::size_t h);
std::vector<Polynomial> minors(const PolyMatrix& m, std::size_t h);

/// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k);

}  // namespace artin
