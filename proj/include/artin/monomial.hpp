#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace artin {

using VarId = std::uint32_t;

/// Sparse exponent vector: (variable, exponent) pairs sorted by variable,
/// zero exponents never stored. Appending variables to a ring therefore
/// leaves existing monomials valid.
class Monomial {
 public:
  using Entry = std::pair<VarId, std::uint32_t>;

  Monomial() = default;
  /// Normalizes: sorts, merges repeated variables, drops zero exponents.
  explicit Monomial(std::vector<Entry> entries);
  static Monomial variable(VarId v, std::uint32_t exponent = 1);

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::uint32_t exponent(VarId v) const noexcept;
  unsigned degree() const noexcept { return degree_; }
  bool is_one() const noexcept { return entries_.empty(); }

  bool divides(const Monomial& other) const noexcept;
  bool coprime(const Monomial& other) const noexcept;
  /// Pre: divisor.divides(*this).
  Monomial divided_by(const Monomial& divisor) const;
  Monomial without(VarId v) const;
  /// Keeps only variables with id < bound.
  Monomial restricted_below(VarId bound) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  static Monomial lcm(const Monomial& a, const Monomial& b);

  /// Canonical storage order (lexicographic on the entry list); not a
  /// monomial order in the Groebner sense.
  friend auto operator<=>(const Monomial& a, const Monomial& b) {
    return a.entries_ <=> b.entries_;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<Entry> entries_;
  unsigned degree_ = 0;
};

/// Global monomial orders. Variable 0 is the largest variable. `block(k)`
/// compares the variables [0, k) by degrevlex first and breaks ties by
/// degrevlex on the remaining variables; it eliminates the first k variables.
class MonomialOrder {
 public:
  enum class Kind { degrevlex, lex, block };

  static MonomialOrder degrevlex() { return MonomialOrder(Kind::degrevlex, 0); }
  static MonomialOrder lex() { return MonomialOrder(Kind::lex, 0); }
  static MonomialOrder block(VarId split) { return MonomialOrder(Kind::block, split); }

  Kind kind() const noexcept { return kind_; }
  VarId split() const noexcept { return split_; }

  /// Returns 1 if a > b, -1 if a < b, 0 if equal.
  int compare(const Monomial& a, const Monomial& b) const noexcept;
  bool greater(const Monomial& a, const Monomial& b) const noexcept {
    return compare(a, b) > 0;
  }

  std::string to_string() const;
  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  MonomialOrder(Kind kind, VarId split) : kind_(kind), split_(split) {}
  Kind kind_;
  VarId split_;
};

}  // namespace artin
