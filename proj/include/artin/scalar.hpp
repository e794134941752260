#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace artin {

/// Coefficient domain: the rationals (modulus 0) or GF(p) for a prime p.
/// GF(p) exists for the finite jet-search oracle; the approximation theory
/// itself assumes characteristic zero.
class Field {
 public:
  constexpr Field() = default;

  static Field rationals() { return Field(); }
  /// Throws Error(configuration) unless p is a prime below 2^62.
  static Field prime(std::uint64_t p);
  /// Accepts "Q", "QQ", "GF(p)" or "GF p".
  static Field parse(const std::string& spec);

  bool is_rational() const noexcept { return modulus_ == 0; }
  std::uint64_t modulus() const noexcept { return modulus_; }
  std::string to_string() const;

  friend bool operator==(Field, Field) = default;

 private:
  explicit constexpr Field(std::uint64_t p) : modulus_(p) {}
  std::uint64_t modulus_ = 0;
};

/// Exact field element. Rationals are kept canonical (lowest terms, positive
/// denominator); residues are kept in [0, p). Mixing domains throws
/// Error(domain_mismatch).
class Scalar {
 public:
  Scalar() = default;
  explicit Scalar(Field f) : field_(f) {}
  Scalar(Field f, long value);
  Scalar(Field f, const mpq_class& value);

  static Scalar zero(Field f) { return Scalar(f); }
  static Scalar one(Field f) { return Scalar(f, 1L); }

  Field field() const noexcept { return field_; }
  bool is_zero() const noexcept;
  bool is_one() const noexcept;

  /// Rational value; for GF(p) the canonical representative in [0, p).
  mpq_class to_rational() const;
  /// Residue (GF(p) only).
  std::uint64_t residue() const noexcept { return residue_; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar inverse() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);

  /// "3", "-3/2"; residues print as their representative in [0, p).
  std::string to_string() const;
  /// True when to_string() needs a leading '-' (never for residues).
  bool is_negative() const noexcept;

 private:
  void check_same(const Scalar& o) const;

  Field field_;
  mpq_class q_;
  std::uint64_t residue_ = 0;
};

}  // namespace artin
