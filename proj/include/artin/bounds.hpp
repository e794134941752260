#pragma once

#include <string>

#include <gmpxx.h>

namespace artin {

/// Pluggable integer function a(m, d) for the one-variable approximation
/// bound. Only existence is known, so the form is a configuration choice:
///   const C          a = C
///   linear C         a = C * d        (default, C = 1)
///   poly C B         a = C * d^(B^m)
class AFunction {
 public:
  enum class Kind { constant, linear, poly };

  AFunction() = default;
  static AFunction constant(mpz_class c);
  static AFunction linear(mpz_class coef);
  static AFunction poly(mpz_class coef, unsigned long base);
  /// Parses the textual forms above. Throws Error(configuration).
  static AFunction parse(const std::string& text);

  /// Throws Error(configuration) on a non-positive result and Error(capacity)
  /// when the value would be absurdly large.
  mpz_class operator()(unsigned long m, const mpz_class& d) const;
  std::string to_string() const;

 private:
  Kind kind_ = Kind::linear;
  mpz_class coef_ = 1;
  unsigned long base_ = 2;
};

/// Existence-only constants, user supplied. Exponent positions need
/// positive integers.
struct BoundConstants {
  mpz_class K = 2;       // doubly exponential base, also inside beta_estimate
  mpz_class K1 = 2;      // isolated singularity inner constant
  mpz_class Kprime = 2;  // threshold d^(K'^(m ord H)) (c+1)
  mpq_class K2 = 1;      // display only
  mpq_class K3 = 1;      // display only
  mpq_class C = 1;       // display only
};

struct BoundInputs {
  unsigned long m = 1;  // unknowns
  unsigned long d = 2;  // degree bound, >= 2
  unsigned long n = 1;  // equations
  unsigned long s = 1;  // H(zbar) not in m^s
  unsigned long c = 0;  // target order
};

struct BoundReport {
  BoundInputs in;
  mpz_class elkik_degree_bound;   // (m+2)((d+m+2)^(m+2) d)^(2^(m+1)) + (m+2)(d-1)
  mpz_class colon_degree_bound;   // first summand of the above
  mpz_class power_exponent;       // e = elkik_degree_bound^min(n, m+1)
  mpz_class gamma;                // a(2(m+1)s, 4mds) (c+2s+1)
  mpz_class beta_estimate;        // (2s+1)(4mds)^(K^(2(m+1)s))
  mpz_class doubly_exponential;   // K^(K^c)
};

/// Bits allowed in any single bound before Error(capacity) is raised.
inline constexpr unsigned long kMaxBoundBits = 1UL << 26;

/// base^exp with a capacity guard on the result size.
mpz_class checked_pow(const mpz_class& base, const mpz_class& exp);

/// Throws Error(invalid_argument) unless m, n, s >= 1 and d >= 2.
BoundReport compute_bounds(const BoundInputs& in, const AFunction& a,
                           const BoundConstants& k = {});

mpz_class gamma_bound(unsigned long m, unsigned long d, unsigned long s, unsigned long c,
                      const AFunction& a);

/// d^(K1^(m k c)) (c+1): the worst case D = c-1 of the case split on D(zbar).
mpz_class isolated_singularity_bound(unsigned long d, unsigned long m, unsigned long k,
                                     unsigned long c, const mpz_class& K1);

}  // namespace artin
