#include "artin/bounds.hpp"

#include <sstream>

#include "artin/errors.hpp"

namespace artin {

namespace {

unsigned long to_ulong(const mpz_class& v, const char* what) {
  if (v < 0 || !v.fits_ulong_p()) {
    throw Error(ErrorKind::capacity, std::string(what) + " exponent out of range");
  }
  return v.get_ui();
}

void require_positive_integer(const mpz_class& v, const char* name) {
  if (v <= 0) throw Error(ErrorKind::configuration, std::string(name) + " must be positive");
}

}  // namespace

mpz_class checked_pow(const mpz_class& base, const mpz_class& exp) {
  if (exp < 0) throw Error(ErrorKind::invalid_argument, "negative exponent");
  if (exp == 0) return 1;
  if (base == 0 || base == 1) return base;
  if (base == -1) return mpz_odd_p(exp.get_mpz_t()) ? -1 : 1;
  const mpz_class bits = mpz_class(mpz_sizeinbase(mpz_class(abs(base)).get_mpz_t(), 2) - 1) * exp;
  if (bits > kMaxBoundBits) {
    throw Error(ErrorKind::capacity, "bound exceeds " + std::to_string(kMaxBoundBits) +
                                         " bits (base " + base.get_str() + ", exponent " +
                                         exp.get_str() + ")");
  }
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), to_ulong(exp, "power"));
  return out;
}

AFunction AFunction::constant(mpz_class c) {
  AFunction a;
  a.kind_ = Kind::constant;
  a.coef_ = std::move(c);
  return a;
}

AFunction AFunction::linear(mpz_class coef) {
  AFunction a;
  a.kind_ = Kind::linear;
  a.coef_ = std::move(coef);
  return a;
}

AFunction AFunction::poly(mpz_class coef, unsigned long base) {
  AFunction a;
  a.kind_ = Kind::poly;
  a.coef_ = std::move(coef);
  a.base_ = base;
  return a;
}

AFunction AFunction::parse(const std::string& text) {
  std::istringstream in(text);
  std::string kind;
  in >> kind;
  auto number = [&](const char* what) {
    std::string tok;
    if (!(in >> tok)) throw Error(ErrorKind::configuration, "a_fn: missing " + std::string(what));
    mpz_class v;
    if (v.set_str(tok, 10) != 0) {
      throw Error(ErrorKind::configuration, "a_fn: '" + tok + "' is not an integer");
    }
    return v;
  };
  AFunction a;
  if (kind == "const") {
    a = constant(number("value"));
  } else if (kind == "linear") {
    a = linear(number("coefficient"));
  } else if (kind == "poly") {
    mpz_class c = number("coefficient");
    mpz_class b = number("base");
    if (b < 1 || !b.fits_ulong_p()) throw Error(ErrorKind::configuration, "a_fn: bad base");
    a = poly(std::move(c), b.get_ui());
  } else {
    throw Error(ErrorKind::configuration,
                "a_fn: expected 'const C', 'linear C' or 'poly C B', got '" + text + "'");
  }
  std::string rest;
  if (in >> rest) throw Error(ErrorKind::configuration, "a_fn: trailing text '" + rest + "'");
  return a;
}

mpz_class AFunction::operator()(unsigned long m, const mpz_class& d) const {
  mpz_class v;
  switch (kind_) {
    case Kind::constant: v = coef_; break;
    case Kind::linear: v = coef_ * d; break;
    case Kind::poly: v = coef_ * checked_pow(d, checked_pow(base_, m)); break;
  }
  if (v <= 0) {
    throw Error(ErrorKind::configuration,
                "a_fn " + to_string() + " is not positive at (" + std::to_string(m) + ", " +
                    d.get_str() + ")");
  }
  return v;
}

std::string AFunction::to_string() const {
  switch (kind_) {
    case Kind::constant: return "const " + coef_.get_str();
    case Kind::linear: return "linear " + coef_.get_str();
    case Kind::poly: return "poly " + coef_.get_str() + " " + std::to_string(base_);
  }
  return "?";
}

mpz_class gamma_bound(unsigned long m, unsigned long d, unsigned long s, unsigned long c,
                      const AFunction& a) {
  const mpz_class mm = m;
  const mpz_class ss = s;
  return a(2 * (m + 1) * s, 4 * mm * d * ss) * (mpz_class(c) + 2 * ss + 1);
}

BoundReport compute_bounds(const BoundInputs& in, const AFunction& a, const BoundConstants& k) {
  if (in.m < 1 || in.n < 1 || in.s < 1 || in.d < 2) {
    throw Error(ErrorKind::invalid_argument, "bounds need m, n, s >= 1 and d >= 2");
  }
  require_positive_integer(k.K, "K");
  const mpz_class m = in.m;
  const mpz_class d = in.d;
  const mpz_class s = in.s;
  const mpz_class c = in.c;

  BoundReport r;
  r.in = in;
  const mpz_class inner = checked_pow(d + m + 2, m + 2) * d;
  r.colon_degree_bound = (m + 2) * checked_pow(inner, checked_pow(2, m + 1));
  r.elkik_degree_bound = r.colon_degree_bound + (m + 2) * (d - 1);
  r.power_exponent = checked_pow(r.elkik_degree_bound, std::min(in.n, in.m + 1));
  r.gamma = gamma_bound(in.m, in.d, in.s, in.c, a);
  r.beta_estimate = (2 * s + 1) * checked_pow(4 * m * d * s, checked_pow(k.K, 2 * (m + 1) * s));
  r.doubly_exponential = checked_pow(k.K, checked_pow(k.K, c));
  return r;
}

mpz_class isolated_singularity_bound(unsigned long d, unsigned long m, unsigned long k,
                                     unsigned long c, const mpz_class& K1) {
  require_positive_integer(K1, "K1");
  const mpz_class exponent = mpz_class(m) * k * c;
  return checked_pow(d, checked_pow(K1, exponent)) * (c + 1);
}

}  // namespace artin
