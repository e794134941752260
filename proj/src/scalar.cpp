#include "artin/scalar.hpp"

#include <cctype>
#include <regex>

#include "artin/errors.hpp"

namespace artin {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t reduce(const mpz_class& v, std::uint64_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
  return r.get_ui();
}

}  // namespace

Field Field::prime(std::uint64_t p) {
  if (p < 2 || p >= (std::uint64_t{1} << 62)) {
    throw Error(ErrorKind::configuration,
                "field modulus out of range: " + std::to_string(p));
  }
  mpz_class z(static_cast<unsigned long>(p));
  if (mpz_probab_prime_p(z.get_mpz_t(), 40) == 0) {
    throw Error(ErrorKind::configuration,
                "field modulus is not prime: " + std::to_string(p));
  }
  return Field(p);
}

Field Field::parse(const std::string& spec) {
  static const std::regex rational(R"(\s*(Q|QQ)\s*)");
  static const std::regex prime_field(R"(\s*GF\s*\(?\s*(\d+)\s*\)?\s*)");
  std::smatch m;
  if (std::regex_match(spec, rational)) return rationals();
  if (std::regex_match(spec, m, prime_field)) {
    return prime(std::stoull(m[1].str()));
  }
  throw Error(ErrorKind::configuration, "unknown field specification '" + spec + "'");
}

std::string Field::to_string() const {
  return is_rational() ? "Q" : "GF(" + std::to_string(modulus_) + ")";
}

Scalar::Scalar(Field f, long value) : field_(f) {
  if (f.is_rational()) {
    q_ = value;
  } else {
    residue_ = reduce(mpz_class(value), f.modulus());
  }
}

Scalar::Scalar(Field f, const mpq_class& value) : field_(f) {
  if (f.is_rational()) {
    q_ = value;
    q_.canonicalize();
    return;
  }
  const std::uint64_t p = f.modulus();
  const std::uint64_t den = reduce(value.get_den(), p);
  if (den == 0) {
    throw Error(ErrorKind::domain_mismatch,
                "denominator vanishes in " + f.to_string());
  }
  residue_ = mulmod(reduce(value.get_num(), p), powmod(den, p - 2, p), p);
}

bool Scalar::is_zero() const noexcept {
  return field_.is_rational() ? sgn(q_) == 0 : residue_ == 0;
}

bool Scalar::is_one() const noexcept {
  return field_.is_rational() ? q_ == 1 : residue_ == 1 % field_.modulus();
}

bool Scalar::is_negative() const noexcept {
  return field_.is_rational() && sgn(q_) < 0;
}

mpq_class Scalar::to_rational() const {
  if (field_.is_rational()) return q_;
  return mpq_class(mpz_class(static_cast<unsigned long>(residue_)));
}

void Scalar::check_same(const Scalar& o) const {
  if (!(field_ == o.field_)) {
    throw Error(ErrorKind::domain_mismatch, "coefficient domains differ: " +
                                                field_.to_string() + " vs " +
                                                o.field_.to_string());
  }
}

Scalar Scalar::operator-() const {
  Scalar r(*this);
  if (field_.is_rational()) {
    r.q_ = -q_;
  } else if (residue_ != 0) {
    r.residue_ = field_.modulus() - residue_;
  }
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same(o);
  if (field_.is_rational()) {
    q_ += o.q_;
  } else {
    const std::uint64_t p = field_.modulus();
    residue_ = (residue_ + o.residue_) % p;
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same(o);
  if (field_.is_rational()) {
    q_ -= o.q_;
  } else {
    const std::uint64_t p = field_.modulus();
    residue_ = (residue_ + p - o.residue_) % p;
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same(o);
  if (field_.is_rational()) {
    q_ *= o.q_;
  } else {
    residue_ = mulmod(residue_, o.residue_, field_.modulus());
  }
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorKind::invalid_argument, "division by zero");
  Scalar r(*this);
  if (field_.is_rational()) {
    r.q_ = 1 / q_;
  } else {
    r.residue_ = powmod(residue_, field_.modulus() - 2, field_.modulus());
  }
  return r;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_same(o);
  return *this *= o.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (!(a.field_ == b.field_)) return false;
  return a.field_.is_rational() ? a.q_ == b.q_ : a.residue_ == b.residue_;
}

std::string Scalar::to_string() const {
  return field_.is_rational() ? q_.get_str() : std::to_string(residue_);
}

}  // namespace artin
