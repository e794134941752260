#include "artin/weierstrass.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <random>

#include "artin/errors.hpp"

namespace artin {

namespace {

RingPtr x_ring(const RingPtr& base) { return make_ring(base->field(), {base->name(0)}); }

// u = y^r S + T with deg_y T < r. S keeps precision N - r.
std::pair<TruncatedSeries, TruncatedSeries> split_at(const TruncatedSeries& u, unsigned r) {
  const unsigned n = u.precision();
  TruncatedSeries s(u.base(), n > r ? n - r : 0);
  TruncatedSeries t(u.base(), n);
  for (unsigned deg = 0; deg < n; ++deg) {
    for (unsigned j = 0; j <= deg; ++j) {
      const Scalar c = u.coefficient(deg - j, j);
      if (c.is_zero()) continue;
      if (j >= r) {
        s.set_coefficient(deg - j, j - r, c);
      } else {
        t.set_coefficient(deg - j, j, c);
      }
    }
  }
  return {s, t};
}

}  // namespace

void DistinguishedPolynomial::validate() const {
  if (!base || base->size() != 2) {
    throw Error(ErrorKind::invalid_argument, "distinguished polynomial needs series variables (x, y)");
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].nvars() != 1 || a[i].base()->name(0) != base->name(0)) {
      throw Error(ErrorKind::invalid_argument, "coefficients must be series in " + base->name(0));
    }
    if (!a[i].coefficient(0).is_zero()) {
      throw Error(ErrorKind::invalid_argument,
                  "coefficient a_" + std::to_string(i + 1) + " does not vanish at 0");
    }
  }
}

bool DistinguishedPolynomial::is_graded() const {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].order().at_least_k(static_cast<unsigned>(i + 1))) return false;
  }
  return true;
}

TruncatedSeries DistinguishedPolynomial::as_series(unsigned n) const {
  const unsigned rr = r();
  unsigned prec = n;
  for (unsigned i = 1; i <= rr; ++i) prec = std::min(prec, a[i - 1].precision() + rr - i);
  TruncatedSeries out(base, prec);
  if (rr < prec) out.set_coefficient(0, rr, Scalar::one(base->field()));
  for (unsigned i = 1; i <= rr; ++i) {
    const unsigned j = rr - i;
    for (unsigned e = 0; e + j < prec; ++e) {
      const Scalar c = a[i - 1].coefficient(e);
      if (!c.is_zero()) out.set_coefficient(e, j, c);
    }
  }
  return out;
}

std::string DistinguishedPolynomial::to_string() const {
  const std::string& y = base->name(1);
  auto ypow = [&](unsigned e) {
    if (e == 0) return std::string();
    if (e == 1) return " " + y;
    return " " + y + "^" + std::to_string(e);
  };
  const unsigned rr = r();
  if (rr == 0) return "1";
  std::string out = rr == 1 ? y : y + "^" + std::to_string(rr);
  for (unsigned i = 1; i <= rr; ++i) out += " + [" + a[i - 1].to_string() + "]" + ypow(rr - i);
  return out;
}

DistinguishedPolynomial parse_distinguished(std::string_view text, const RingPtr& base, int line,
                                            int column) {
  if (base->size() != 2) {
    throw Error(ErrorKind::invalid_argument, "distinguished polynomials need two series variables");
  }
  const std::string& y = base->name(1);
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) -> void {
    throw ParseError(what, line, column + static_cast<int>(pos));
  };
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  // y, y^e or y^(e); returns the exponent, or 0 when no y follows.
  auto y_power = [&]() -> unsigned {
    skip();
    if (text.substr(pos, y.size()) != y) return 0;
    const std::size_t after = pos + y.size();
    if (after < text.size() &&
        (std::isalnum(static_cast<unsigned char>(text[after])) || text[after] == '_')) {
      return 0;
    }
    pos = after;
    skip();
    if (pos >= text.size() || text[pos] != '^') return 1;
    ++pos;
    skip();
    const bool paren = pos < text.size() && text[pos] == '(';
    if (paren) ++pos;
    unsigned e = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), e);
    if (ec != std::errc()) fail("expected an exponent");
    pos = static_cast<std::size_t>(ptr - text.data());
    if (paren) {
      skip();
      if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
      ++pos;
    }
    if (e == 0) fail("exponent must be positive");
    return e;
  };

  DistinguishedPolynomial out{base, {}};
  skip();
  unsigned r = 0;
  if (pos < text.size() && text[pos] == '1') {
    ++pos;
  } else {
    r = y_power();
    if (r == 0) fail("expected " + y + "^r");
  }
  const RingPtr xr = x_ring(base);
  for (unsigned i = 1; i <= r; ++i) {
    skip();
    if (pos >= text.size() || text[pos] != '+') fail("expected '+ [a_" + std::to_string(i) + "]'");
    ++pos;
    skip();
    if (pos >= text.size() || text[pos] != '[') fail("expected '['");
    const std::size_t open = ++pos;
    int depth = 0;
    while (pos < text.size() && (text[pos] != ']' || depth > 0)) {
      if (text[pos] == '(') ++depth;
      if (text[pos] == ')') --depth;
      ++pos;
    }
    if (pos >= text.size()) fail("unterminated '['");
    out.a.push_back(parse_series(text.substr(open, pos - open), xr, line,
                                 column + static_cast<int>(open)));
    ++pos;
    const unsigned e = y_power();
    if (e != r - i) fail("expected " + y + " power " + std::to_string(r - i));
  }
  skip();
  if (pos != text.size()) fail("unexpected trailing text");
  try {
    out.validate();
  } catch (const Error& e) {
    throw ParseError(e.what(), line, column);
  }
  return out;
}

LinearChange::LinearChange(Scalar a, Scalar b, Scalar c, Scalar d)
    : m_{std::move(a), std::move(b), std::move(c), std::move(d)} {
  const Scalar det = m_[0] * m_[3] - m_[1] * m_[2];
  if (det.is_zero()) throw Error(ErrorKind::invalid_argument, "linear change is not invertible");
  const Scalar inv = det.inverse();
  inv_[0] = m_[3] * inv;
  inv_[1] = -m_[1] * inv;
  inv_[2] = -m_[2] * inv;
  inv_[3] = m_[0] * inv;
  // composition check: M * M^-1 = 1
  const Scalar one = Scalar::one(det.field());
  const Scalar zero(det.field());
  if (!(m_[0] * inv_[0] + m_[1] * inv_[2] == one && m_[0] * inv_[1] + m_[1] * inv_[3] == zero &&
        m_[2] * inv_[0] + m_[3] * inv_[2] == zero && m_[2] * inv_[1] + m_[3] * inv_[3] == one)) {
    throw Error(ErrorKind::invalid_argument, "linear change inverse check failed");
  }
}

LinearChange LinearChange::identity(Field f) {
  return LinearChange(Scalar::one(f), Scalar(f), Scalar(f), Scalar::one(f));
}

LinearChange LinearChange::shear(const Scalar& lambda) {
  const Field f = lambda.field();
  return LinearChange(Scalar::one(f), lambda, Scalar(f), Scalar::one(f));
}

LinearChange LinearChange::inverse() const { return LinearChange(inv_[0], inv_[1], inv_[2], inv_[3]); }

bool LinearChange::is_identity() const {
  return m_[0].is_one() && m_[1].is_zero() && m_[2].is_zero() && m_[3].is_one();
}

TruncatedSeries LinearChange::apply(const TruncatedSeries& u) const {
  if (is_identity()) return u;
  return u.linear_change(m_[0], m_[1], m_[2], m_[3]);
}

Polynomial LinearChange::apply(const Polynomial& p, VarId x, VarId y) const {
  if (is_identity()) return p;
  const RingPtr& ring = p.ring();
  std::vector<std::optional<Polynomial>> images;
  for (VarId v = 0; v < ring->size(); ++v) images.emplace_back(Polynomial::variable(ring, v));
  const Polynomial px = Polynomial::variable(ring, x);
  const Polynomial py = Polynomial::variable(ring, y);
  images[x] = px.scaled(m_[0]) + py.scaled(m_[1]);
  images[y] = px.scaled(m_[2]) + py.scaled(m_[3]);
  return p.substitute(ring, images);
}

std::string LinearChange::to_string() const {
  return "x -> " + m_[0].to_string() + "*x + " + m_[1].to_string() + "*y, y -> " +
         m_[2].to_string() + "*x + " + m_[3].to_string() + "*y";
}

OrderValue y_regular_order(const TruncatedSeries& u) {
  if (u.nvars() != 2) throw Error(ErrorKind::invalid_argument, "y-regularity needs two variables");
  return u.at_x_zero().order();
}

Regularized regularize(const TruncatedSeries& u, std::uint64_t seed) {
  const OrderValue ord = u.order();
  if (!ord.is_finite()) {
    throw Error(ErrorKind::precision,
                "cannot regularize: series vanishes to its precision " + ord.to_string());
  }
  const Field f = u.field();
  auto attempt = [&](const Scalar& lambda) -> std::optional<Regularized> {
    const LinearChange ch = LinearChange::shear(lambda);
    TruncatedSeries v = ch.apply(u);
    if (y_regular_order(v) == ord) return Regularized{ch, std::move(v)};
    return std::nullopt;
  };
  if (f.is_rational()) {
    // The leading form vanishes at no more than ord(u) values of lambda.
    for (long lambda = 0; lambda <= static_cast<long>(ord.value()); ++lambda) {
      if (auto r = attempt(Scalar(f, lambda))) return *r;
    }
  } else {
    if (auto r = attempt(Scalar(f))) return *r;
    std::mt19937_64 rng(seed);
    const std::uint64_t p = f.modulus();
    std::uniform_int_distribution<std::uint64_t> pick(1, p - 1);
    const std::uint64_t tries = std::min<std::uint64_t>(4 * p, 4096);
    for (std::uint64_t k = 0; k < tries; ++k) {
      if (auto r = attempt(Scalar(f, mpq_class(mpz_class(std::to_string(pick(rng))))))) return *r;
    }
  }
  throw Error(ErrorKind::unsupported,
              "no shear x -> x + lambda*y makes the series y-regular over " + f.to_string());
}

Preparation prepare(const TruncatedSeries& u0, unsigned n) {
  if (u0.nvars() != 2) throw Error(ErrorKind::invalid_argument, "preparation needs two variables");
  if (n > u0.precision()) {
    throw Error(ErrorKind::precision, "series known to " + std::to_string(u0.precision()) +
                                          ", preparation requested to " + std::to_string(n));
  }
  const TruncatedSeries u = u0.truncated(n);
  const OrderValue ord = u.order();
  const OrderValue yord = y_regular_order(u);
  if (!ord.is_finite() || !(yord == ord)) {
    throw Error(ErrorKind::precondition,
                "series is not y-regular of order ord = " + ord.to_string() +
                    " (y-regular order " + yord.to_string() + "); apply regularize first");
  }
  const unsigned r = ord.value();
  const Field f = u.field();
  const RingPtr& base = u.base();

  // y^r = q u + R with deg_y R < r, iterated: u = P + y^r U.
  auto [big_u, p] = split_at(u, r);
  const TruncatedSeries u_inv = big_u.inverse();
  TruncatedSeries g(base, n);
  g.set_coefficient(0, r, Scalar::one(f));
  TruncatedSeries q(base, n - r);
  TruncatedSeries rem(base, n);
  for (unsigned step = 0; !g.is_zero(); ++step) {
    if (step > n + 1) throw Error(ErrorKind::stalled, "preparation did not converge");
    auto [s, t] = split_at(g, r);
    rem += t;
    const TruncatedSeries su = s * u_inv;
    q += su;
    // P lies in m^r, so the product is known to precision n.
    g = -certified_product(su, p).truncated(n);
  }

  Preparation out{q.inverse(), {base, {}}};
  for (unsigned i = 1; i <= r; ++i) {
    out.dist.a.push_back(-rem.y_coefficient(r - i));
  }
  return out;
}

WDivision w_divide(const TruncatedSeries& g0, const DistinguishedPolynomial& a, unsigned n) {
  a.validate();
  if (g0.nvars() != 2 || !(*g0.base() == *a.base)) {
    throw Error(ErrorKind::invalid_argument, "dividend and divisor use different variables");
  }
  n = std::min(n, g0.precision());
  const TruncatedSeries g = g0.truncated(n);
  const unsigned r = a.r();
  if (r == 0) return {g, {}};

  std::vector<TruncatedSeries> c;
  for (unsigned k = 0; k < n; ++k) c.push_back(g.y_coefficient(k));
  const unsigned qn = n > r ? n - r : 0;
  std::vector<TruncatedSeries> qc(qn);
  for (unsigned k = n; k-- > r;) {
    const TruncatedSeries ck = c[k];
    qc[k - r] = ck;
    for (unsigned j = 1; j <= r; ++j) {
      c[k - j] -= certified_product(ck, a.a[j - 1]);
    }
  }

  unsigned qprec = qn;
  for (unsigned i = 0; i < qn; ++i) qprec = std::min(qprec, qc[i].precision() + i);
  TruncatedSeries quotient(g.base(), qprec);
  for (unsigned i = 0; i < qprec; ++i) {
    for (unsigned e = 0; e + i < qprec; ++e) {
      const Scalar s = qc[i].coefficient(e);
      if (!s.is_zero()) quotient.set_coefficient(e, i, s);
    }
  }
  WDivision out{quotient, {}};
  const RingPtr xr = x_ring(g.base());
  for (unsigned j = 0; j < r; ++j) {
    out.remainder.push_back(j < n ? c[j] : TruncatedSeries(xr, 0));
  }
  return out;
}

GenericDivisionResult generic_euclid(const Polynomial& p, unsigned r, VarId v,
                                     std::span<const VarId> a_vars) {
  if (a_vars.size() != r) {
    throw Error(ErrorKind::invalid_argument, "generic division needs r coefficient variables");
  }
  for (std::size_t i = 0; i < a_vars.size(); ++i) {
    if (a_vars[i] == v || p.uses(a_vars[i]) ||
        std::find(a_vars.begin() + static_cast<long>(i) + 1, a_vars.end(), a_vars[i]) != a_vars.end()) {
      throw Error(ErrorKind::invalid_argument,
                  "coefficient variables must be fresh and distinct from the division variable");
    }
  }
  const RingPtr& ring = p.ring();
  const Field f = ring->field();
  Polynomial a = Polynomial::term(ring, Monomial::variable(v, r), Scalar::one(f));
  for (unsigned i = 1; i <= r; ++i) {
    a += Polynomial::term(ring, Monomial({{a_vars[i - 1], 1}, {v, r - i}}), Scalar::one(f));
  }
  GenericDivisionResult out{Polynomial(ring), p};
  // peel the leading V-term: P -= P_e V^(e-r) A
  while (!out.remainder.is_zero() && out.remainder.degree_in(v) >= r) {
    const unsigned e = out.remainder.degree_in(v);
    const Polynomial lead = out.remainder.coefficient_in(v, e).times_term(
        Monomial::variable(v, e - r), Scalar::one(f));
    out.quotient += lead;
    out.remainder -= lead * a;
  }
  return out;
}

}  // namespace artin
