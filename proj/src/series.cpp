#include "artin/series.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "artin/errors.hpp"
#include "artin/parse.hpp"

namespace artin {

namespace {

// Homogeneous form of degree d: coefficients indexed by the y exponent
// (a single entry with one variable).
using Form = std::vector<Scalar>;

Form form_product(const Form& a, const Form& b, Field f) {
  Form out(a.size() + b.size() - 1, Scalar(f));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

bool form_is_zero(const Form& a) {
  return std::all_of(a.begin(), a.end(), [](const Scalar& s) { return s.is_zero(); });
}

// Exact quotient of forms; nullopt when b does not divide a.
std::optional<Form> form_divide(const Form& a, const Form& b, Field f) {
  std::size_t j0 = 0;
  while (b[j0].is_zero()) ++j0;
  const std::size_t lq = a.size() - b.size() + 1;
  Form q(lq, Scalar(f));
  const Scalar inv = b[j0].inverse();
  for (std::size_t j = 0; j < lq; ++j) {
    if (j + j0 >= a.size()) break;
    Scalar acc = a[j + j0];
    for (std::size_t i = j0 + 1; i < b.size() && i <= j + j0; ++i) acc -= b[i] * q[j + j0 - i];
    q[j] = acc * inv;
  }
  if (form_product(b, q, f) != a) return std::nullopt;
  return q;
}

}  // namespace

std::string OrderValue::to_string() const {
  return finite_ ? std::to_string(v_) : ">=" + std::to_string(v_);
}

OrderValue min(const OrderValue& a, const OrderValue& b) {
  if (a.v_ != b.v_) return a.v_ < b.v_ ? a : b;
  return OrderValue(a.v_, a.finite_ || b.finite_);
}

std::string Norm::to_string() const {
  const std::string e = "e^-" + std::to_string(ord.value());
  return ord.is_finite() ? e : "<= " + e;
}

TruncatedSeries::TruncatedSeries(RingPtr base, unsigned precision)
    : base_(std::move(base)), precision_(precision) {
  if (!base_ || base_->size() < 1 || base_->size() > 2) {
    throw Error(ErrorKind::invalid_argument, "series need one or two variables");
  }
  coeffs_.assign(size_for(precision_), Scalar(base_->field()));
}

std::size_t TruncatedSeries::size_for(unsigned n) const {
  return nvars() == 1 ? n : static_cast<std::size_t>(n) * (n + 1) / 2;
}

std::size_t TruncatedSeries::index(unsigned i, unsigned j) const {
  if (nvars() == 1) return i;
  const std::size_t d = i + j;
  return d * (d + 1) / 2 + j;
}

TruncatedSeries TruncatedSeries::constant(RingPtr base, const Scalar& c, unsigned precision) {
  TruncatedSeries s(std::move(base), precision);
  if (precision > 0) s.coeffs_[0] = c;
  return s;
}

TruncatedSeries TruncatedSeries::from_polynomial(const Polynomial& p, RingPtr base,
                                                 unsigned precision) {
  TruncatedSeries s(std::move(base), precision);
  const Polynomial q = p.embed(s.base_);
  for (const auto& [m, c] : q.terms()) {
    if (m.degree() >= precision) continue;
    s.coeffs_[s.index(m.exponent(0), s.nvars() == 2 ? m.exponent(1) : 0)] = c;
  }
  return s;
}

Scalar TruncatedSeries::coefficient(unsigned i, unsigned j) const {
  if (nvars() == 1 && j != 0) return Scalar(field());
  if (i + j >= precision_) return Scalar(field());
  return coeffs_[index(i, j)];
}

void TruncatedSeries::set_coefficient(unsigned i, unsigned j, const Scalar& c) {
  if ((nvars() == 1 && j != 0) || i + j >= precision_) {
    throw Error(ErrorKind::precision, "coefficient beyond the series precision");
  }
  coeffs_[index(i, j)] = c;
}

OrderValue TruncatedSeries::order() const {
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k].is_zero()) continue;
    if (nvars() == 1) return OrderValue::exact(static_cast<unsigned>(k));
    unsigned d = 0;
    while (static_cast<std::size_t>(d + 1) * (d + 2) / 2 <= k) ++d;
    return OrderValue::exact(d);
  }
  return OrderValue::at_least(precision_);
}

bool TruncatedSeries::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Scalar& s) { return s.is_zero(); });
}

Polynomial TruncatedSeries::homogeneous_part(unsigned d) const {
  Polynomial p(base_);
  if (d >= precision_) return p;
  if (nvars() == 1) {
    p.add_term(Monomial::variable(0, d), coeffs_[d]);
    return p;
  }
  for (unsigned j = 0; j <= d; ++j) {
    p.add_term(Monomial({{0, d - j}, {1, j}}), coeffs_[index(d - j, j)]);
  }
  return p;
}

TruncatedSeries TruncatedSeries::truncated(unsigned n) const {
  if (n > precision_) {
    throw Error(ErrorKind::precision, "cannot truncate to " + std::to_string(n) +
                                          " a series known to precision " +
                                          std::to_string(precision_));
  }
  TruncatedSeries s = *this;
  s.precision_ = n;
  s.coeffs_.resize(size_for(n));
  return s;
}

TruncatedSeries TruncatedSeries::extended(unsigned n) const {
  if (n <= precision_) return truncated(n);
  TruncatedSeries s = *this;
  s.precision_ = n;
  s.coeffs_.resize(size_for(n), Scalar(field()));
  return s;
}

void TruncatedSeries::check_compatible(const TruncatedSeries& o) const {
  if (!base_ || !o.base_) throw Error(ErrorKind::invalid_argument, "uninitialized series");
  if (!(base_->field() == o.base_->field())) {
    throw Error(ErrorKind::domain_mismatch, "series over different coefficient domains");
  }
  if (!(*base_ == *o.base_)) {
    throw Error(ErrorKind::invalid_argument, "series in different variables");
  }
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries s = *this;
  for (auto& c : s.coeffs_) c = -c;
  return s;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  check_compatible(o);
  if (o.precision_ < precision_) *this = truncated(o.precision_);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
  check_compatible(o);
  if (o.precision_ < precision_) *this = truncated(o.precision_);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  a.check_compatible(b);
  const unsigned n = std::min(a.precision_, b.precision_);
  TruncatedSeries out(a.base_, n);
  struct Nz {
    unsigned i, j;
    const Scalar* c;
  };
  auto nonzero = [n](const TruncatedSeries& s) {
    std::vector<Nz> v;
    for (unsigned d = 0; d < n; ++d) {
      const unsigned top = s.nvars() == 1 ? 0 : d;
      for (unsigned j = 0; j <= top; ++j) {
        const Scalar& c = s.coeffs_[s.index(d - j, j)];
        if (!c.is_zero()) v.push_back({d - j, j, &c});
      }
    }
    return v;
  };
  const auto na = nonzero(a);
  const auto nb = nonzero(b);
  for (const auto& p : na) {
    for (const auto& q : nb) {
      if (p.i + p.j + q.i + q.j >= n) break;  // nb is sorted by degree
      out.coeffs_[out.index(p.i + q.i, p.j + q.j)] += *p.c * *q.c;
    }
  }
  return out;
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (!a.base_ || !b.base_) return a.base_ == b.base_;
  return *a.base_ == *b.base_ && a.precision_ == b.precision_ && a.coeffs_ == b.coeffs_;
}

TruncatedSeries TruncatedSeries::scaled(const Scalar& c) const {
  TruncatedSeries s = *this;
  for (auto& x : s.coeffs_) x *= c;
  return s;
}

TruncatedSeries TruncatedSeries::shifted(unsigned i, unsigned j) const {
  if (nvars() == 1 && j != 0) throw Error(ErrorKind::invalid_argument, "no second variable");
  TruncatedSeries s(base_, precision_);
  for (unsigned d = 0; d + i + j < precision_; ++d) {
    const unsigned top = nvars() == 1 ? 0 : d;
    for (unsigned b = 0; b <= top; ++b) {
      s.coeffs_[s.index(d - b + i, b + j)] = coeffs_[index(d - b, b)];
    }
  }
  return s;
}

TruncatedSeries TruncatedSeries::pow(unsigned e) const {
  TruncatedSeries result = constant(base_, Scalar::one(field()), precision_);
  TruncatedSeries base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

TruncatedSeries TruncatedSeries::divide(const TruncatedSeries& d) const {
  check_compatible(d);
  const OrderValue od = d.order();
  if (!od.is_finite()) {
    throw Error(ErrorKind::precision, "divisor vanishes to its precision " + od.to_string());
  }
  const unsigned w = od.value();
  const unsigned n = std::min(precision_, d.precision_);
  const unsigned out_n = n > w ? n - w : 0;
  const Field f = field();
  const bool two = nvars() == 2;

  auto form_of = [&](const TruncatedSeries& s, unsigned deg) {
    Form out(two ? deg + 1 : 1, Scalar(f));
    for (std::size_t j = 0; j < out.size(); ++j) {
      out[j] = s.coeffs_[s.index(deg - static_cast<unsigned>(j), static_cast<unsigned>(j))];
    }
    return out;
  };

  for (unsigned deg = 0; deg < w && deg < precision_; ++deg) {
    if (!form_is_zero(form_of(*this, deg))) {
      throw Error(ErrorKind::not_divisible,
                  "dividend has order " + order().to_string() + " below divisor order " +
                      std::to_string(w));
    }
  }

  std::vector<Form> dforms;
  for (unsigned e = w; e < n; ++e) dforms.push_back(form_of(d, e));
  std::vector<Form> q;
  TruncatedSeries out(base_, out_n);
  for (unsigned k = 0; k < out_n; ++k) {
    Form rhs = form_of(*this, k + w);
    for (unsigned e = w + 1; e <= k + w; ++e) {
      const Form& qk = q[k + w - e];
      if (form_is_zero(qk)) continue;
      const Form prod = form_product(dforms[e - w], qk, f);
      for (std::size_t j = 0; j < rhs.size(); ++j) rhs[j] -= prod[j];
    }
    auto qk = form_divide(rhs, dforms[0], f);
    if (!qk) {
      throw Error(ErrorKind::not_divisible,
                  "not divisible: degree " + std::to_string(k + w) + " step leaves a remainder");
    }
    for (std::size_t j = 0; j < qk->size(); ++j) {
      out.coeffs_[out.index(k - static_cast<unsigned>(j), static_cast<unsigned>(j))] = (*qk)[j];
    }
    q.push_back(std::move(*qk));
  }
  return out;
}

TruncatedSeries TruncatedSeries::inverse() const {
  if (precision_ == 0 || coeffs_[0].is_zero()) {
    throw Error(ErrorKind::not_divisible, "series is not a unit");
  }
  return constant(base_, Scalar::one(field()), precision_).divide(*this);
}

TruncatedSeries TruncatedSeries::linear_change(const Scalar& a, const Scalar& b, const Scalar& c,
                                               const Scalar& d) const {
  if (nvars() != 2) throw Error(ErrorKind::invalid_argument, "linear change needs two variables");
  const Field f = field();
  std::vector<Form> px{Form{Scalar::one(f)}};
  std::vector<Form> py{Form{Scalar::one(f)}};
  const Form lx{a, b};
  const Form ly{c, d};
  for (unsigned k = 1; k < precision_; ++k) {
    px.push_back(form_product(px.back(), lx, f));
    py.push_back(form_product(py.back(), ly, f));
  }
  TruncatedSeries out(base_, precision_);
  for (unsigned deg = 0; deg < precision_; ++deg) {
    for (unsigned j = 0; j <= deg; ++j) {
      const Scalar& coef = coeffs_[index(deg - j, j)];
      if (coef.is_zero()) continue;
      const Form t = form_product(px[deg - j], py[j], f);
      for (unsigned k = 0; k <= deg; ++k) {
        if (!t[k].is_zero()) out.coeffs_[out.index(deg - k, k)] += coef * t[k];
      }
    }
  }
  return out;
}

TruncatedSeries TruncatedSeries::y_coefficient(unsigned j) const {
  if (nvars() != 2) throw Error(ErrorKind::invalid_argument, "y coefficient needs two variables");
  const unsigned n = j < precision_ ? precision_ - j : 0;
  TruncatedSeries out(make_ring(field(), {base_->name(0)}), n);
  for (unsigned i = 0; i < n; ++i) out.coeffs_[i] = coeffs_[index(i, j)];
  return out;
}

TruncatedSeries TruncatedSeries::at_x_zero() const {
  if (nvars() != 2) throw Error(ErrorKind::invalid_argument, "restriction needs two variables");
  TruncatedSeries out(make_ring(field(), {base_->name(1)}), precision_);
  for (unsigned j = 0; j < precision_; ++j) out.coeffs_[j] = coeffs_[index(0, j)];
  return out;
}

TruncatedSeries TruncatedSeries::widened(const RingPtr& base2) const {
  if (nvars() != 1 || base2->size() != 2) {
    throw Error(ErrorKind::invalid_argument, "widening maps one variable into two");
  }
  const VarId v = base2->index(base_->name(0));
  TruncatedSeries out(base2, precision_);
  for (unsigned i = 0; i < precision_; ++i) {
    out.coeffs_[v == 0 ? out.index(i, 0) : out.index(0, i)] = coeffs_[i];
  }
  return out;
}

Polynomial TruncatedSeries::to_polynomial(const RingPtr& target) const {
  Polynomial p(base_);
  for (unsigned deg = 0; deg < precision_; ++deg) p += homogeneous_part(deg);
  return p.embed(target);
}

std::string TruncatedSeries::to_string() const {
  const std::string tail = "O(m^" + std::to_string(precision_) + ")";
  // ascending total degree, the usual way to write a series
  std::string out;
  for (unsigned deg = 0; deg < precision_; ++deg) {
    const Polynomial part = homogeneous_part(deg);
    if (part.is_zero()) continue;
    std::string text = part.to_string();
    if (out.empty()) {
      out = text;
    } else if (text.front() == '-') {
      out += " - " + text.substr(1);
    } else {
      out += " + " + text;
    }
  }
  return out.empty() ? tail : out + " + " + tail;
}

TruncatedSeries certified_product(const TruncatedSeries& a, const TruncatedSeries& b) {
  const unsigned n = std::min(a.precision() + b.order().value(), b.precision() + a.order().value());
  return a.extended(n) * b.extended(n);
}

unsigned min_precision(std::span<const TruncatedSeries> v) {
  if (v.empty()) throw Error(ErrorKind::invalid_argument, "empty series vector");
  unsigned n = v.front().precision();
  for (const auto& s : v) n = std::min(n, s.precision());
  return n;
}

OrderValue vector_order(std::span<const TruncatedSeries> v) {
  if (v.empty()) throw Error(ErrorKind::invalid_argument, "empty series vector");
  OrderValue o = v.front().order();
  for (const auto& s : v) o = min(o, s.order());
  return o;
}

OrderValue distance_order(std::span<const TruncatedSeries> u, std::span<const TruncatedSeries> v) {
  if (u.size() != v.size() || u.empty()) {
    throw Error(ErrorKind::invalid_argument, "distance between vectors of sizes " +
                                                 std::to_string(u.size()) + " and " +
                                                 std::to_string(v.size()));
  }
  SeriesVector diff;
  for (std::size_t k = 0; k < u.size(); ++k) diff.push_back(u[k] - v[k]);
  return vector_order(diff);
}

Norm distance(std::span<const TruncatedSeries> u, std::span<const TruncatedSeries> v) {
  return {distance_order(u, v)};
}

TruncatedSeries evaluate(const Polynomial& f, std::span<const TruncatedSeries> zbar,
                         std::span<const std::string> unknowns) {
  if (zbar.size() != unknowns.size()) {
    throw Error(ErrorKind::invalid_argument, "one series per unknown required");
  }
  if (zbar.empty()) throw Error(ErrorKind::invalid_argument, "empty series vector");
  const RingPtr& base = zbar.front().base();
  const unsigned n = min_precision(zbar);
  const Field field = base->field();
  if (!(f.field() == field)) {
    throw Error(ErrorKind::domain_mismatch, "equation and series over different fields");
  }
  const RingPtr& ring = f.ring();

  // Image of every ring variable: a series variable or an unknown.
  std::vector<std::optional<TruncatedSeries>> image(ring->size());
  for (VarId v = 0; v < ring->size(); ++v) {
    const std::string& name = ring->name(v);
    if (auto sv = base->find(name)) {
      TruncatedSeries s(base, n);
      if (n > 1) s.set_coefficient(*sv == 0 ? 1 : 0, *sv == 1 ? 1 : 0, Scalar::one(field));
      image[v] = std::move(s);
      continue;
    }
    auto it = std::find(unknowns.begin(), unknowns.end(), name);
    if (it != unknowns.end()) {
      const TruncatedSeries& z = zbar[static_cast<std::size_t>(it - unknowns.begin())];
      if (!(*z.base() == *base)) {
        throw Error(ErrorKind::invalid_argument, "series vector mixes variable sets");
      }
      image[v] = z.truncated(n);
    }
  }
  std::vector<std::vector<TruncatedSeries>> powers(ring->size());
  auto power = [&](VarId v, unsigned e) -> const TruncatedSeries& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(TruncatedSeries::constant(base, Scalar::one(field), n));
    while (cache.size() <= e) cache.push_back(cache.back() * *image[v]);
    return cache[e];
  };

  TruncatedSeries out(base, n);
  for (const auto& [m, c] : f.terms()) {
    TruncatedSeries t = TruncatedSeries::constant(base, c, n);
    for (const auto& [v, e] : m.entries()) {
      if (!image[v]) {
        throw Error(ErrorKind::invalid_argument,
                    "unassigned unknown '" + ring->name(v) + "' in evaluation");
      }
      t = t * power(v, e);
    }
    out += t;
  }
  return out;
}

OrderValue ideal_order(std::span<const Polynomial> gens, std::span<const TruncatedSeries> zbar,
                       std::span<const std::string> unknowns) {
  OrderValue o = OrderValue::at_least(min_precision(zbar));
  for (const auto& g : gens) o = min(o, evaluate(g, zbar, unknowns).order());
  return o;
}

namespace {

std::string_view trim(std::string_view s, int* lead = nullptr) {
  std::size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  std::size_t e = s.size();
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  if (lead) *lead = static_cast<int>(b);
  return s.substr(b, e - b);
}

}  // namespace

TruncatedSeries parse_series(std::string_view text, const RingPtr& base, int line, int column) {
  const std::size_t at = text.rfind("O(");
  if (at == std::string_view::npos) {
    throw ParseError("series literal needs an O(m^N) precision suffix", line,
                     column + static_cast<int>(text.size()));
  }
  const std::size_t close = text.find(')', at);
  if (close == std::string_view::npos) {
    throw ParseError("unterminated O(...) suffix", line, column + static_cast<int>(at));
  }
  if (!trim(text.substr(close + 1)).empty()) {
    throw ParseError("unexpected text after the O(...) suffix", line,
                     column + static_cast<int>(close) + 1);
  }
  const std::string_view inside = trim(text.substr(at + 2, close - at - 2));
  const std::size_t caret = inside.find('^');
  const int inner_col = column + static_cast<int>(at) + 2;
  if (caret == std::string_view::npos) {
    throw ParseError("expected O(m^N)", line, inner_col);
  }
  const std::string_view gen = trim(inside.substr(0, caret));
  if (gen != "m" && !(base->size() == 1 && gen == base->name(0))) {
    throw ParseError("precision suffix must be O(m^N)", line, inner_col);
  }
  const std::string_view num = trim(inside.substr(caret + 1));
  unsigned n = 0;
  auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), n);
  if (ec != std::errc() || ptr != num.data() + num.size() || n == 0 || n > 100000) {
    throw ParseError("bad precision '" + std::string(num) + "'", line, inner_col);
  }

  int lead = 0;
  std::string_view body = trim(text.substr(0, at), &lead);
  if (!body.empty()) {
    if (body.back() != '+') {
      throw ParseError("expected '+' before the O(...) suffix", line, column + static_cast<int>(at));
    }
    body = trim(body.substr(0, body.size() - 1));
  }
  TruncatedSeries s(base, n);
  if (body.empty()) return s;
  return TruncatedSeries::from_polynomial(parse_polynomial(body, base, line, column + lead), base,
                                          n);
}

std::vector<TruncatedSeries> parse_series_list(std::string_view text, const RingPtr& base,
                                               int line, int column) {
  std::vector<TruncatedSeries> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    const char ch = i < text.size() ? text[i] : ',';
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      const std::string_view piece = text.substr(start, i - start);
      if (trim(piece).empty()) {
        if (i == text.size() && out.empty()) break;
        throw ParseError("empty series in list", line, column + static_cast<int>(start));
      }
      out.push_back(parse_series(piece, base, line, column + static_cast<int>(start)));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace artin
