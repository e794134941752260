#include "artin/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "artin/errors.hpp"

namespace artin {

Ring::Ring(Field field, std::vector<std::string> names)
    : field_(field), names_(std::move(names)) {}

std::optional<VarId> Ring::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<VarId>(i);
  }
  return std::nullopt;
}

VarId Ring::index(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw Error(ErrorKind::invalid_argument, "unknown variable '" + std::string(name) + "'");
}

std::string Ring::fresh_name(const std::string& base) const {
  if (!find(base)) return base;
  for (int k = 1;; ++k) {
    std::string candidate = base + "_" + std::to_string(k);
    if (!find(candidate)) return candidate;
  }
}

RingPtr make_ring(Field field, std::vector<std::string> names) {
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) throw Error(ErrorKind::invalid_argument, "empty variable name");
    if (!seen.insert(n).second) {
      throw Error(ErrorKind::invalid_argument, "duplicate variable '" + n + "'");
    }
  }
  return std::make_shared<const Ring>(field, std::move(names));
}

Polynomial Polynomial::constant(RingPtr ring, const Scalar& c) {
  Polynomial p(std::move(ring));
  p.add_term(Monomial(), c);
  return p;
}

Polynomial Polynomial::constant(RingPtr ring, long c) {
  const Field f = ring->field();
  return constant(std::move(ring), Scalar(f, c));
}

Polynomial Polynomial::variable(RingPtr ring, VarId v) {
  if (v >= ring->size()) throw Error(ErrorKind::invalid_argument, "variable id out of range");
  const Field f = ring->field();
  return term(std::move(ring), Monomial::variable(v), Scalar::one(f));
}

Polynomial Polynomial::variable(RingPtr ring, std::string_view name) {
  const VarId v = ring->index(name);
  return variable(std::move(ring), v);
}

Polynomial Polynomial::term(RingPtr ring, const Monomial& m, const Scalar& c) {
  Polynomial p(std::move(ring));
  p.add_term(m, c);
  return p;
}

bool Polynomial::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

int Polynomial::degree() const noexcept {
  int d = kMinusInfinity;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.degree()));
  return d;
}

unsigned Polynomial::degree_in(VarId v) const noexcept {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(v));
  return d;
}

bool Polynomial::uses(VarId v) const noexcept {
  return std::any_of(terms_.begin(), terms_.end(),
                     [v](const auto& t) { return t.first.exponent(v) > 0; });
}

Scalar Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar::zero(field()) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  if (!(c.field() == ring_->field())) {
    throw Error(ErrorKind::domain_mismatch, "coefficient domain does not match ring");
  }
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Polynomial::check_ring(const Polynomial& o) const {
  if (ring_ == o.ring_) return;
  if (!ring_ || !o.ring_) throw Error(ErrorKind::invalid_argument, "polynomial without ring");
  if (!(ring_->field() == o.ring_->field())) {
    throw Error(ErrorKind::domain_mismatch, "coefficient domains differ: " +
                                                ring_->field().to_string() + " vs " +
                                                o.ring_->field().to_string());
  }
  if (!(*ring_ == *o.ring_)) {
    throw Error(ErrorKind::invalid_argument, "polynomials over different variable universes");
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r(ring_);
  for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, -c);
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_ring(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_ring(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_ring(b);
  Polynomial r(a.ring_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  }
  return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  *this = *this * o;
  return *this;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  a.check_ring(b);
  return a.terms_ == b.terms_;
}

Polynomial Polynomial::scaled(const Scalar& c) const {
  Polynomial r(ring_);
  if (c.is_zero()) return r;
  for (const auto& [m, k] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, k * c);
  return r;
}

Polynomial Polynomial::times_term(const Monomial& mono, const Scalar& c) const {
  Polynomial r(ring_);
  if (c.is_zero()) return r;
  for (const auto& [m, k] : terms_) r.terms_.emplace(m * mono, k * c);
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

Polynomial Polynomial::derivative(VarId v) const {
  Polynomial r(ring_);
  for (const auto& [m, c] : terms_) {
    const std::uint32_t e = m.exponent(v);
    if (e == 0) continue;
    std::vector<Monomial::Entry> entries = m.entries();
    for (auto& entry : entries) {
      if (entry.first == v) entry.second -= 1;
    }
    r.add_term(Monomial(std::move(entries)), c * Scalar(field(), static_cast<long>(e)));
  }
  return r;
}

Polynomial Polynomial::coefficient_in(VarId v, unsigned e) const {
  Polynomial r(ring_);
  for (const auto& [m, c] : terms_) {
    if (m.exponent(v) == e) r.add_term(m.without(v), c);
  }
  return r;
}

std::pair<Monomial, Scalar> Polynomial::leading(const MonomialOrder& order) const {
  if (terms_.empty()) throw Error(ErrorKind::invalid_argument, "leading term of zero");
  auto best = terms_.begin();
  for (auto it = std::next(best); it != terms_.end(); ++it) {
    if (order.greater(it->first, best->first)) best = it;
  }
  return *best;
}

Polynomial Polynomial::embed(const RingPtr& target) const {
  if (ring_ == target) return *this;
  if (!(ring_->field() == target->field())) {
    throw Error(ErrorKind::domain_mismatch, "cannot embed across coefficient domains");
  }
  std::vector<VarId> map(ring_->size());
  std::vector<bool> used(ring_->size(), false);
  for (const auto& [m, c] : terms_) {
    for (const auto& [v, e] : m.entries()) used[v] = true;
  }
  for (VarId v = 0; v < ring_->size(); ++v) {
    if (!used[v]) continue;
    auto t = target->find(ring_->name(v));
    if (!t) {
      throw Error(ErrorKind::invalid_argument,
                  "variable '" + ring_->name(v) + "' missing from target ring");
    }
    map[v] = *t;
  }
  Polynomial r(target);
  for (const auto& [m, c] : terms_) {
    std::vector<Monomial::Entry> entries;
    entries.reserve(m.entries().size());
    for (const auto& [v, e] : m.entries()) entries.emplace_back(map[v], e);
    r.add_term(Monomial(std::move(entries)), c);
  }
  return r;
}

Polynomial Polynomial::substitute(const RingPtr& target,
                                  std::span<const std::optional<Polynomial>> images) const {
  if (images.size() != ring_->size()) {
    throw Error(ErrorKind::invalid_argument, "substitution needs one image per variable");
  }
  // Power cache per variable.
  std::vector<std::vector<Polynomial>> powers(ring_->size());
  auto power = [&](VarId v, std::uint32_t e) -> const Polynomial& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(Polynomial::constant(target, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * *images[v]);
    return cache[e];
  };
  Polynomial r(target);
  for (const auto& [m, c] : terms_) {
    Polynomial t = Polynomial::constant(target, c);
    for (const auto& [v, e] : m.entries()) {
      if (!images[v]) {
        throw Error(ErrorKind::invalid_argument,
                    "no image for variable '" + ring_->name(v) + "'");
      }
      t *= power(v, e);
    }
    r += t;
  }
  return r;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<const TermMap::value_type*> order;
  order.reserve(terms_.size());
  for (const auto& t : terms_) order.push_back(&t);
  const auto grevlex = MonomialOrder::degrevlex();
  std::sort(order.begin(), order.end(),
            [&](auto* a, auto* b) { return grevlex.greater(a->first, b->first); });
  std::string out;
  bool first = true;
  for (const auto* t : order) {
    const Monomial& m = t->first;
    const Scalar& c = t->second;
    const bool negative = c.is_negative();
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const Scalar mag = negative ? -c : c;
    std::string mono;
    for (const auto& [v, e] : m.entries()) {
      if (!mono.empty()) mono += "*";
      mono += ring_->name(v);
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      out += mag.to_string();
    } else if (mag.is_one()) {
      out += mono;
    } else {
      out += mag.to_string() + "*" + mono;
    }
  }
  return out;
}

Polynomial divide_exact(const Polynomial& p, const Polynomial& q) {
  if (q.is_zero()) throw Error(ErrorKind::invalid_argument, "division by zero polynomial");
  const auto order = MonomialOrder::degrevlex();
  const auto [lm, lc] = q.leading(order);
  Polynomial rest = p;
  Polynomial quotient(p.ring());
  while (!rest.is_zero()) {
    const auto [m, c] = rest.leading(order);
    if (!lm.divides(m)) throw Error(ErrorKind::not_divisible, "polynomial division is not exact");
    const Monomial t = m.divided_by(lm);
    const Scalar k = c / lc;
    quotient.add_term(t, k);
    rest -= q.times_term(t, k);
  }
  return quotient;
}

PolyMatrix::PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(rows * cols, Polynomial(ring_)) {}

PolyMatrix PolyMatrix::submatrix(std::span<const std::size_t> rows,
                                 std::span<const std::size_t> cols) const {
  PolyMatrix s(ring_, rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) s.at(i, j) = at(rows[i], cols[j]);
  }
  return s;
}

PolyMatrix PolyMatrix::transposed() const {
  PolyMatrix t(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  }
  return t;
}

PolyMatrix jacobian(std::span<const Polynomial> fs, std::span<const VarId> diff_vars) {
  if (fs.empty()) throw Error(ErrorKind::invalid_argument, "jacobian of an empty system");
  const RingPtr& ring = fs.front().ring();
  std::set<VarId> seen;
  for (VarId v : diff_vars) {
    if (v >= ring->size()) throw Error(ErrorKind::invalid_argument, "unknown variable id");
    if (!seen.insert(v).second) {
      throw Error(ErrorKind::invalid_argument, "repeated differentiation variable");
    }
  }
  PolyMatrix m(ring, fs.size(), diff_vars.size());
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (std::size_t j = 0; j < diff_vars.size(); ++j) {
      m.at(i, j) = fs[i].embed(ring).derivative(diff_vars[j]);
    }
  }
  return m;
}

PolyMatrix jacobian(std::span<const Polynomial> fs, std::span<const std::string> diff_vars) {
  if (fs.empty()) throw Error(ErrorKind::invalid_argument, "jacobian of an empty system");
  std::vector<VarId> ids;
  for (const auto& name : diff_vars) ids.push_back(fs.front().ring()->index(name));
  return jacobian(fs, std::span<const VarId>(ids));
}

namespace {

Polynomial cofactor_det(const PolyMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return Polynomial::constant(m.ring(), 1);
  if (n == 1) return m.at(0, 0);
  if (n == 2) return m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
  Polynomial det(m.ring());
  std::vector<std::size_t> rows(n - 1);
  std::iota(rows.begin(), rows.end(), 1);
  for (std::size_t j = 0; j < n; ++j) {
    if (m.at(0, j).is_zero()) continue;
    std::vector<std::size_t> cols;
    for (std::size_t k = 0; k < n; ++k) {
      if (k != j) cols.push_back(k);
    }
    Polynomial term = m.at(0, j) * cofactor_det(m.submatrix(rows, cols));
    if (j % 2 == 0) {
      det += term;
    } else {
      det -= term;
    }
  }
  return det;
}

Polynomial bareiss_det(PolyMatrix m) {
  const std::size_t n = m.rows();
  bool negate = false;
  Polynomial prev = Polynomial::constant(m.ring(), 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k).is_zero()) {
      std::size_t pivot = k + 1;
      while (pivot < n && m.at(pivot, k).is_zero()) ++pivot;
      if (pivot == n) return Polynomial(m.ring());
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(pivot, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m.at(i, j) = divide_exact(m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j), prev);
      }
    }
    prev = m.at(k, k);
  }
  return negate ? -m.at(n - 1, n - 1) : m.at(n - 1, n - 1);
}

}  // namespace

Polynomial determinant(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::invalid_argument, "determinant of a non-square matrix");
  return m.rows() <= 4 ? cofactor_det(m) : bareiss_det(m);
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> cur(k);
  std::iota(cur.begin(), cur.end(), 0);
  while (true) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

std::vector<Minor> indexed_minors(const PolyMatrix& m, std::size_t h) {
  std::vector<Minor> out;
  if (h == 0) {
    out.push_back({{}, {}, Polynomial::constant(m.ring(), 1)});
    return out;
  }
  if (h > m.rows() || h > m.cols()) return out;
  const auto row_sets = subsets(m.rows(), h);
  const auto col_sets = subsets(m.cols(), h);
  for (const auto& rs : row_sets) {
    for (const auto& cs : col_sets) {
      out.push_back({rs, cs, determinant(m.submatrix(rs, cs))});
    }
  }
  return out;
}

std::vector<Polynomial> minors(const PolyMatrix& m, std::size_t h) {
  std::vector<Polynomial> out;
  for (auto& minor : indexed_minors(m, h)) out.push_back(std::move(minor.value));
  return out;
}

}  // namespace artin
