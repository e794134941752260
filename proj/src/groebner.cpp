#include "artin/groebner.hpp"

#include <algorithm>
#include <list>

#include "artin/errors.hpp"

namespace artin {

namespace {

struct Term {
  Monomial m;
  Scalar c;
};

// Terms sorted strictly decreasing under the working order.
using Sparse = std::vector<Term>;

Sparse to_sparse(const Polynomial& p, const MonomialOrder& order) {
  Sparse s;
  s.reserve(p.size());
  for (const auto& [m, c] : p.terms()) s.push_back({m, c});
  std::sort(s.begin(), s.end(),
            [&](const Term& a, const Term& b) { return order.greater(a.m, b.m); });
  return s;
}

Polynomial to_poly(const Sparse& s, const RingPtr& ring) {
  Polynomial p(ring);
  for (const auto& t : s) p.add_term(t.m, t.c);
  return p;
}

void make_monic(Sparse& s) {
  if (s.empty() || s.front().c.is_one()) return;
  const Scalar inv = s.front().c.inverse();
  for (auto& t : s) t.c *= inv;
}

// a - c * m * b, all sorted decreasing.
Sparse sub_mul(const Sparse& a, const Scalar& c, const Monomial& m, const Sparse& b,
               const MonomialOrder& order) {
  Sparse out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) {
      out.push_back(a[i++]);
      continue;
    }
    Monomial bm = b[j].m * m;
    if (i == a.size()) {
      out.push_back({std::move(bm), -(c * b[j].c)});
      ++j;
      continue;
    }
    const int cmp = order.compare(a[i].m, bm);
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back({std::move(bm), -(c * b[j].c)});
      ++j;
    } else {
      Scalar k = a[i].c - c * b[j].c;
      if (!k.is_zero()) out.push_back({std::move(bm), std::move(k)});
      ++i;
      ++j;
    }
  }
  return out;
}

// Full reduction of f by the (monic) polynomials in `basis` flagged active.
Sparse reduce(Sparse f, const std::vector<Sparse>& basis, const std::vector<bool>& active,
              const MonomialOrder& order) {
  Sparse result;
  while (!f.empty()) {
    const Term& lead = f.front();
    bool reduced = false;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (!active[k]) continue;
      const Sparse& g = basis[k];
      if (g.front().m.divides(lead.m)) {
        const Monomial q = lead.m.divided_by(g.front().m);
        const Scalar c = lead.c;  // g is monic
        f = sub_mul(f, c, q, g, order);
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      result.push_back(f.front());
      f.erase(f.begin());
    }
  }
  return result;
}

Sparse s_polynomial(const Sparse& a, const Sparse& b, const MonomialOrder& order) {
  const Monomial l = Monomial::lcm(a.front().m, b.front().m);
  const Monomial ma = l.divided_by(a.front().m);
  const Monomial mb = l.divided_by(b.front().m);
  Sparse left;
  left.reserve(a.size());
  for (const auto& t : a) left.push_back({t.m * ma, t.c});
  return sub_mul(left, Scalar::one(a.front().c.field()), mb, b, order);
}

struct Pair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
};

class Buchberger {
 public:
  explicit Buchberger(const MonomialOrder& order) : order_(order) {}

  void add(Sparse h) {
    make_monic(h);
    const std::size_t hi = polys_.size();
    polys_.push_back(std::move(h));
    active_.push_back(true);
    update(hi);
  }

  void run() {
    while (!pairs_.empty()) {
      auto best = pairs_.begin();
      for (auto it = std::next(pairs_.begin()); it != pairs_.end(); ++it) {
        if (it->lcm.degree() < best->lcm.degree() ||
            (it->lcm.degree() == best->lcm.degree() && order_.greater(best->lcm, it->lcm))) {
          best = it;
        }
      }
      const Pair p = *best;
      pairs_.erase(best);
      Sparse h = reduce(s_polynomial(polys_[p.i], polys_[p.j], order_), polys_, all_, order_);
      if (!h.empty()) add(std::move(h));
    }
  }

  // Minimal basis, then tail-reduced.
  std::vector<Sparse> reduced_basis() const {
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < polys_.size(); ++k) {
      if (!active_[k]) continue;
      bool redundant = false;
      for (std::size_t l = 0; l < polys_.size() && !redundant; ++l) {
        if (l == k || !active_[l]) continue;
        const Monomial& a = polys_[l].front().m;
        const Monomial& b = polys_[k].front().m;
        if (a.divides(b) && (a != b || l < k)) redundant = true;
      }
      if (!redundant) keep.push_back(k);
    }
    std::vector<Sparse> minimal;
    for (std::size_t k : keep) minimal.push_back(polys_[k]);
    std::vector<Sparse> out;
    for (std::size_t k = 0; k < minimal.size(); ++k) {
      std::vector<bool> others(minimal.size(), true);
      others[k] = false;
      Sparse tail(minimal[k].begin() + 1, minimal[k].end());
      Sparse r = reduce(std::move(tail), minimal, others, order_);
      r.insert(r.begin(), minimal[k].front());
      out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end(), [&](const Sparse& a, const Sparse& b) {
      return order_.greater(b.front().m, a.front().m);
    });
    return out;
  }

  const std::vector<Sparse>& polys() const { return polys_; }
  const std::vector<bool>& active() const { return active_; }

 private:
  // Gebauer-Moeller installation of the new element h.
  void update(std::size_t h) {
    const Monomial& lh = polys_[h].front().m;
    std::vector<Pair> c;
    for (std::size_t g = 0; g < h; ++g) {
      if (active_[g]) c.push_back({g, h, Monomial::lcm(polys_[g].front().m, lh)});
    }
    std::vector<Pair> d;
    for (std::size_t k = 0; k < c.size(); ++k) {
      const Pair& p = c[k];
      bool keep = polys_[p.i].front().m.coprime(lh);
      if (!keep) {
        keep = true;
        for (std::size_t l = k + 1; l < c.size() && keep; ++l) {
          if (c[l].lcm.divides(p.lcm)) keep = false;
        }
        for (const Pair& q : d) {
          if (!keep) break;
          if (q.lcm.divides(p.lcm)) keep = false;
        }
      }
      if (keep) d.push_back(p);
    }
    std::vector<Pair> e;
    for (const Pair& p : d) {
      if (!polys_[p.i].front().m.coprime(lh)) e.push_back(p);
    }
    for (auto it = pairs_.begin(); it != pairs_.end();) {
      const bool drop = lh.divides(it->lcm) &&
                        Monomial::lcm(polys_[it->i].front().m, lh) != it->lcm &&
                        Monomial::lcm(polys_[it->j].front().m, lh) != it->lcm;
      it = drop ? pairs_.erase(it) : std::next(it);
    }
    pairs_.insert(pairs_.end(), e.begin(), e.end());
    for (std::size_t g = 0; g < h; ++g) {
      if (active_[g] && lh.divides(polys_[g].front().m)) active_[g] = false;
    }
    all_.push_back(true);
  }

  MonomialOrder order_;
  std::vector<Sparse> polys_;
  std::vector<bool> active_;
  std::vector<bool> all_;
  std::list<Pair> pairs_;
};

std::vector<Polynomial> groebner_polys(const std::vector<Polynomial>& gens, const RingPtr& ring,
                                       const MonomialOrder& order) {
  Buchberger bb(order);
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    Sparse s = reduce(to_sparse(g, order), bb.polys(), bb.active(), order);
    if (!s.empty()) bb.add(std::move(s));
  }
  bb.run();
  std::vector<Polynomial> out;
  for (const auto& s : bb.reduced_basis()) out.push_back(to_poly(s, ring));
  return out;
}

// Ring with `extra` variables prepended (elimination tags first).
RingPtr prepend(const RingPtr& ring, const std::vector<std::string>& bases,
                std::vector<std::string>& fresh) {
  std::vector<std::string> names;
  fresh.clear();
  for (const auto& b : bases) {
    std::string n = ring->fresh_name(b);
    while (std::find(fresh.begin(), fresh.end(), n) != fresh.end()) n += "_";
    fresh.push_back(n);
  }
  names = fresh;
  names.insert(names.end(), ring->names().begin(), ring->names().end());
  return make_ring(ring->field(), std::move(names));
}

}  // namespace

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> generators) : ring_(std::move(ring)) {
  for (auto& g : generators) {
    if (g.is_zero()) continue;
    generators_.push_back(g.ring() == ring_ ? std::move(g) : g.embed(ring_));
  }
}

const std::vector<Polynomial>& Ideal::basis() const {
  if (!basis_) throw Error(ErrorKind::invalid_argument, "ideal carries no Groebner basis");
  return basis_->polys;
}

const MonomialOrder& Ideal::basis_order() const {
  if (!basis_) throw Error(ErrorKind::invalid_argument, "ideal carries no Groebner basis");
  return basis_->order;
}

Ideal operator+(const Ideal& a, const Ideal& b) {
  std::vector<Polynomial> gens = a.generators_;
  for (const auto& g : b.generators_) gens.push_back(g.embed(a.ring_));
  return Ideal(a.ring_, std::move(gens));
}

std::string Ideal::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (i) s += ", ";
    s += generators_[i].to_string();
  }
  return s + ")";
}

Ideal groebner(const Ideal& ideal, const MonomialOrder& order) {
  if (ideal.has_basis() && ideal.basis_order() == order) return ideal;
  Ideal out(ideal.ring(), ideal.generators());
  out.basis_ = std::make_shared<const Ideal::Basis>(
      Ideal::Basis{order, groebner_polys(ideal.generators(), ideal.ring(), order)});
  return out;
}

Polynomial normal_form(const Polynomial& p, const Ideal& ideal) {
  const Ideal with_basis = ideal.has_basis() ? ideal : groebner(ideal);
  const MonomialOrder& order = with_basis.basis_order();
  std::vector<Sparse> basis;
  for (const auto& g : with_basis.basis()) basis.push_back(to_sparse(g, order));
  const std::vector<bool> active(basis.size(), true);
  return to_poly(reduce(to_sparse(p.embed(ideal.ring()), order), basis, active, order),
                 ideal.ring());
}

bool contains(const Ideal& ideal, const Polynomial& p) {
  return normal_form(p, ideal).is_zero();
}

bool contains(const Ideal& big, const Ideal& small) {
  const Ideal b = big.has_basis() ? big : groebner(big);
  return std::all_of(small.generators().begin(), small.generators().end(),
                     [&](const Polynomial& g) { return contains(b, g); });
}

bool ideals_equal(const Ideal& a, const Ideal& b) { return contains(a, b) && contains(b, a); }

bool is_unit_ideal(const Ideal& ideal) {
  const Ideal b = ideal.has_basis() ? ideal : groebner(ideal);
  return b.basis().size() == 1 && b.basis().front().is_constant();
}

bool satisfies_buchberger_criterion(const Ideal& ideal) {
  const MonomialOrder& order = ideal.basis_order();
  std::vector<Sparse> basis;
  for (const auto& g : ideal.basis()) basis.push_back(to_sparse(g, order));
  const std::vector<bool> active(basis.size(), true);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      if (!reduce(s_polynomial(basis[i], basis[j], order), basis, active, order).empty()) {
        return false;
      }
    }
  }
  return true;
}

Ideal intersect(const Ideal& a, const Ideal& b) {
  const RingPtr& ring = a.ring();
  if (a.generators().empty() || b.generators().empty()) return Ideal(ring);
  std::vector<std::string> fresh;
  const RingPtr big = prepend(ring, {"t"}, fresh);
  const Polynomial t = Polynomial::variable(big, VarId{0});
  const Polynomial one_minus_t = Polynomial::constant(big, 1) - t;
  std::vector<Polynomial> gens;
  for (const auto& g : a.generators()) gens.push_back(t * g.embed(big));
  for (const auto& g : b.generators()) gens.push_back(one_minus_t * g.embed(ring).embed(big));
  std::vector<Polynomial> out;
  for (const auto& g : groebner_polys(gens, big, MonomialOrder::block(1))) {
    if (!g.uses(0)) out.push_back(g.embed(ring));
  }
  return Ideal(ring, std::move(out));
}

Ideal colon(const Ideal& numerator, const Ideal& divisor) {
  const RingPtr& ring = numerator.ring();
  std::optional<Ideal> acc;
  for (const auto& g0 : divisor.generators()) {
    const Polynomial g = g0.embed(ring);
    std::vector<Polynomial> quotients;
    if (!numerator.generators().empty()) {
      const Ideal meet = intersect(numerator, Ideal(ring, {g}));
      for (const auto& h : meet.generators()) quotients.push_back(divide_exact(h, g));
    }
    Ideal piece(ring, std::move(quotients));
    acc = acc ? intersect(*acc, piece) : piece;
  }
  if (!acc) return Ideal(ring, {Polynomial::constant(ring, 1)});
  return *acc;
}

bool radical_member(const Polynomial& p, const Ideal& ideal) {
  if (p.is_zero()) return true;
  const RingPtr& ring = ideal.ring();
  std::vector<std::string> names = ring->names();
  names.push_back(ring->fresh_name("w"));
  const RingPtr big = make_ring(ring->field(), names);
  const Polynomial w = Polynomial::variable(big, static_cast<VarId>(names.size() - 1));
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) gens.push_back(g.embed(big));
  gens.push_back(Polynomial::constant(big, 1) - w * p.embed(ring).embed(big));
  return is_unit_ideal(Ideal(big, std::move(gens)));
}

}  // namespace artin
