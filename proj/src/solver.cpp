#include "artin/solver.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <functional>
#include <future>
#include <set>
#include <thread>
#include <tuple>

#include "artin/errors.hpp"
#include "artin/parse.hpp"

namespace artin {
namespace {

SeriesVector at_precision(std::span<const TruncatedSeries> v, unsigned n) {
  SeriesVector out;
  out.reserve(v.size());
  for (const auto& s : v) out.push_back(s.precision() >= n ? s.truncated(n) : s.extended(n));
  return out;
}

SeriesVector truncated_all(std::span<const TruncatedSeries> v, unsigned n) {
  SeriesVector out;
  out.reserve(v.size());
  for (const auto& s : v) out.push_back(s.truncated(std::min(n, s.precision())));
  return out;
}

void check_point(const System& sys, std::span<const TruncatedSeries> zbar) {
  if (zbar.size() != sys.unknowns.size()) {
    throw Error(ErrorKind::invalid_argument, "expected " + std::to_string(sys.unknowns.size()) +
                                                 " series, got " + std::to_string(zbar.size()));
  }
  for (const auto& z : zbar) {
    if (!(*z.base() == *sys.base)) {
      throw Error(ErrorKind::domain_mismatch, "series do not live in the system's series ring");
    }
  }
}

using SeriesMatrix = std::vector<std::vector<TruncatedSeries>>;

struct Adjugate {
  TruncatedSeries det;
  SeriesMatrix adj;  // adj[j][i]: column j, equation i
};

SeriesMatrix mat_mul(const SeriesMatrix& a, const SeriesMatrix& b, const TruncatedSeries& zero) {
  const std::size_t q = a.size();
  SeriesMatrix out(q, std::vector<TruncatedSeries>(q, zero));
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t k = 0; k < q; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < q; ++j) {
        if (!b[k][j].is_zero()) out[i][j] += a[i][k] * b[k][j];
      }
    }
  }
  return out;
}

// Division-free: Berkowitz gives det(t I - A) = t^q + c_1 t^(q-1) + ... + c_q, then
// Cayley-Hamilton gives adj(A) = (-1)^(q+1) (A^(q-1) + c_1 A^(q-2) + ... + c_(q-1) I).
// Only ring operations, so no precision is lost to divisions.
Adjugate adjugate(const SeriesMatrix& a) {
  const std::size_t q = a.size();
  unsigned prec = ~0u;
  for (const auto& row : a) prec = std::min(prec, min_precision(row));
  const RingPtr& base = a[0][0].base();
  const TruncatedSeries zero(base, prec);
  const TruncatedSeries one = TruncatedSeries::constant(base, Scalar::one(base->field()), prec);

  // Characteristic polynomials of the trailing blocks A[k:, k:], k = q-1 down to 0.
  std::vector<TruncatedSeries> p = {one, -a[q - 1][q - 1]};
  for (std::size_t k = q - 1; k-- > 0;) {
    const std::size_t sz = q - k;  // size of A[k:, k:]
    std::vector<TruncatedSeries> t = {one, -a[k][k]};
    std::vector<TruncatedSeries> v(sz - 1, zero);  // A1^i C
    for (std::size_t i = 0; i + 1 < sz; ++i) v[i] = a[k + 1 + i][k];
    for (std::size_t step = 0; step + 1 < sz; ++step) {
      TruncatedSeries rc = zero;
      for (std::size_t i = 0; i + 1 < sz; ++i) {
        if (!a[k][k + 1 + i].is_zero() && !v[i].is_zero()) rc += a[k][k + 1 + i] * v[i];
      }
      t.push_back(-rc);
      if (step + 2 < sz) {
        std::vector<TruncatedSeries> w(sz - 1, zero);
        for (std::size_t i = 0; i + 1 < sz; ++i) {
          for (std::size_t j = 0; j + 1 < sz; ++j) {
            if (!a[k + 1 + i][k + 1 + j].is_zero() && !v[j].is_zero()) w[i] += a[k + 1 + i][k + 1 + j] * v[j];
          }
        }
        v = std::move(w);
      }
    }
    std::vector<TruncatedSeries> np(sz + 1, zero);
    for (std::size_t i = 0; i <= sz; ++i) {
      for (std::size_t j = 0; j <= std::min(i, sz - 1); ++j) {
        if (!t[i - j].is_zero() && !p[j].is_zero()) np[i] += t[i - j] * p[j];
      }
    }
    p = std::move(np);
  }

  Adjugate out;
  out.det = q % 2 ? -p[q] : p[q];
  SeriesMatrix b(q, std::vector<TruncatedSeries>(q, zero));
  for (std::size_t i = 0; i < q; ++i) b[i][i] = one;
  for (std::size_t i = 1; i < q; ++i) {
    b = mat_mul(a, b, zero);
    for (std::size_t d = 0; d < q; ++d) b[d][d] += p[i];
  }
  // b[j][i] multiplies equation i in the correction of unknown j.
  out.adj = std::move(b);
  if (q % 2 == 0) {
    for (auto& row : out.adj) {
      for (auto& e : row) e = -e;
    }
  }
  return out;
}

SeriesMatrix evaluate_matrix(const PolyMatrix& m, const SeriesVector& z,
                             std::span<const std::string> unknowns) {
  SeriesMatrix out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out[i].push_back(evaluate(m.at(i, j), z, unknowns));
  }
  return out;
}

// Fills the pipeline-level checks of a certificate for z~ against zbar.
void certify(RefinementCertificate& cert, const System& sys, const SeriesVector& zbar,
             const TruncatedSeries& delta_bar, unsigned c, unsigned n, bool require_quotient) {
  const SeriesVector z0 = at_precision(zbar, n);
  cert.refined = truncated_all(cert.refined, n);
  cert.residual_order = ideal_order(sys.equations, cert.refined, sys.unknowns);
  cert.distance.clear();
  OrderValue q = OrderValue::at_least(n);
  bool divisible = true;
  for (std::size_t j = 0; j < z0.size(); ++j) {
    const TruncatedSeries diff = cert.refined[j] - z0[j];
    cert.distance.push_back(diff.order());
    try {
      q = min(q, diff.divide(delta_bar.truncated(std::min(n, delta_bar.precision()))).order());
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::not_divisible) throw;
      divisible = false;
    }
  }
  cert.delta_divides = divisible;
  cert.delta_quotient_order = divisible ? q : OrderValue::exact(0);
  cert.precision = n;
  cert.c = c;

  std::vector<std::string> problems;
  if (!cert.residual_order.at_least_k(n)) {
    problems.push_back("equations do not all vanish mod m^" + std::to_string(n) +
                       " (order " + cert.residual_order.to_string() + ")");
  }
  for (std::size_t j = 0; j < cert.distance.size(); ++j) {
    if (!cert.distance[j].at_least_k(c)) {
      problems.push_back("ord(z~ - zbar) = " + cert.distance[j].to_string() + " < " +
                         std::to_string(c) + " for " + sys.unknowns[j]);
    }
  }
  if (require_quotient && !(divisible && q.at_least_k(c))) {
    problems.push_back("z~ - zbar not in delta(zbar) m^" + std::to_string(c));
  }
  if (!cert.contraction_ok) problems.push_back("Newton contraction check failed");
  if (problems.empty()) {
    cert.status = RefinementCertificate::Status::certified;
    return;
  }
  cert.status = RefinementCertificate::Status::unsupported;
  for (std::size_t i = 0; i < problems.size(); ++i) {
    cert.message += (cert.message.empty() && i == 0 ? "" : "; ") + problems[i];
  }
}

}  // namespace

std::vector<VarId> System::unknown_ids() const {
  std::vector<VarId> out;
  for (const auto& u : unknowns) out.push_back(ring->index(u));
  return out;
}

unsigned System::degree_bound() const {
  int d = 2;
  for (const auto& f : equations) d = std::max(d, f.degree());
  return static_cast<unsigned>(d);
}

System make_system(const Field& field, std::vector<std::string> series_vars,
                   std::vector<std::string> unknowns, std::span<const std::string> equations) {
  if (series_vars.empty() || series_vars.size() > 2) {
    throw Error(ErrorKind::invalid_argument, "one or two series variables required");
  }
  if (unknowns.empty()) throw Error(ErrorKind::invalid_argument, "no unknowns declared");
  if (equations.empty()) throw Error(ErrorKind::invalid_argument, "no equations given");
  std::vector<std::string> names = series_vars;
  names.insert(names.end(), unknowns.begin(), unknowns.end());
  System sys{make_ring(field, names), make_ring(field, series_vars), std::move(unknowns), {}};
  for (std::size_t i = 0; i < equations.size(); ++i) {
    sys.equations.push_back(parse_polynomial(equations[i], sys.ring, static_cast<int>(i) + 1, 1));
  }
  return sys;
}

OrderValue elkik_order(const ElkikResult& h, const System& sys, const SeriesVector& zbar) {
  check_point(sys, zbar);
  return ideal_order(h.ideal.generators(), zbar, sys.unknowns);
}

MinorSelection select_minor(const System& sys, const ElkikResult& h, const SeriesVector& zbar,
                            unsigned s) {
  check_point(sys, zbar);
  using Key = std::tuple<unsigned, std::vector<std::size_t>, std::vector<std::size_t>, unsigned,
                         std::size_t>;
  std::optional<Key> best;
  std::optional<MinorSelection> chosen;
  OrderValue smallest = OrderValue::at_least(min_precision(zbar));
  for (const auto& comp : h.components) {
    if (comp.equations.empty()) continue;
    std::vector<OrderValue> kord;
    for (const auto& k : comp.colon.generators()) kord.push_back(evaluate(k, zbar, sys.unknowns).order());
    for (const auto& mnr : comp.minors) {
      const OrderValue od = evaluate(mnr.value, zbar, sys.unknowns).order();
      if (!od.is_finite()) continue;
      for (std::size_t g = 0; g < kord.size(); ++g) {
        if (!kord[g].is_finite()) continue;
        const unsigned total = od.value() + kord[g].value();
        smallest = min(smallest, OrderValue::exact(total));
        if (total >= s) continue;
        Key key{od.value(), comp.equations, mnr.cols, kord[g].value(), g};
        if (best && !(key < *best)) continue;
        best = key;
        chosen = MinorSelection{comp.equations, mnr.cols, mnr.value, comp.colon.generators()[g],
                                od.value(), kord[g].value()};
      }
    }
  }
  if (!chosen) {
    throw Error(ErrorKind::hypothesis,
                "hypothesis violated: every product delta_E(zbar) k_E(zbar) has order >= s = " +
                    std::to_string(s) + " (smallest order " + smallest.to_string() + ")");
  }
  return *chosen;
}

MinorSelection select_minor(const System& sys, const SeriesVector& zbar, unsigned s) {
  return select_minor(sys, elkik(sys.equations, sys.unknown_ids()), zbar, s);
}

const char* to_string(RefinementCertificate::Status s) {
  switch (s) {
    case RefinementCertificate::Status::certified: return "certified";
    case RefinementCertificate::Status::stalled: return "stalled";
    case RefinementCertificate::Status::hypothesis_violated: return "hypothesis-violated";
    case RefinementCertificate::Status::precondition_failed: return "precondition-failed";
    case RefinementCertificate::Status::unsupported: return "unsupported";
  }
  return "unknown";
}

RefinementCertificate tougeron_refine(const System& sys, std::span<const std::size_t> rows,
                                      std::span<const std::size_t> cols, const SeriesVector& zbar,
                                      unsigned c, unsigned n) {
  check_point(sys, zbar);
  if (rows.empty() || rows.size() != cols.size()) {
    throw Error(ErrorKind::invalid_argument, "refinement needs a square nonempty block");
  }
  if (c < 1) throw Error(ErrorKind::invalid_argument, "refinement needs c >= 1");
  if (n < 1) throw Error(ErrorKind::invalid_argument, "precision must be positive");
  const auto ids = sys.unknown_ids();
  std::vector<Polynomial> fr;
  std::vector<VarId> cv;
  for (std::size_t i : rows) {
    if (i >= sys.equations.size()) throw Error(ErrorKind::invalid_argument, "equation index out of range");
    fr.push_back(sys.equations[i]);
  }
  for (std::size_t j : cols) {
    if (j >= ids.size()) throw Error(ErrorKind::invalid_argument, "unknown index out of range");
    cv.push_back(ids[j]);
  }
  const PolyMatrix jac = jacobian(fr, cv);
  const std::size_t q = rows.size();

  const OrderValue wv =
      adjugate(evaluate_matrix(jac, at_precision(zbar, n), sys.unknowns)).det.order();
  if (!wv.is_finite()) {
    throw Error(ErrorKind::precondition,
                "minor delta vanishes at zbar to precision " + std::to_string(n));
  }
  const unsigned w = wv.value();
  const unsigned p0 = n + w * (static_cast<unsigned>(std::bit_width(n)) + 4) + 2;
  SeriesVector z = at_precision(zbar, p0);
  const TruncatedSeries delta_bar = adjugate(evaluate_matrix(jac, z, sys.unknowns)).det;
  const TruncatedSeries delta_sq = delta_bar * delta_bar;

  auto residual = [&](const SeriesVector& pt) {
    std::vector<TruncatedSeries> out;
    for (const auto& f : fr) out.push_back(evaluate(f, pt, sys.unknowns));
    return out;
  };
  auto order_of = [](const std::vector<TruncatedSeries>& v) {
    OrderValue o = OrderValue::at_least(min_precision(v));
    for (const auto& s : v) o = min(o, s.order());
    return o;
  };

  RefinementCertificate cert;
  cert.route = "direct";
  cert.ord_delta = w;
  cert.c = c;
  std::vector<TruncatedSeries> fz = residual(z);
  unsigned c_star = p0;
  for (std::size_t i = 0; i < q; ++i) {
    try {
      const OrderValue o = fz[i].divide(delta_sq).order();
      c_star = std::min(c_star, o.value());
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::not_divisible) throw;
      throw Error(ErrorKind::precondition, "residual " + sys.equations[rows[i]].to_string() +
                                               " at zbar is not in delta(zbar)^2");
    }
  }
  cert.c_star = c_star;
  if (c_star < std::max(c, 1u)) {
    throw Error(ErrorKind::precondition,
                "residual lies in delta(zbar)^2 m^" + std::to_string(c_star) + " only, need m^" +
                    std::to_string(c) + " (ord delta(zbar) = " + std::to_string(w) + ")");
  }

  OrderValue e = order_of(fz);
  cert.trace.push_back(e.value());
  unsigned flat = 0;
  for (unsigned step = 0; !e.at_least_k(n); ++step) {
    const unsigned p = min_precision(z);
    if (p < n + w || step > 64) {
      throw Error(ErrorKind::stalled, "Newton iteration exhausted its working precision after " +
                                          std::to_string(step) + " steps (residual order " +
                                          e.to_string() + ")");
    }
    const Adjugate adj = adjugate(evaluate_matrix(jac, z, sys.unknowns));
    const TruncatedSeries& dz = adj.det;
    SeriesVector next = z;
    try {
      for (std::size_t j = 0; j < q; ++j) {
        TruncatedSeries num(sys.base, p);
        for (std::size_t i = 0; i < q; ++i) {
          if (adj.adj[j][i].is_zero()) continue;
          num += adj.adj[j][i] * fz[i];
        }
        next[cols[j]] = z[cols[j]].truncated(p - w) - num.divide(dz);
      }
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::not_divisible) throw;
      throw Error(ErrorKind::stalled, "Newton correction is not divisible by delta(z)");
    }
    z = truncated_all(next, min_precision(next));
    fz = residual(z);
    const OrderValue e2 = order_of(fz);
    cert.trace.push_back(e2.value());
    if (e2.is_finite() && e2.value() + 2 * w < 2 * e.value()) cert.contraction_ok = false;
    if (e2.value() <= e.value()) {
      if (++flat >= 3) {
        throw Error(ErrorKind::stalled, "residual order stalled at " + e2.to_string() +
                                            " for 3 consecutive steps");
      }
    } else {
      flat = 0;
    }
    e = e2;
  }

  cert.refined = truncated_all(z, n);
  certify(cert, sys, zbar, delta_bar, c, n, true);
  if (!cert.residual_order.at_least_k(n)) {
    cert.message = "equations outside the block do not vanish: " + cert.message;
  }
  return cert;
}

OneVarSystem build_one_var_system(const System& sys, const MinorSelection& sel,
                                  const SeriesVector& zbar, unsigned n, std::uint64_t seed) {
  check_point(sys, zbar);
  if (sys.base->size() != 2) {
    throw Error(ErrorKind::invalid_argument, "the reduction needs two series variables");
  }
  const unsigned r = sel.r();
  if (r == 0) {
    throw Error(ErrorKind::precondition,
                "delta(zbar) is a unit (r = 0); refine directly instead of reducing");
  }
  const Field field = sys.ring->field();
  const SeriesVector z = at_precision(zbar, n);
  const Polynomial d2 = sel.delta * sel.delta;
  const TruncatedSeries u = evaluate(d2, z, sys.unknowns);
  if (!(u.order() == OrderValue::exact(r))) {
    throw Error(ErrorKind::precision, "ord delta^2(zbar) = " + u.order().to_string() +
                                          " disagrees with the selection (" + std::to_string(r) + ")");
  }
  const Regularized reg = regularize(u, seed);
  const VarId xid = sys.ring->index(sys.base->name(0));
  const VarId yid = sys.ring->index(sys.base->name(1));

  OneVarSystem out;
  out.r = r;
  out.m = sys.unknowns.size();
  out.change = reg.change;
  Preparation prep = prepare(reg.series, n);
  out.unit = prep.unit;
  out.dist = prep.dist;

  std::vector<std::vector<TruncatedSeries>> rem;
  for (const auto& zi : z) {
    WDivision wd = w_divide(reg.change.apply(zi), out.dist, n);
    out.wbar.push_back(wd.quotient);
    rem.push_back(wd.remainder);
  }

  // Fresh names: z_ij as <unknown>_j, then a_1..a_r.
  std::set<std::string> taken(sys.ring->names().begin(), sys.ring->names().end());
  auto fresh = [&](const std::string& base) {
    std::string name = base;
    for (int k = 1; taken.count(name); ++k) name = base + "_" + std::to_string(k);
    taken.insert(name);
    return name;
  };
  std::vector<std::vector<std::string>> zij(out.m);
  std::vector<std::string> one_unknowns;
  for (std::size_t i = 0; i < out.m; ++i) {
    for (unsigned j = 0; j < r; ++j) {
      zij[i].push_back(fresh(sys.unknowns[i] + "_" + std::to_string(j)));
      one_unknowns.push_back(zij[i].back());
    }
  }
  std::vector<std::string> anames;
  for (unsigned p = 1; p <= r; ++p) {
    anames.push_back(fresh("a_" + std::to_string(p)));
    one_unknowns.push_back(anames.back());
  }

  std::vector<std::string> big_names = sys.ring->names();
  big_names.insert(big_names.end(), one_unknowns.begin(), one_unknowns.end());
  const RingPtr big = make_ring(field, big_names);
  const VarId ybig = big->index(sys.base->name(1));
  std::vector<VarId> a_ids;
  for (const auto& a : anames) a_ids.push_back(big->index(a));

  std::vector<std::optional<Polynomial>> images(sys.ring->size());
  for (VarId v = 0; v < sys.ring->size(); ++v) {
    const std::string& name = sys.ring->name(v);
    auto it = std::find(sys.unknowns.begin(), sys.unknowns.end(), name);
    if (it == sys.unknowns.end()) {
      images[v] = Polynomial::variable(big, name);
      continue;
    }
    const std::size_t i = static_cast<std::size_t>(it - sys.unknowns.begin());
    Polynomial sum(big);
    for (unsigned j = 0; j < r; ++j) {
      sum += Polynomial::variable(big, zij[i][j]) *
             Polynomial::term(big, Monomial::variable(ybig, j), Scalar::one(field));
    }
    images[v] = sum;
  }
  auto reduce = [&](const Polynomial& p) {
    const Polynomial star = reg.change.apply(p, xid, yid).substitute(big, images);
    return generic_euclid(star, r, ybig, a_ids).remainder;
  };

  const std::string xname = sys.base->name(0);
  std::vector<std::string> r1_names{xname};
  r1_names.insert(r1_names.end(), one_unknowns.begin(), one_unknowns.end());
  const RingPtr r1 = make_ring(field, r1_names);
  System& one = out.system;
  one.ring = r1;
  one.base = make_ring(field, {xname});
  one.unknowns = one_unknowns;

  const unsigned d = sys.degree_bound();
  auto degree_of = [](const Polynomial& p) { return p.is_zero() ? -1 : p.degree(); };
  const Polynomial gr = reduce(d2);
  for (unsigned l = 0; l < r; ++l) {
    Polynomial g = gr.coefficient_in(ybig, l).embed(r1);
    out.deg_g.push_back(degree_of(g));
    if (out.deg_g.back() > static_cast<int>(2 * out.m * (d - 1) * r) - static_cast<int>(l)) {
      out.degree_bounds_ok = false;
    }
    out.g_rows.push_back(one.equations.size());
    one.equations.push_back(std::move(g));
  }
  for (std::size_t k : sel.equations) {
    const Polynomial fr = reduce(sys.equations[k]);
    for (unsigned l = 0; l < r; ++l) {
      Polynomial f = fr.coefficient_in(ybig, l).embed(r1);
      out.deg_f.push_back(degree_of(f));
      if (out.deg_f.back() > static_cast<int>(d * r) - static_cast<int>(l)) {
        out.degree_bounds_ok = false;
      }
      out.f_rows.push_back(one.equations.size());
      one.equations.push_back(std::move(f));
    }
  }

  for (std::size_t i = 0; i < out.m; ++i) {
    for (unsigned j = 0; j < r; ++j) out.point.push_back(rem[i][j]);
  }
  for (const auto& a : out.dist.a) out.point.push_back(a);
  out.point = truncated_all(out.point, min_precision(out.point));

  auto rows_order = [&](const std::vector<std::size_t>& rows) {
    OrderValue o = OrderValue::at_least(min_precision(out.point));
    for (std::size_t i : rows) o = min(o, evaluate(one.equations[i], out.point, one.unknowns).order());
    return o;
  };
  out.g_order = rows_order(out.g_rows);
  out.f_order = rows_order(out.f_rows);
  return out;
}

Strategy parse_strategy(const std::string& s) {
  if (s == "auto" || s == "automatic") return Strategy::automatic;
  if (s == "newton") return Strategy::newton;
  if (s == "jet" || s == "jet-search") return Strategy::jet_search;
  throw Error(ErrorKind::configuration,
              "unknown strategy '" + s + "' (expected auto, newton or jet-search)");
}

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::automatic: return "auto";
    case Strategy::newton: return "newton";
    case Strategy::jet_search: return "jet-search";
  }
  return "unknown";
}

namespace {

using Matrix = std::vector<std::vector<TruncatedSeries>>;

// Pivots (row, column) of a greedy elimination over k[[x]], each pivot of
// minimal order among the remaining entries.
std::vector<std::pair<std::size_t, std::size_t>> greedy_pivots(Matrix m) {
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::vector<bool> row_used(rows), col_used(cols);
  for (;;) {
    std::optional<std::tuple<unsigned, std::size_t, std::size_t>> best;
    for (std::size_t i = 0; i < rows; ++i) {
      if (row_used[i]) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        if (col_used[j]) continue;
        const OrderValue o = m[i][j].order();
        if (!o.is_finite()) continue;
        std::tuple<unsigned, std::size_t, std::size_t> key{o.value(), i, j};
        if (!best || key < *best) best = key;
      }
    }
    if (!best) break;
    const auto [w, pr, pc] = *best;
    pivots.emplace_back(pr, pc);
    row_used[pr] = col_used[pc] = true;
    try {
      for (std::size_t i = 0; i < rows; ++i) {
        if (row_used[i] || m[i][pc].is_zero()) continue;
        const TruncatedSeries factor = m[i][pc].divide(m[pr][pc]);
        for (std::size_t j = 0; j < cols; ++j) {
          if (col_used[j] && j != pc) continue;
          m[i][j] = m[i][j].truncated(std::min(m[i][j].precision(), factor.precision())) -
                    factor * m[pr][j];
        }
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::not_divisible && e.kind() != ErrorKind::precision) throw;
      break;
    }
  }
  return pivots;
}

std::optional<SeriesVector> newton_one_var(const System& sys, const SeriesVector& point,
                                           unsigned n, std::size_t* rank, std::string* why) {
  const auto ids = sys.unknown_ids();
  const PolyMatrix jac = jacobian(sys.equations, ids);
  Matrix m(jac.rows(), std::vector<TruncatedSeries>(jac.cols()));
  for (std::size_t i = 0; i < jac.rows(); ++i) {
    for (std::size_t j = 0; j < jac.cols(); ++j) m[i][j] = evaluate(jac.at(i, j), point, sys.unknowns);
  }
  const auto pivots = greedy_pivots(m);
  if (pivots.empty()) {
    *why = "the Jacobian vanishes at the approximate point";
    return std::nullopt;
  }
  for (std::size_t q = pivots.size(); q >= 1; --q) {
    std::vector<std::size_t> rows, cols;
    for (std::size_t k = 0; k < q; ++k) {
      rows.push_back(pivots[k].first);
      cols.push_back(pivots[k].second);
    }
    try {
      RefinementCertificate cert = tougeron_refine(sys, rows, cols, point, 1, n);
      if (cert.ok()) {
        *rank = q;
        return cert.refined;
      }
      *why = "block of rank " + std::to_string(q) + ": " + cert.message;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::precondition && e.kind() != ErrorKind::stalled) throw;
      *why = "block of rank " + std::to_string(q) + ": " + e.what();
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<SeriesVector> jet_solutions(const System& sys, unsigned length, unsigned max_dimension) {
  const Field f = sys.ring->field();
  if (f.is_rational()) throw Error(ErrorKind::unsupported, "jet search needs a prime field");
  if (sys.base->size() != 1) {
    throw Error(ErrorKind::invalid_argument, "jet search works over one series variable");
  }
  const std::size_t m = sys.unknowns.size();
  if (length == 0 || static_cast<unsigned long>(length) * m > max_dimension) {
    throw Error(ErrorKind::capacity, "jet dimension " + std::to_string(length * m) +
                                         " exceeds the cap " + std::to_string(max_dimension));
  }
  const std::uint64_t p = f.modulus();
  constexpr std::uint64_t kMaxEvaluations = 4'000'000;
  std::uint64_t evaluations = 0;
  std::vector<SeriesVector> out;
  SeriesVector z(m, TruncatedSeries(sys.base, length));
  std::vector<std::uint64_t> digits(m);

  std::function<void(unsigned)> level = [&](unsigned l) {
    if (l == length) {
      out.push_back(z);
      return;
    }
    std::fill(digits.begin(), digits.end(), 0);
    for (;;) {
      for (std::size_t k = 0; k < m; ++k) {
        z[k].set_coefficient(l, 0, Scalar(f, static_cast<long>(digits[k])));
      }
      const SeriesVector cut = truncated_all(z, l + 1);
      bool ok = true;
      for (const auto& eq : sys.equations) {
        if (++evaluations > kMaxEvaluations) {
          throw Error(ErrorKind::capacity, "jet search exceeded its evaluation budget");
        }
        if (!evaluate(eq, cut, sys.unknowns).is_zero()) {
          ok = false;
          break;
        }
      }
      if (ok) {
        const std::vector<std::uint64_t> saved = digits;
        level(l + 1);
        digits = saved;
      }
      std::size_t k = 0;
      while (k < m && ++digits[k] == p) digits[k++] = 0;
      if (k == m) break;
    }
    for (std::size_t k = 0; k < m; ++k) z[k].set_coefficient(l, 0, Scalar(f));
  };
  level(0);
  return out;
}

OneVarSolution solve_one_var(const System& sys, const SeriesVector& approx, unsigned target,
                             Strategy strategy, unsigned n, const JetOptions& jet) {
  check_point(sys, approx);
  if (sys.base->size() != 1) {
    throw Error(ErrorKind::invalid_argument, "expected one series variable");
  }
  (void)target;
  const SeriesVector point = at_precision(approx, n);
  if (ideal_order(sys.equations, point, sys.unknowns).at_least_k(n)) {
    return {point, strategy == Strategy::jet_search ? Strategy::jet_search : Strategy::newton, 0,
            OrderValue::at_least(n)};
  }
  std::vector<std::string> failures;
  if (strategy != Strategy::jet_search) {
    std::size_t rank = 0;
    std::string why;
    if (auto sol = newton_one_var(sys, point, n, &rank, &why)) {
      return {*sol, Strategy::newton, rank, distance_order(*sol, point)};
    }
    failures.push_back("newton: " + why);
  }
  const bool jet_allowed = strategy == Strategy::jet_search ||
                           (strategy == Strategy::automatic && !sys.ring->field().is_rational());
  if (jet_allowed) {
    try {
      const auto sols = jet_solutions(sys, jet.length, jet.max_dimension);
      if (sols.empty()) {
        failures.push_back("jet-search: no solution modulo x^" + std::to_string(jet.length));
      } else {
        const SeriesVector near = truncated_all(point, jet.length);
        const SeriesVector* best = &sols.front();
        unsigned best_d = distance_order(sols.front(), near).value();
        for (const auto& s : sols) {
          const unsigned dv = distance_order(s, near).value();
          if (dv > best_d) {
            best = &s;
            best_d = dv;
          }
        }
        OneVarSolution out{*best, Strategy::jet_search, 0, distance_order(*best, near)};
        // Polish the jet to full precision when Newton agrees with it.
        std::size_t rank = 0;
        std::string why;
        if (auto sol = newton_one_var(sys, at_precision(*best, n), n, &rank, &why)) {
          if (distance_order(truncated_all(*sol, jet.length), *best).at_least_k(jet.length)) {
            out.point = *sol;
            out.rank = rank;
            out.distance = distance_order(*sol, point);
          }
        }
        return out;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::capacity && e.kind() != ErrorKind::unsupported) throw;
      failures.push_back(std::string("jet-search: ") + e.what());
    }
  } else if (strategy == Strategy::automatic) {
    failures.push_back("jet-search: needs a prime field");
  }
  std::string msg = "no one-variable strategy applies";
  for (const auto& f : failures) msg += "; " + f;
  throw Error(ErrorKind::unsupported, msg);
}

namespace {

void solve_into(SolveReport& rep, const System& sys, const ElkikResult& h, const SeriesVector& zbar,
                unsigned c, const SolveConfig& config) {
  const unsigned n = config.precision;
  if (c < 1) throw Error(ErrorKind::invalid_argument, "target order c must be at least 1");
  if (n <= c) throw Error(ErrorKind::invalid_argument, "precision must exceed the target order");
  check_point(sys, zbar);
  const SeriesVector z = at_precision(zbar, n);

  rep.h_order = elkik_order(h, sys, z);
  rep.residual_order = ideal_order(sys.equations, z, sys.unknowns);
  if (!rep.h_order.is_finite()) {
    throw Error(ErrorKind::hypothesis, "hypothesis violated: H(zbar) vanishes to precision (ord " +
                                           rep.h_order.to_string() + ")")
        .in_stage("elkik");
  }
  rep.s = rep.h_order.value() + 1;
  rep.gamma = gamma_bound(sys.unknowns.size(), sys.degree_bound(), rep.s, c, config.a_fn);
  rep.gamma_met = rep.residual_order.at_least_k(n) || mpz_class(rep.residual_order.value()) >= rep.gamma;

  if (rep.residual_order.at_least_k(n)) {
    RefinementCertificate& cert = rep.certificate;
    cert.route = "exact";
    cert.refined = z;
    cert.trace = {n};
    cert.c = c;
    cert.c_star = n;
    certify(cert, sys, zbar, TruncatedSeries::constant(sys.base, Scalar::one(sys.ring->field()), n),
            c, n, false);
    return;
  }

  try {
    rep.selection = select_minor(sys, h, z, rep.s);
  } catch (const Error& e) {
    throw e.in_stage("select_minor");
  }
  const MinorSelection& sel = *rep.selection;
  const TruncatedSeries delta_bar = evaluate(sel.delta, z, sys.unknowns);
  const TruncatedSeries k_bar = evaluate(sel.k_e, z, sys.unknowns);

  auto finish = [&](RefinementCertificate cert, const std::string& route) {
    cert.route = route;
    const bool direct = route == "direct";
    if (!direct) cert.message.clear();
    certify(cert, sys, zbar, delta_bar, c, n, direct);
    cert.ord_delta = sel.ord_delta;
    const OrderValue kt = evaluate(sel.k_e, cert.refined, sys.unknowns).order();
    cert.k_e_preserved = kt == k_bar.order();
    if (!cert.ok()) throw Error(ErrorKind::unsupported, cert.message).in_stage("certify");
    rep.certificate = std::move(cert);
  };

  // Bypass: delta(zbar) is a unit, or the Newton precondition already holds.
  try {
    RefinementCertificate cert = tougeron_refine(sys, sel.equations, sel.columns, z, c, n);
    finish(std::move(cert), "direct");
    return;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::precondition || sel.r() == 0) throw e.in_stage("refine");
  }

  if (!rep.gamma_met) {
    throw Error(ErrorKind::precondition, "insufficient residual order: ord f(zbar) = " +
                                             rep.residual_order.to_string() + " < gamma = " +
                                             rep.gamma.get_str())
        .in_stage("gate");
  }

  const unsigned r = sel.r();
  if (sys.base->size() == 1) {
    OneVarSolution sol;
    try {
      sol = solve_one_var(sys, z, c, config.strategy, n, config.jet);
    } catch (const Error& e) {
      throw e.in_stage("solve_one_var");
    }
    RefinementCertificate cert;
    cert.refined = sol.point;
    cert.trace = {ideal_order(sys.equations, at_precision(sol.point, n), sys.unknowns).value()};
    finish(std::move(cert), "one-variable");
    return;
  }

  const unsigned n_int = n + 2 * r + c + 2 * rep.s + 8;
  try {
    rep.reduction = build_one_var_system(sys, sel, z, n_int, config.seed);
  } catch (const Error& e) {
    throw e.in_stage("reduce");
  }
  const OneVarSystem& ov = *rep.reduction;
  OneVarSolution sol;
  try {
    sol = solve_one_var(ov.system, ov.point, c + 2 * rep.s, config.strategy, n_int, config.jet);
  } catch (const Error& e) {
    throw e.in_stage("solve_one_var");
  }

  // z = A w + sum_j z_ij y^j with A = y^r + sum_p a_p y^(r-p), then undo the shear.
  const unsigned prec = min_precision(sol.point);
  TruncatedSeries big_a(sys.base, prec);
  big_a.set_coefficient(0, r, Scalar::one(sys.ring->field()));
  for (unsigned p = 1; p <= r; ++p) {
    big_a += sol.point[ov.m * r + p - 1].widened(sys.base).shifted(0, r - p);
  }
  const LinearChange back = ov.change.inverse();
  SeriesVector zz;
  for (std::size_t i = 0; i < ov.m; ++i) {
    TruncatedSeries zi = certified_product(big_a, ov.wbar[i].extended(std::max(prec, ov.wbar[i].precision())));
    for (unsigned j = 0; j < r; ++j) zi += sol.point[i * r + j].widened(sys.base).shifted(0, j);
    zz.push_back(back.apply(zi.truncated(std::min(zi.precision(), prec))));
  }
  RefinementCertificate cert;
  try {
    cert = tougeron_refine(sys, sel.equations, sel.columns, zz, 1, n);
  } catch (const Error& e) {
    throw e.in_stage("final refine");
  }
  finish(std::move(cert), "reduction");
}

}  // namespace

SolveReport approximate_solve(const System& sys, const SeriesVector& zbar, unsigned c,
                              const SolveConfig& config) {
  SolveReport rep;
  ElkikResult h = [&] {
    try {
      return elkik(sys.equations, sys.unknown_ids());
    } catch (const Error& e) {
      throw e.in_stage("elkik");
    }
  }();
  solve_into(rep, sys, h, zbar, c, config);
  return rep;
}

std::size_t ProbeReport::defects() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const ProbeRow& r) { return r.defect; }));
}

ProbeReport artin_probe(const System& sys, std::span<const ProbeInput> family,
                        std::span<const unsigned> targets, const SolveConfig& config,
                        const BoundConstants& constants) {
  const ElkikResult h = elkik(sys.equations, sys.unknown_ids());
  const unsigned long m = sys.unknowns.size();
  const unsigned long d = sys.degree_bound();

  auto run = [&](const ProbeInput& in, unsigned c) {
    ProbeRow row;
    row.label = in.label;
    row.c = c;
    SolveReport rep;
    try {
      solve_into(rep, sys, h, in.zbar, c, config);
      row.certified = rep.certificate.ok();
      row.route = rep.certificate.route;
    } catch (const Error& e) {
      row.failure = e.what();
    }
    row.residual_order = rep.residual_order;
    row.h_order = rep.h_order;
    row.s = rep.s;
    row.gamma = rep.gamma;
    row.gamma_met = rep.gamma_met;
    if (row.certified) {
      OrderValue a = OrderValue::at_least(config.precision);
      for (const auto& o : rep.certificate.distance) a = min(a, o);
      row.achieved = a;
    }
    row.defect = row.gamma_met && !(row.certified && row.achieved.at_least_k(c));
    if (rep.h_order.is_finite()) {
      const mpz_class md = static_cast<unsigned long>(m * rep.h_order.value());
      try {
        row.threshold = checked_pow(mpz_class(d), checked_pow(constants.Kprime, md)) * (c + 1);
        row.threshold_met = mpz_class(row.residual_order.value()) >= *row.threshold ||
                            row.residual_order.at_least_k(config.precision);
      } catch (const Error&) {
      }
      if (row.certified) {
        try {
          row.rhs = (mpz_class(row.achieved.value()) + constants.K1) *
                    checked_pow(mpz_class(d), checked_pow(constants.K, md));
        } catch (const Error&) {
        }
      }
    }
    return row;
  };

  std::vector<std::pair<const ProbeInput*, unsigned>> tasks;
  for (const auto& in : family) {
    for (unsigned c : targets) tasks.emplace_back(&in, c);
  }
  ProbeReport out;
  out.constants = constants;
  out.rows.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < tasks.size();) out.rows[i] = run(*tasks[i].first, tasks[i].second);
  };
  const std::size_t nthreads =
      std::min<std::size_t>(tasks.size(), std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::future<void>> jobs;
  for (std::size_t t = 0; t < nthreads; ++t) jobs.push_back(std::async(std::launch::async, worker));
  for (auto& j : jobs) j.get();
  return out;
}

}  // namespace artin
