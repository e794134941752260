#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "artin/bounds.hpp"
#include "artin/elkik.hpp"
#include "artin/series.hpp"
#include "artin/weierstrass.hpp"

namespace artin {

/// Equations f_1..f_n in unknowns over k[[x]] or k[[x,y]]. The ring holds the
/// series variables and the unknowns; `base` holds the series variables only.
struct System {
  RingPtr ring;
  RingPtr base;
  std::vector<std::string> unknowns;
  std::vector<Polynomial> equations;

  std::vector<VarId> unknown_ids() const;
  /// max(2, max total degree of the equations).
  unsigned degree_bound() const;
};

/// Checks names and that equations only use declared variables.
System make_system(const Field& field, std::vector<std::string> series_vars,
                   std::vector<std::string> unknowns, std::span<const std::string> equations);

struct MinorSelection {
  std::vector<std::size_t> equations;  // E
  std::vector<std::size_t> columns;    // indices into unknowns
  Polynomial delta;                    // det of the Jacobian block (E, columns)
  Polynomial k_e;                      // generator of ((f_i, i in E) : I)
  unsigned ord_delta = 0;              // ord delta(zbar)
  unsigned ord_k = 0;                  // ord k_E(zbar)
  unsigned r() const noexcept { return 2 * ord_delta; }
};

/// ord H(zbar), with H the Elkik ideal with respect to the unknowns.
OrderValue elkik_order(const ElkikResult& h, const System& sys, const SeriesVector& zbar);

/// Picks E, a minor delta and k_E with ord(delta(zbar) k_E(zbar)) < s,
/// minimizing ord delta(zbar), then E and the columns lexicographically, then
/// ord k_E(zbar) and its index. Throws Error(hypothesis) when no product has
/// order below s.
MinorSelection select_minor(const System& sys, const ElkikResult& h, const SeriesVector& zbar,
                            unsigned s);
MinorSelection select_minor(const System& sys, const SeriesVector& zbar, unsigned s);

struct RefinementCertificate {
  enum class Status { certified, stalled, hypothesis_violated, precondition_failed, unsupported };
  Status status = Status::certified;
  std::string route;             // "direct", "reduction", "one-variable"
  SeriesVector refined;          // z~ to precision N
  OrderValue residual_order = OrderValue::at_least(0);  // all equations at z~
  std::vector<OrderValue> distance;                     // ord(z~_j - zbar_j)
  OrderValue delta_quotient_order = OrderValue::at_least(0);  // ord((z~ - zbar)/delta(zbar))
  bool delta_divides = true;     // false: z~ - zbar is not a multiple of delta(zbar)
  std::vector<unsigned> trace;   // residual order per Newton step
  bool contraction_ok = true;    // e_{t+1} >= 2 e_t - 2 ord delta on every step
  unsigned ord_delta = 0;
  unsigned c = 0;
  unsigned c_star = 0;           // ord of the residual over delta^2 at the start
  unsigned precision = 0;
  bool k_e_preserved = true;     // ord k_E(z~) = ord k_E(zbar), pipeline only
  std::string message;

  bool ok() const noexcept { return status == Status::certified; }
};

const char* to_string(RefinementCertificate::Status s);

/// Newton refinement of the equations `rows` in the unknowns `cols` (the
/// others stay fixed): z <- z - adj(J) F / det J. Requires
/// F(zbar) in delta(zbar)^2 m^c with c >= 1, checked by exact division.
/// On success every equation of the system vanishes mod m^N at z~ and
/// z~ - zbar lies in delta(zbar) m^c. Throws Error(precondition) or
/// Error(stalled).
RefinementCertificate tougeron_refine(const System& sys, std::span<const std::size_t> rows,
                                      std::span<const std::size_t> cols, const SeriesVector& zbar,
                                      unsigned c, unsigned n);

/// The system in one series variable obtained from the Weierstrass data.
struct OneVarSystem {
  System system;               // series variable x; unknowns z_ij then a_p
  SeriesVector point;          // (zbar_ij(x), abar_p(x))
  unsigned r = 0;
  std::size_t m = 0;           // original unknown count
  std::vector<std::size_t> g_rows;  // G_l, l = 0..r-1
  std::vector<std::size_t> f_rows;  // F_{k,l}, k in E
  LinearChange change = LinearChange::identity(Field::rationals());
  TruncatedSeries unit;
  DistinguishedPolynomial dist;
  SeriesVector wbar;           // quotients of the zbar_i by abar
  std::vector<int> deg_g, deg_f;
  bool degree_bounds_ok = true;
  OrderValue g_order = OrderValue::at_least(0);  // min ord G_l(point)
  OrderValue f_order = OrderValue::at_least(0);  // min ord F_{k,l}(point)
};

/// Pre: two series variables and r = 2 ord delta(zbar) >= 1. zbar is treated
/// as exact and the data is computed to precision n. `seed` drives the shear
/// search over prime fields.
OneVarSystem build_one_var_system(const System& sys, const MinorSelection& sel,
                                  const SeriesVector& zbar, unsigned n, std::uint64_t seed = 0);

enum class Strategy { automatic, newton, jet_search };
Strategy parse_strategy(const std::string& s);
const char* to_string(Strategy s);

struct JetOptions {
  unsigned length = 4;      // solve modulo x^length
  unsigned max_dimension = 12;  // length * unknowns cap
};

struct OneVarSolution {
  SeriesVector point;
  Strategy strategy = Strategy::newton;
  std::size_t rank = 0;       // size of the Newton block
  OrderValue distance = OrderValue::at_least(0);  // to the approximate point
};

/// Solves a system in one series variable near `approx`. newton: greedy
/// minimal-order pivoting picks a square block whose residual exceeds twice
/// its minor order, then refines it and checks every equation; jet-search
/// (prime fields only): all solutions modulo x^length, returning the one
/// closest to approx (first in enumeration order on ties). Throws
/// Error(unsupported) when no strategy applies.
OneVarSolution solve_one_var(const System& sys, const SeriesVector& approx, unsigned target,
                             Strategy strategy, unsigned n, const JetOptions& jet = {});

/// Every solution modulo x^length, in enumeration order.
std::vector<SeriesVector> jet_solutions(const System& sys, unsigned length,
                                        unsigned max_dimension);

struct SolveConfig {
  AFunction a_fn;
  unsigned precision = 20;
  Strategy strategy = Strategy::automatic;
  std::uint64_t seed = 0;
  JetOptions jet;
};

struct SolveReport {
  RefinementCertificate certificate;
  unsigned s = 0;
  OrderValue h_order = OrderValue::at_least(0);
  OrderValue residual_order = OrderValue::at_least(0);  // ord f(zbar)
  mpz_class gamma;
  bool gamma_met = false;
  std::optional<MinorSelection> selection;
  std::optional<OneVarSystem> reduction;
};

/// The full pipeline: s = ord H(zbar) + 1, minor selection, then either a
/// direct refinement (r = 0 or the Newton precondition already holds) or the
/// reduction to one variable, followed by a final refinement. The reduction
/// route requires ord f(zbar) >= gamma(m, d, s, c). Failures throw Error with
/// the stage named; a returned report is always certified.
SolveReport approximate_solve(const System& sys, const SeriesVector& zbar, unsigned c,
                              const SolveConfig& config);

struct ProbeRow {
  std::string label;
  unsigned c = 0;
  OrderValue residual_order = OrderValue::at_least(0);
  OrderValue h_order = OrderValue::at_least(0);
  unsigned s = 0;
  mpz_class gamma;
  bool gamma_met = false;
  bool certified = false;
  std::string route;
  std::string failure;
  OrderValue achieved = OrderValue::at_least(0);  // min_j ord(z~_j - zbar_j)
  bool defect = false;  // gamma met but no certificate of order c
  // Display sides, as m-adic exponents. threshold = d^(K'^(m ord H)) (c+1);
  // rhs = (achieved + K1) d^(K^(m ord H)), the first inequality reading
  // ord f(zbar) <= rhs. Empty when the value exceeds the capacity guard.
  std::optional<mpz_class> threshold;
  std::optional<mpz_class> rhs;
  bool threshold_met = false;
};

struct ProbeReport {
  std::vector<ProbeRow> rows;
  BoundConstants constants;
  std::size_t defects() const;
};

struct ProbeInput {
  std::string label;
  SeriesVector zbar;
};

/// Runs approximate_solve on every (family member, target) pair; rows are
/// independent and run concurrently, reported in input order.
ProbeReport artin_probe(const System& sys, std::span<const ProbeInput> family,
                        std::span<const unsigned> targets, const SolveConfig& config,
                        const BoundConstants& constants = {});

}  // namespace artin
