#include "doctest.h"
#include "helpers.hpp"

#include "artin/errors.hpp"
#include "artin/solver.hpp"

using namespace artin;

namespace {

System sys2(std::vector<std::string> unknowns, std::vector<std::string> eqs,
            Field f = Field::rationals()) {
  return make_system(f, {"x", "y"}, std::move(unknowns), eqs);
}

System sys1(std::vector<std::string> unknowns, std::vector<std::string> eqs,
            Field f = Field::rationals()) {
  return make_system(f, {"x"}, std::move(unknowns), eqs);
}

SeriesVector point(const System& s, const std::string& text) {
  return parse_series_list(text, s.base);
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::invalid_argument;
}

bool contracts(const RefinementCertificate& c) {
  for (std::size_t t = 1; t < c.trace.size(); ++t) {
    if (c.trace[t] < c.precision && c.trace[t] + 2 * c.ord_delta < 2 * c.trace[t - 1]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("make_system validates its input") {
  CHECK(kind_of([] { sys2({"z"}, {"z^2 - w"}); }) == ErrorKind::parse);
  CHECK(kind_of([] { sys2({"x"}, {"x"}); }) == ErrorKind::invalid_argument);
  CHECK(kind_of([] { make_system(Field::rationals(), {"x", "y", "t"}, {"z"}, std::vector<std::string>{"z"}); }) ==
        ErrorKind::invalid_argument);
  const System s = sys2({"z1", "z2"}, {"z1^3 - z2", "z1*x"});
  CHECK(s.degree_bound() == 3);
  CHECK(s.unknown_ids() == std::vector<VarId>{2, 3});
}

TEST_CASE("select_minor picks the minimal delta order") {
  const System s = sys2({"z1"}, {"z1^2 - x^2"});
  const auto z = point(s, "x + x^4 + O(m^20)");
  const MinorSelection sel = select_minor(s, z, 3);
  CHECK(sel.equations == std::vector<std::size_t>{0});
  CHECK(sel.columns == std::vector<std::size_t>{0});
  CHECK(sel.delta == test::poly(s.ring, "2*z1"));
  CHECK(sel.r() == 2);
  CHECK(sel.ord_k == 0);

  const System smooth = sys2({"z1"}, {"z1 - x"});
  const MinorSelection sm = select_minor(smooth, point(smooth, "x + O(m^10)"), 1);
  CHECK(sm.delta == test::poly(smooth.ring, "1"));
  CHECK(sm.r() == 0);

  // s below every available product order.
  CHECK(kind_of([&] { select_minor(s, z, 1); }) == ErrorKind::hypothesis);
}

TEST_CASE("select_minor breaks ties by columns") {
  const System s = sys2({"z1", "z2"}, {"z1 + z2 - x"});
  const MinorSelection sel = select_minor(s, point(s, "x + O(m^8), 0 + O(m^8)"), 1);
  CHECK(sel.columns == std::vector<std::size_t>{0});
  CHECK(sel.r() == 0);
}

TEST_CASE("hypothesis violation on a point of the singular locus") {
  // z1 z2 = 0 at the origin: H vanishes, so no minor satisfies the bound.
  const System s = sys2({"z1", "z2"}, {"z1*z2"});
  const auto z = point(s, "0 + O(m^10), 0 + O(m^10)");
  const ElkikResult h = elkik(s.equations, s.unknown_ids());
  CHECK_FALSE(elkik_order(h, s, z).is_finite());
  CHECK(kind_of([&] { select_minor(s, h, z, 10); }) == ErrorKind::hypothesis);
  SolveConfig cfg;
  CHECK(kind_of([&] { approximate_solve(s, z, 2, cfg); }) == ErrorKind::hypothesis);
  // Off the singular locus but with a residual too small for the gate.
  CHECK(kind_of([&] { approximate_solve(s, point(s, "x^3 + O(m^10), x^4 + O(m^10)"), 2, cfg); }) ==
        ErrorKind::precondition);
}

TEST_CASE("tougeron_refine on z^2 - x^2") {
  const System s = sys2({"z"}, {"z^2 - x^2"});
  const auto z = point(s, "x + x^4 + O(m^20)");
  const std::vector<std::size_t> rows{0}, cols{0};
  const RefinementCertificate c = tougeron_refine(s, rows, cols, z, 3, 20);
  CHECK(c.ok());
  CHECK(c.refined[0] == parse_series("x + O(m^20)", s.base));
  CHECK(c.residual_order.at_least_k(20));
  CHECK(c.distance[0] == OrderValue::exact(4));
  CHECK(c.delta_quotient_order == OrderValue::exact(3));
  CHECK(c.c_star == 3);
  CHECK(c.ord_delta == 1);
  CHECK(c.contraction_ok);
  CHECK(contracts(c));
  CHECK(c.trace.front() == 5);

  // 2x^3 + x^4 is not in (x^2) m^3.
  CHECK(kind_of([&] { tougeron_refine(s, rows, cols, point(s, "x + x^2 + O(m^20)"), 3, 20); }) ==
        ErrorKind::precondition);
  CHECK(kind_of([&] { tougeron_refine(s, rows, cols, z, 0, 20); }) == ErrorKind::invalid_argument);
}

TEST_CASE("tougeron_refine in the linear case solves in one step") {
  const System s = sys2({"z"}, {"z - x*(1 + y^2 + x*y)"});
  const auto z = point(s, "x + x^5 + O(m^12)");
  const std::vector<std::size_t> rows{0}, cols{0};
  const RefinementCertificate c = tougeron_refine(s, rows, cols, z, 3, 12);
  REQUIRE(c.ok());
  CHECK(c.trace.size() == 2);
  CHECK(c.refined[0] == parse_series("x + x*y^2 + x^2*y + O(m^12)", s.base));
}

TEST_CASE("tougeron_refine on a square 2x2 block") {
  // Exact root (u, v) = (x + y, (x + y)^2 - x) with delta = 3(x + y)^2 - x there; the
  // start is off by delta^2 times x^2 and y^3.
  const System s = sys2({"u", "v"}, {"u^2 - v - x", "u*v - (x + y)^3 + x*(x + y)"});
  const auto z = point(s, "x + y + x^2*(3*(x + y)^2 - x)^2 + O(m^16), "
                          "(x + y)^2 - x + y^3*(3*(x + y)^2 - x)^2 + O(m^16)");
  const std::vector<std::size_t> rows{0, 1}, cols{0, 1};
  const RefinementCertificate c = tougeron_refine(s, rows, cols, z, 2, 16);
  REQUIRE(c.ok());
  // With ord delta = 1 a solution mod m^16 is only determined mod m^15.
  const auto root = point(s, "x + y + O(m^15), (x + y)^2 - x + O(m^15)");
  CHECK(c.refined[0].truncated(15) == root[0]);
  CHECK(c.refined[1].truncated(15) == root[1]);
  CHECK(c.c_star >= 2);
  CHECK(contracts(c));
  CHECK(c.trace.size() >= 3);
}

TEST_CASE("tougeron_refine reports equations outside the block") {
  const System s = sys2({"z"}, {"z^2 - x^2", "z - x - y^7"});
  const std::vector<std::size_t> rows{0}, cols{0};
  const RefinementCertificate c = tougeron_refine(s, rows, cols, point(s, "x + x^4 + O(m^12)"), 3, 12);
  CHECK_FALSE(c.ok());
  CHECK(c.status == RefinementCertificate::Status::unsupported);
  CHECK(c.message.find("outside the block") != std::string::npos);
}

TEST_CASE("solve_one_var with newton") {
  const System s = sys1({"z10"}, {"z10^2 - x^2"});
  const OneVarSolution sol = solve_one_var(s, point(s, "x + x^5 + O(x^20)"), 3, Strategy::newton, 20);
  CHECK(sol.strategy == Strategy::newton);
  CHECK(sol.point[0] == parse_series("x + O(x^20)", s.base));
  CHECK(sol.distance == OrderValue::exact(5));
  CHECK(sol.rank == 1);
}

TEST_CASE("solve_one_var returns an exact point unchanged") {
  const System s = sys1({"z", "w"}, {"0", "z - z"});
  const auto p = point(s, "x + x^3 + O(x^10), 1 + O(x^10)");
  const OneVarSolution sol = solve_one_var(s, p, 2, Strategy::automatic, 10);
  CHECK(sol.point == p);
  CHECK(sol.rank == 0);
}

TEST_CASE("jet search over GF(5)") {
  const Field f5 = Field::prime(5);
  const System s = sys1({"z"}, {"z^2 - x^2"}, f5);
  const auto sols = jet_solutions(s, 4, 12);
  // +-x + a x^3 for every a.
  CHECK(sols.size() == 10);
  for (const auto& v : sols) {
    const TruncatedSeries t = v[0].truncated(3);
    CHECK((t == parse_series("x + O(x^3)", s.base) || t == parse_series("-x + O(x^3)", s.base)));
  }
  const OneVarSolution jet = solve_one_var(s, point(s, "x + x^5 + O(x^12)"), 3, Strategy::jet_search, 12);
  CHECK(jet.strategy == Strategy::jet_search);
  CHECK(jet.point[0].truncated(4) == parse_series("x + O(x^4)", s.base));
  const OneVarSolution neg = solve_one_var(s, point(s, "-x + 2*x^4 + O(x^12)"), 3, Strategy::jet_search, 12);
  CHECK(neg.point[0].truncated(4) == parse_series("-x + O(x^4)", s.base));
  const OneVarSolution nw = solve_one_var(s, point(s, "x + x^5 + O(x^12)"), 3, Strategy::newton, 12);
  CHECK(distance_order(nw.point, jet.point).at_least_k(3));

  CHECK(kind_of([&] { jet_solutions(s, 13, 12); }) == ErrorKind::capacity);
  const System q = sys1({"z"}, {"z^2 - x^2"});
  CHECK(kind_of([&] { jet_solutions(q, 2, 12); }) == ErrorKind::unsupported);
  CHECK(parse_strategy("jet-search") == Strategy::jet_search);
  CHECK(kind_of([] { parse_strategy("magic"); }) == ErrorKind::configuration);
}

TEST_CASE("build_one_var_system for z^2 - x^2") {
  const System s = sys2({"z"}, {"z^2 - x^2"});
  const auto z = point(s, "x + y^9 + O(m^24)");
  const MinorSelection sel = select_minor(s, z, 2);
  REQUIRE(sel.r() == 2);
  const OneVarSystem ov = build_one_var_system(s, sel, z, 24);
  CHECK(ov.r == 2);
  CHECK(ov.system.unknowns == std::vector<std::string>{"z_0", "z_1", "a_1", "a_2"});
  CHECK(ov.g_rows.size() == 2);
  CHECK(ov.f_rows.size() == 2);
  CHECK(ov.degree_bounds_ok);
  CHECK(ov.g_order.value() >= 15);
  CHECK(ov.f_order.value() >= 8);
  CHECK_FALSE(ov.change.is_identity());

  // Recomposition: zbar after the shear equals abar w + sum z_j y^j.
  TruncatedSeries a = ov.dist.as_series(20);
  TruncatedSeries rec = certified_product(a, ov.wbar[0]);
  for (unsigned j = 0; j < 2; ++j) rec += ov.point[j].widened(s.base).shifted(0, j);
  const TruncatedSeries lhs = ov.change.apply(z[0]).truncated(18);
  CHECK(rec.truncated(18) == lhs);

  const System smooth = sys2({"z"}, {"z - x"});
  const auto zs = point(smooth, "x + O(m^10)");
  CHECK(kind_of([&] { build_one_var_system(smooth, select_minor(smooth, zs, 1), zs, 10); }) ==
        ErrorKind::precondition);
}

TEST_CASE("approximate_solve on z^2 - x^2") {
  const System s = sys2({"z"}, {"z^2 - x^2"});
  SolveConfig cfg;
  cfg.a_fn = AFunction::constant(1);
  cfg.precision = 20;
  const SolveReport r = approximate_solve(s, point(s, "x + x^4 + O(m^20)"), 3, cfg);
  CHECK(r.certificate.ok());
  CHECK(r.certificate.route == "direct");
  CHECK(r.certificate.refined[0] == parse_series("x + O(m^20)", s.base));
  CHECK(r.s == 2);
  CHECK(r.gamma == 8);
  CHECK_FALSE(r.gamma_met);

  const SolveReport ex = approximate_solve(s, point(s, "x + O(m^20)"), 3, cfg);
  CHECK(ex.certificate.route == "exact");
  CHECK(ex.certificate.trace.size() == 1);
  CHECK(ex.certificate.refined[0] == parse_series("x + O(m^20)", s.base));

  try {
    approximate_solve(s, point(s, "x + x^2 + O(m^20)"), 3, cfg);
    FAIL("expected a failure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::precondition);
    CHECK(std::string(e.what()).find("insufficient residual order") != std::string::npos);
  }
}

TEST_CASE("approximate_solve through the one-variable reduction") {
  const System s = sys2({"z"}, {"z^2 - x^2"});
  SolveConfig cfg;
  cfg.a_fn = AFunction::constant(1);
  cfg.precision = 20;
  const SolveReport r = approximate_solve(s, point(s, "x + y^12 + O(m^20)"), 4, cfg);
  CHECK(r.gamma_met);
  CHECK(r.certificate.ok());
  CHECK(r.certificate.route == "reduction");
  REQUIRE(r.reduction);
  CHECK(r.certificate.refined[0] == parse_series("x + O(m^20)", s.base));
  CHECK(r.certificate.distance[0] == OrderValue::exact(12));
}

TEST_CASE("approximate_solve on the cusp family") {
  for (const std::vector<std::string>& vars : {std::vector<std::string>{"x"}, std::vector<std::string>{"x", "y"}}) {
    const System s = make_system(Field::rationals(), vars, {"z1", "z2", "z3"},
                                 std::vector<std::string>{"z1^2 - z2^2*z3"});
    SolveConfig cfg;
    cfg.a_fn = AFunction::constant(1);
    cfg.precision = 24;
    for (unsigned t : {10u, 12u}) {
      const std::string zt = "x^3 + x^" + std::to_string(t) + " + O(m^24), x + O(m^24), x^4 + O(m^24)";
      const auto z = point(s, zt);
      CHECK(ideal_order(s.equations, z, s.unknowns) == OrderValue::exact(t + 3));
      for (unsigned c = 1; c + 4 <= t; ++c) {
        CAPTURE(t);
        CAPTURE(c);
        CAPTURE(vars.size());
        const SolveReport r = approximate_solve(s, z, c, cfg);
        CHECK(r.certificate.ok());
        CHECK(r.s == 3);
        for (const auto& d : r.certificate.distance) CHECK(d.at_least_k(c));
      }
    }
  }
}

TEST_CASE("artin_probe flags no defects on the z^2 - x^2 family") {
  const System s = sys2({"z"}, {"z^2 - x^2"});
  SolveConfig cfg;
  cfg.a_fn = AFunction::constant(1);
  cfg.precision = 20;
  std::vector<ProbeInput> family;
  for (unsigned t = 4; t <= 12; t += 2) {
    family.push_back({"t=" + std::to_string(t), point(s, "x + x^" + std::to_string(t) + " + O(m^20)")});
  }
  const std::vector<unsigned> targets{1, 2, 3};
  const ProbeReport rep = artin_probe(s, family, targets, cfg);
  CHECK(rep.rows.size() == family.size() * targets.size());
  CHECK(rep.defects() == 0);
  CHECK(rep.rows.front().label == "t=4");
  for (const auto& row : rep.rows) {
    if (row.certified) CHECK(row.achieved.at_least_k(row.c));
  }
  // Achieved order grows with the residual order.
  CHECK(rep.rows.back().achieved.value() > rep.rows.front().achieved.value());
}
