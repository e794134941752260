#include "artin/frontend.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <iomanip>
#include <set>
#include <sstream>

#include <json.hpp>

#include "artin/bounds.hpp"
#include "artin/errors.hpp"
#include "artin/parse.hpp"

namespace artin {
namespace {

using json = nlohmann::ordered_json;

const std::set<std::string, std::less<>>& known_keys() {
  static const std::set<std::string, std::less<>> keys = {
      "field",  "series_vars", "unknowns", "equation", "equations", "approx",
      "precision", "target_order", "strategy", "seed", "a_fn", "K", "K1", "K2", "K3",
      "Kprime", "C", "compare", "modulo", "member", "radical_member", "ideal", "by",
      "order", "series", "divisor", "rows", "cols", "m", "d", "n", "s", "c", "k",
      "family", "family_template", "family_range", "targets", "jet_length",
      "jet_max_dimension"};
  return keys;
}

bool repeatable(std::string_view key) {
  return key == "equation" || key == "member" || key == "radical_member" || key == "family";
}

std::string_view trim(std::string_view s, std::size_t* lead = nullptr) {
  std::size_t b = 0;
  while (b < s.size() && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  std::size_t e = s.size();
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  if (lead) *lead = b;
  return s.substr(b, e - b);
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::vector<std::string> name_list(const ProblemEntry& e) {
  std::vector<std::string> out;
  std::size_t start = 0;
  const std::string& v = e.value;
  while (start <= v.size()) {
    std::size_t comma = v.find(',', start);
    if (comma == std::string::npos) comma = v.size();
    std::size_t lead = 0;
    const std::string_view item = trim(std::string_view(v).substr(start, comma - start), &lead);
    if (!item.empty()) {
      if (!is_identifier(item)) {
        throw ParseError("'" + std::string(item) + "' is not a variable name", e.line,
                         e.column + static_cast<int>(start + lead));
      }
      out.emplace_back(item);
    } else if (comma < v.size()) {
      throw ParseError("empty name in list", e.line, e.column + static_cast<int>(start));
    }
    start = comma + 1;
  }
  return out;
}

unsigned parse_uint(const ProblemEntry& e) {
  unsigned long long v = 0;
  const std::string_view s = e.value;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v > 1'000'000'000ULL) {
    throw ParseError("expected a nonnegative integer for '" + e.key + "'", e.line, e.column);
  }
  return static_cast<unsigned>(v);
}

std::vector<unsigned> uint_list(const ProblemEntry& e) {
  std::vector<unsigned> out;
  std::size_t start = 0;
  while (start <= e.value.size()) {
    std::size_t comma = e.value.find(',', start);
    if (comma == std::string::npos) comma = e.value.size();
    std::size_t lead = 0;
    const std::string_view item = trim(std::string_view(e.value).substr(start, comma - start), &lead);
    ProblemEntry sub{e.key, std::string(item), e.line, e.column + static_cast<int>(start + lead)};
    if (!item.empty()) out.push_back(parse_uint(sub));
    start = comma + 1;
  }
  return out;
}

mpz_class parse_mpz(const ProblemEntry& e) {
  mpz_class v;
  if (e.value.empty() || v.set_str(e.value, 10) != 0) {
    throw ParseError("expected an integer for '" + e.key + "'", e.line, e.column);
  }
  return v;
}

mpq_class parse_mpq(const ProblemEntry& e) {
  mpq_class v;
  if (e.value.empty() || v.set_str(e.value, 10) != 0) {
    throw ParseError("expected a rational for '" + e.key + "'", e.line, e.column);
  }
  v.canonicalize();
  return v;
}

// ---- problem accessors --------------------------------------------------

RingPtr problem_ring(const ProblemFile& pf) {
  std::vector<std::string> names = pf.series_vars;
  names.insert(names.end(), pf.unknowns.begin(), pf.unknowns.end());
  if (names.empty()) {
    throw Error(ErrorKind::configuration, "declare series_vars and/or unknowns");
  }
  return make_ring(pf.field, names);
}

std::vector<Polynomial> poly_list(const ProblemEntry& e, const RingPtr& ring) {
  return parse_polynomial_list(e.value, ring, e.line, e.column);
}

std::vector<Polynomial> equations_of(const ProblemFile& pf, const RingPtr& ring) {
  std::vector<Polynomial> out;
  for (const auto& e : pf.entries) {
    if (e.key == "equation") out.push_back(parse_polynomial(e.value, ring, e.line, e.column));
    if (e.key == "equations") {
      for (auto& p : poly_list(e, ring)) out.push_back(std::move(p));
    }
  }
  return out;
}

std::vector<std::string> equation_texts(const System& sys) {
  std::vector<std::string> out;
  for (const auto& f : sys.equations) out.push_back(f.to_string());
  return out;
}

System problem_system(const ProblemFile& pf) {
  if (pf.series_vars.empty() || pf.series_vars.size() > 2) {
    throw Error(ErrorKind::configuration, "series_vars must list one or two variables");
  }
  if (pf.unknowns.empty()) throw Error(ErrorKind::configuration, "no unknowns declared");
  System sys;
  sys.ring = problem_ring(pf);
  sys.base = make_ring(pf.field, pf.series_vars);
  sys.unknowns = pf.unknowns;
  sys.equations = equations_of(pf, sys.ring);
  if (sys.equations.empty()) throw Error(ErrorKind::configuration, "no equations given");
  return sys;
}

const ProblemEntry& require(const ProblemFile& pf, std::string_view key, const std::string& why) {
  const ProblemEntry* e = pf.find(key);
  if (!e) throw Error(ErrorKind::configuration, "missing '" + std::string(key) + ":' line (" + why + ")");
  return *e;
}

SeriesVector series_list(const ProblemEntry& e, const System& sys) {
  SeriesVector v = parse_series_list(e.value, sys.base, e.line, e.column);
  if (v.size() != sys.unknowns.size()) {
    throw ParseError("expected " + std::to_string(sys.unknowns.size()) + " series, found " +
                         std::to_string(v.size()),
                     e.line, e.column);
  }
  return v;
}

unsigned uint_or(const ProblemFile& pf, std::string_view key, unsigned fallback) {
  const ProblemEntry* e = pf.find(key);
  return e ? parse_uint(*e) : fallback;
}

struct Settings {
  unsigned precision = 20;
  bool precision_set = false;
  unsigned target = 1;
  Strategy strategy = Strategy::automatic;
  std::uint64_t seed = 0;
  AFunction a_fn;
  BoundConstants constants;
  JetOptions jet;
};

Settings settings_of(const ProblemFile& pf, const RunOptions& opt) {
  Settings s;
  if (const auto* e = pf.find("precision")) {
    s.precision = parse_uint(*e);
    s.precision_set = true;
  }
  if (opt.precision) {
    s.precision = *opt.precision;
    s.precision_set = true;
  }
  s.target = opt.target_order ? *opt.target_order : uint_or(pf, "target_order", 1);
  if (const auto* e = pf.find("strategy")) {
    try {
      s.strategy = parse_strategy(e->value);
    } catch (const Error& err) {
      throw ParseError(err.what(), e->line, e->column);
    }
  }
  if (opt.strategy) s.strategy = *opt.strategy;
  if (const auto* e = pf.find("seed")) s.seed = parse_uint(*e);
  if (opt.seed) s.seed = *opt.seed;
  if (const auto* e = pf.find("a_fn")) {
    try {
      s.a_fn = AFunction::parse(e->value);
    } catch (const Error& err) {
      throw ParseError(err.what(), e->line, e->column);
    }
  }
  if (const auto* e = pf.find("K")) s.constants.K = parse_mpz(*e);
  if (const auto* e = pf.find("K1")) s.constants.K1 = parse_mpz(*e);
  if (const auto* e = pf.find("Kprime")) s.constants.Kprime = parse_mpz(*e);
  if (const auto* e = pf.find("K2")) s.constants.K2 = parse_mpq(*e);
  if (const auto* e = pf.find("K3")) s.constants.K3 = parse_mpq(*e);
  if (const auto* e = pf.find("C")) s.constants.C = parse_mpq(*e);
  s.jet.length = uint_or(pf, "jet_length", s.jet.length);
  s.jet.max_dimension = uint_or(pf, "jet_max_dimension", s.jet.max_dimension);
  if (s.precision == 0) throw Error(ErrorKind::configuration, "precision must be positive");
  return s;
}

// ---- JSON helpers -------------------------------------------------------

json series_json(const TruncatedSeries& s) {
  json terms = json::array();
  const bool two = s.nvars() == 2;
  for (unsigned deg = 0; deg < s.precision(); ++deg) {
    for (unsigned j = 0; j <= (two ? deg : 0); ++j) {
      const Scalar c = s.coefficient(deg - j, j);
      if (c.is_zero()) continue;
      if (two) {
        terms.push_back(json::array({deg - j, j, c.to_string()}));
      } else {
        terms.push_back(json::array({deg, c.to_string()}));
      }
    }
  }
  return json{{"text", s.to_string()},
              {"vars", s.base()->names()},
              {"precision", s.precision()},
              {"terms", terms}};
}

json series_list_json(std::span<const TruncatedSeries> v) {
  json out = json::array();
  for (const auto& s : v) out.push_back(series_json(s));
  return out;
}

json order_json(const OrderValue& o) { return json{{"value", o.value()}, {"exact", o.is_finite()}}; }

json poly_list_json(std::span<const Polynomial> v) {
  json out = json::array();
  for (const auto& p : v) out.push_back(p.to_string());
  return out;
}

json one_based(std::span<const std::size_t> v) {
  json out = json::array();
  for (std::size_t i : v) out.push_back(i + 1);
  return out;
}

json certificate_json(const RefinementCertificate& c) {
  json dist = json::array();
  for (const auto& d : c.distance) dist.push_back(order_json(d));
  return json{{"status", to_string(c.status)},
              {"route", c.route},
              {"refined", series_list_json(c.refined)},
              {"residual_order", order_json(c.residual_order)},
              {"distance", dist},
              {"delta_quotient_order", c.delta_divides ? order_json(c.delta_quotient_order) : json(nullptr)},
              {"trace", c.trace},
              {"iterations", c.trace.empty() ? 0 : c.trace.size() - 1},
              {"contraction_ok", c.contraction_ok},
              {"ord_delta", c.ord_delta},
              {"c", c.c},
              {"c_star", c.c_star},
              {"precision", c.precision},
              {"k_e_preserved", c.k_e_preserved},
              {"message", c.message}};
}

std::string names_of(const System& sys, std::span<const std::size_t> cols) {
  std::string out;
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? ", " : "") + sys.unknowns[cols[i]];
  return out;
}

std::string indices_of(std::span<const std::size_t> v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + std::to_string(v[i] + 1);
  return out;
}

json selection_json(const System& sys, const MinorSelection& sel) {
  json cols = json::array();
  for (std::size_t j : sel.columns) cols.push_back(sys.unknowns[j]);
  return json{{"equations", one_based(sel.equations)},
              {"columns", cols},
              {"delta", sel.delta.to_string()},
              {"k_e", sel.k_e.to_string()},
              {"ord_delta", sel.ord_delta},
              {"ord_k_e", sel.ord_k},
              {"r", sel.r()}};
}

void text_certificate(std::ostream& os, const System& sys, const RefinementCertificate& c) {
  os << "status: " << to_string(c.status) << "\n";
  os << "route: " << c.route << "\n";
  os << "refined:\n";
  for (std::size_t j = 0; j < c.refined.size(); ++j) {
    os << "  " << sys.unknowns[j] << " = " << c.refined[j].to_string() << "\n";
  }
  os << "residual order: " << c.residual_order.to_string() << "\n";
  os << "distance:";
  for (std::size_t j = 0; j < c.distance.size(); ++j) {
    os << " " << sys.unknowns[j] << " " << c.distance[j].to_string();
  }
  os << "\n";
  os << "delta quotient order: "
     << (c.delta_divides ? c.delta_quotient_order.to_string() : "not divisible") << "\n";
  os << "trace:";
  for (unsigned t : c.trace) os << " " << t;
  os << "\n";
  os << "contraction: " << (c.contraction_ok ? "ok" : "violated") << "\n";
  if (!c.message.empty()) os << "message: " << c.message << "\n";
}

struct Output {
  json inputs = json::object();
  json outputs = json::object();
  std::ostringstream text;
  std::string status = "ok";
  int exit_code = 0;
};

json system_inputs(const ProblemFile& pf, const System& sys) {
  return json{{"field", pf.field.to_string()},
              {"series_vars", pf.series_vars},
              {"unknowns", pf.unknowns},
              {"equations", equation_texts(sys)}};
}

Ideal ideal_from(const ProblemFile& pf, std::string_view key, const RingPtr& ring,
                 bool equations_default) {
  if (const auto* e = pf.find(key)) return Ideal(ring, poly_list(*e, ring));
  if (equations_default) return Ideal(ring, equations_of(pf, ring));
  return Ideal(ring, {});
}

std::string basis_text(const std::vector<Polynomial>& gens) {
  std::string out;
  for (std::size_t i = 0; i < gens.size(); ++i) out += (i ? ", " : "") + gens[i].to_string();
  return out.empty() ? "0" : out;
}

// ---- commands -----------------------------------------------------------

void cmd_elkik(const ProblemFile& pf, Output& out) {
  const RingPtr ring = problem_ring(pf);
  const std::vector<Polynomial> eqs = equations_of(pf, ring);
  if (eqs.empty()) throw Error(ErrorKind::configuration, "no equations given");
  if (pf.unknowns.empty()) throw Error(ErrorKind::configuration, "no unknowns declared");
  std::vector<VarId> ids;
  for (const auto& u : pf.unknowns) ids.push_back(ring->index(u));
  out.inputs = json{{"field", pf.field.to_string()},
                    {"series_vars", pf.series_vars},
                    {"unknowns", pf.unknowns},
                    {"equations", poly_list_json(eqs)}};

  const ElkikResult h = elkik(eqs, ids);
  out.outputs["generators"] = poly_list_json(h.ideal.generators());
  json comps = json::array();
  for (const auto& c : h.components) {
    comps.push_back(json{{"equations", one_based(c.equations)},
                         {"minors", c.minors.size()},
                         {"colon", poly_list_json(c.colon.generators())}});
  }
  out.outputs["components"] = comps;
  const Ideal hb = groebner(h.ideal);
  out.outputs["basis"] = poly_list_json(hb.basis());
  out.text << "Elkik ideal: " << h.ideal.generators().size() << " generator"
           << (h.ideal.generators().size() == 1 ? "" : "s") << ", reduced basis:\n";
  for (const auto& g : hb.basis()) out.text << "  " << g.to_string() << "\n";

  const Ideal sum = h.ideal + Ideal(ring, eqs);
  if (const auto* e = pf.find("compare")) {
    const Ideal other = Ideal(ring, poly_list(*e, ring)) + Ideal(ring, eqs);
    const bool eq = ideals_equal(sum, other);
    out.outputs["compare"] = json{{"ideal", poly_list_json(poly_list(*e, ring))}, {"equal_mod_equations", eq}};
    out.text << "H + I equals (" << e->value << ") + I: " << (eq ? "yes" : "no") << "\n";
  }
  json members = json::array();
  for (const auto* e : pf.all("member")) {
    for (const auto& p : poly_list(*e, ring)) {
      const bool in = contains(sum, p);
      members.push_back(json{{"polynomial", p.to_string()}, {"member", in}});
      out.text << p.to_string() << " in H + I: " << (in ? "yes" : "no") << "\n";
    }
  }
  if (!members.empty()) out.outputs["membership"] = members;
  json radical = json::array();
  for (const auto* e : pf.all("radical_member")) {
    for (const auto& p : poly_list(*e, ring)) {
      const bool in = radical_member(p, sum);
      radical.push_back(json{{"polynomial", p.to_string()}, {"member", in}});
      out.text << p.to_string() << " in rad(H + I): " << (in ? "yes" : "no") << "\n";
    }
  }
  if (!radical.empty()) out.outputs["radical_membership"] = radical;
}

MonomialOrder order_of(const ProblemFile& pf, const RingPtr& ring) {
  const ProblemEntry* e = pf.find("order");
  if (!e || e->value == "degrevlex") return MonomialOrder::degrevlex();
  if (e->value == "lex") return MonomialOrder::lex();
  if (e->value.rfind("block", 0) == 0) {
    ProblemEntry k{e->key, std::string(trim(std::string_view(e->value).substr(5))), e->line,
                   e->column + 5};
    const unsigned split = parse_uint(k);
    if (split == 0 || split >= ring->size()) {
      throw ParseError("block split must lie strictly inside the variable list", e->line, e->column);
    }
    return MonomialOrder::block(static_cast<VarId>(split));
  }
  throw ParseError("unknown monomial order '" + e->value + "'", e->line, e->column);
}

void compare_modulo(const ProblemFile& pf, const RingPtr& ring, const Ideal& result, Output& out) {
  const ProblemEntry* e = pf.find("compare");
  if (!e) return;
  const Ideal mod = ideal_from(pf, "modulo", ring, false);
  const bool eq = ideals_equal(result + mod, Ideal(ring, poly_list(*e, ring)) + mod);
  out.outputs["compare"] = json{{"ideal", poly_list_json(poly_list(*e, ring))},
                                {"modulo", poly_list_json(mod.generators())},
                                {"equal", eq}};
  out.text << "equals (" << e->value << ")" << (mod.generators().empty() ? "" : " modulo (" + basis_text(mod.generators()) + ")")
           << ": " << (eq ? "yes" : "no") << "\n";
}

void cmd_colon(const ProblemFile& pf, Output& out) {
  const RingPtr ring = problem_ring(pf);
  const Ideal j = ideal_from(pf, "ideal", ring, true);
  const Ideal i = ideal_from(pf, "by", ring, true);
  out.inputs = json{{"field", pf.field.to_string()},
                    {"variables", ring->names()},
                    {"ideal", poly_list_json(j.generators())},
                    {"by", poly_list_json(i.generators())}};
  const Ideal q = groebner(colon(j, i));
  out.outputs["basis"] = poly_list_json(q.basis());
  out.text << "(" << basis_text(j.generators()) << ") : (" << basis_text(i.generators()) << ") = ("
           << basis_text(q.basis()) << ")\n";
  compare_modulo(pf, ring, q, out);
}

void cmd_groebner(const ProblemFile& pf, Output& out) {
  const RingPtr ring = problem_ring(pf);
  const Ideal j = ideal_from(pf, "ideal", ring, true);
  const MonomialOrder order = order_of(pf, ring);
  out.inputs = json{{"field", pf.field.to_string()},
                    {"variables", ring->names()},
                    {"ideal", poly_list_json(j.generators())},
                    {"order", order.to_string()}};
  const Ideal g = groebner(j, order);
  out.outputs["basis"] = poly_list_json(g.basis());
  out.outputs["unit_ideal"] = is_unit_ideal(g);
  out.text << "reduced basis (" << order.to_string() << "): " << g.basis().size() << " elements\n";
  for (const auto& p : g.basis()) out.text << "  " << p.to_string() << "\n";
  compare_modulo(pf, ring, g, out);
}

RingPtr two_var_base(const ProblemFile& pf) {
  if (pf.series_vars.size() != 2) {
    throw Error(ErrorKind::configuration, "this command needs two series_vars");
  }
  return make_ring(pf.field, pf.series_vars);
}

void cmd_prepare(const ProblemFile& pf, const Settings& st, Output& out) {
  const RingPtr base = two_var_base(pf);
  const ProblemEntry& e = require(pf, "series", "the series to prepare");
  TruncatedSeries u = parse_series(e.value, base, e.line, e.column);
  const unsigned n = st.precision_set ? st.precision : u.precision();
  out.inputs = json{{"field", pf.field.to_string()}, {"series", series_json(u)}, {"precision", n}};
  if (n < u.precision()) u = u.truncated(n);
  LinearChange change = LinearChange::identity(pf.field);
  if (!(y_regular_order(u) == u.order())) {
    Regularized reg = regularize(u, st.seed);
    change = reg.change;
    u = reg.series;
  }
  const Preparation p = prepare(u, n);
  const unsigned r = p.dist.r();
  const unsigned check = n - r;
  const TruncatedSeries back = p.unit.truncated(check) * p.dist.as_series(check);
  const bool ok = back == u.truncated(check);
  out.outputs = json{{"change", change.to_string()},
                     {"r", r},
                     {"unit", series_json(p.unit)},
                     {"distinguished", p.dist.to_string()},
                     {"coefficients", series_list_json(p.dist.a)},
                     {"recomposes", ok},
                     {"recomposition_precision", check}};
  if (!change.is_identity()) out.text << "change: " << change.to_string() << "\n";
  out.text << "unit: " << p.unit.to_string() << "\n";
  out.text << "distinguished: " << p.dist.to_string() << "\n";
  out.text << "unit * distinguished = input mod m^" << check << ": " << (ok ? "yes" : "no") << "\n";
  if (!ok) {
    out.status = "recomposition-failed";
    out.exit_code = 1;
  }
}

void cmd_divide(const ProblemFile& pf, const Settings& st, Output& out) {
  const RingPtr base = two_var_base(pf);
  const ProblemEntry& e = require(pf, "series", "the dividend");
  const ProblemEntry& d = require(pf, "divisor", "the distinguished divisor");
  const TruncatedSeries g = parse_series(e.value, base, e.line, e.column);
  const DistinguishedPolynomial a = parse_distinguished(d.value, base, d.line, d.column);
  const unsigned n = st.precision_set ? std::min(st.precision, g.precision()) : g.precision();
  out.inputs = json{{"field", pf.field.to_string()},
                    {"series", series_json(g)},
                    {"divisor", a.to_string()},
                    {"precision", n}};
  const WDivision w = w_divide(g, a, n);
  // Recompose to the precision the quotient and remainders certify.
  TruncatedSeries rec = certified_product(a.as_series(n), w.quotient);
  for (unsigned j = 0; j < w.remainder.size(); ++j) {
    const TruncatedSeries rj = w.remainder[j].widened(base);
    rec += rj.extended(rj.precision() + j).shifted(0, j);
  }
  const unsigned check = std::min(rec.precision(), g.precision());
  const bool ok = rec.truncated(check) == g.truncated(check);
  out.outputs = json{{"quotient", series_json(w.quotient)},
                     {"remainder", series_list_json(w.remainder)},
                     {"recomposes", ok},
                     {"recomposition_precision", check}};
  out.text << "quotient: " << w.quotient.to_string() << "\n";
  for (unsigned j = 0; j < w.remainder.size(); ++j) {
    out.text << "remainder y^" << j << ": " << w.remainder[j].to_string() << "\n";
  }
  out.text << "divisor * quotient + remainder = input mod m^" << check << ": " << (ok ? "yes" : "no")
           << "\n";
  if (!ok) {
    out.status = "recomposition-failed";
    out.exit_code = 1;
  }
}

json approx_inputs(const ProblemFile& pf, const System& sys, const SeriesVector& z, const Settings& st) {
  json in = system_inputs(pf, sys);
  in["approx"] = series_list_json(z);
  in["precision"] = st.precision;
  in["target_order"] = st.target;
  return in;
}

void cmd_refine(const ProblemFile& pf, const Settings& st, Output& out) {
  const System sys = problem_system(pf);
  const SeriesVector z = series_list(require(pf, "approx", "the approximate solution"), sys);
  out.inputs = approx_inputs(pf, sys, z, st);
  std::vector<std::size_t> rows, cols;
  if (const auto* e = pf.find("rows")) {
    for (unsigned i : uint_list(*e)) {
      if (i == 0 || i > sys.equations.size()) throw ParseError("equation index out of range", e->line, e->column);
      rows.push_back(i - 1);
    }
    const ProblemEntry& ce = require(pf, "cols", "unknowns of the Newton block");
    for (const auto& name : name_list(ce)) {
      auto it = std::find(sys.unknowns.begin(), sys.unknowns.end(), name);
      if (it == sys.unknowns.end()) throw ParseError("'" + name + "' is not an unknown", ce.line, ce.column);
      cols.push_back(static_cast<std::size_t>(it - sys.unknowns.begin()));
    }
  } else {
    const ElkikResult h = elkik(sys.equations, sys.unknown_ids());
    const OrderValue ho = elkik_order(h, sys, z);
    if (!ho.is_finite()) {
      throw Error(ErrorKind::hypothesis, "H(zbar) vanishes to precision; give rows: and cols:");
    }
    const MinorSelection sel = select_minor(sys, h, z, ho.value() + 1);
    rows = sel.equations;
    cols = sel.columns;
    out.outputs["selection"] = selection_json(sys, sel);
  }
  out.inputs["rows"] = one_based(rows);
  json cn = json::array();
  for (std::size_t j : cols) cn.push_back(sys.unknowns[j]);
  out.inputs["cols"] = cn;
  const RefinementCertificate c = tougeron_refine(sys, rows, cols, z, st.target, st.precision);
  out.outputs["certificate"] = certificate_json(c);
  out.text << "block: equations " << indices_of(rows) << " / unknowns " << names_of(sys, cols) << "\n";
  text_certificate(out.text, sys, c);
  out.status = to_string(c.status);
  out.exit_code = c.ok() ? 0 : 2;
}

SolveConfig solve_config(const Settings& st) {
  SolveConfig cfg;
  cfg.a_fn = st.a_fn;
  cfg.precision = st.precision;
  cfg.strategy = st.strategy;
  cfg.seed = st.seed;
  cfg.jet = st.jet;
  return cfg;
}

void cmd_solve(const ProblemFile& pf, const Settings& st, Output& out) {
  const System sys = problem_system(pf);
  const SeriesVector z = series_list(require(pf, "approx", "the approximate solution"), sys);
  out.inputs = approx_inputs(pf, sys, z, st);
  out.inputs["strategy"] = to_string(st.strategy);
  out.inputs["seed"] = st.seed;
  out.inputs["a_fn"] = st.a_fn.to_string();
  const SolveReport rep = approximate_solve(sys, z, st.target, solve_config(st));
  json o{{"s", rep.s},
         {"h_order", order_json(rep.h_order)},
         {"residual_order", order_json(rep.residual_order)},
         {"gamma", rep.gamma.get_str()},
         {"gamma_met", rep.gamma_met}};
  if (rep.selection) o["selection"] = selection_json(sys, *rep.selection);
  if (rep.reduction) {
    const OneVarSystem& ov = *rep.reduction;
    o["reduction"] = json{{"r", ov.r},
                          {"change", ov.change.to_string()},
                          {"distinguished", ov.dist.to_string()},
                          {"unknowns", ov.system.unknowns},
                          {"equations", equation_texts(ov.system)},
                          {"deg_g", ov.deg_g},
                          {"deg_f", ov.deg_f},
                          {"degree_bounds_ok", ov.degree_bounds_ok},
                          {"g_order", order_json(ov.g_order)},
                          {"f_order", order_json(ov.f_order)}};
  }
  o["certificate"] = certificate_json(rep.certificate);
  out.outputs = o;
  out.text << "ord f(zbar) = " << rep.residual_order.to_string() << ", ord H(zbar) = "
           << rep.h_order.to_string() << ", s = " << rep.s << "\n";
  out.text << "gamma = " << rep.gamma.get_str() << " (" << (rep.gamma_met ? "met" : "not met") << ")\n";
  if (rep.selection) {
    const MinorSelection& sel = *rep.selection;
    out.text << "selection: E = {" << indices_of(sel.equations) << "}, columns = {"
             << names_of(sys, sel.columns) << "}, delta = " << sel.delta.to_string()
             << ", k_E = " << sel.k_e.to_string() << ", r = " << sel.r() << "\n";
  }
  if (rep.reduction) {
    out.text << "reduction: r = " << rep.reduction->r << ", " << rep.reduction->system.unknowns.size()
             << " unknowns, " << rep.reduction->system.equations.size() << " equations, degree bounds "
             << (rep.reduction->degree_bounds_ok ? "ok" : "exceeded") << "\n";
  }
  text_certificate(out.text, sys, rep.certificate);
  out.status = to_string(rep.certificate.status);
}

void cmd_bounds(const ProblemFile& pf, const Settings& st, Output& out) {
  BoundInputs in;
  std::optional<System> sys;
  if (!pf.unknowns.empty() && !pf.series_vars.empty() && (pf.find("equation") || pf.find("equations"))) {
    sys = problem_system(pf);
    in.m = sys->unknowns.size();
    in.d = sys->degree_bound();
    in.n = sys->equations.size();
    if (const auto* e = pf.find("approx")) {
      const SeriesVector z = series_list(*e, *sys);
      const OrderValue ho = elkik_order(elkik(sys->equations, sys->unknown_ids()), *sys, z);
      if (ho.is_finite()) in.s = ho.value() + 1;
    }
  }
  in.m = uint_or(pf, "m", static_cast<unsigned>(in.m));
  in.d = uint_or(pf, "d", static_cast<unsigned>(in.d));
  in.n = uint_or(pf, "n", static_cast<unsigned>(in.n));
  in.s = uint_or(pf, "s", static_cast<unsigned>(in.s));
  in.c = pf.find("c") ? uint_or(pf, "c", 0) : (pf.find("target_order") ? st.target : 0);
  out.inputs = json{{"m", in.m}, {"d", in.d}, {"n", in.n}, {"s", in.s}, {"c", in.c},
                    {"a_fn", st.a_fn.to_string()}, {"K", st.constants.K.get_str()},
                    {"K1", st.constants.K1.get_str()}};
  const BoundReport b = compute_bounds(in, st.a_fn, st.constants);
  out.outputs = json{{"elkik_degree_bound", b.elkik_degree_bound.get_str()},
                     {"colon_degree_bound", b.colon_degree_bound.get_str()},
                     {"power_exponent", b.power_exponent.get_str()},
                     {"gamma", b.gamma.get_str()},
                     {"beta_estimate", b.beta_estimate.get_str()},
                     {"doubly_exponential", b.doubly_exponential.get_str()}};
  out.text << "m = " << in.m << ", d = " << in.d << ", n = " << in.n << ", s = " << in.s
           << ", c = " << in.c << ", a = " << st.a_fn.to_string() << "\n";
  out.text << "elkik degree bound e  " << b.elkik_degree_bound.get_str() << "\n";
  out.text << "colon degree bound    " << b.colon_degree_bound.get_str() << "\n";
  out.text << "power exponent        " << b.power_exponent.get_str() << "\n";
  out.text << "gamma                 " << b.gamma.get_str() << "\n";
  out.text << "beta estimate         " << b.beta_estimate.get_str() << "\n";
  out.text << "K^(K^c)               " << b.doubly_exponential.get_str() << "\n";
  if (const auto* e = pf.find("k")) {
    const unsigned k = parse_uint(*e);
    const mpz_class iso = isolated_singularity_bound(in.d, in.m, k, std::max<unsigned long>(in.c, 1), st.constants.K1);
    out.outputs["isolated_singularity_bound"] = iso.get_str();
    out.inputs["k"] = k;
    out.text << "isolated singularity  " << iso.get_str() << "\n";
  }
}

std::vector<ProbeInput> probe_family(const ProblemFile& pf, const System& sys) {
  std::vector<ProbeInput> fam;
  for (const auto* e : pf.all("family")) {
    fam.push_back({"#" + std::to_string(fam.size() + 1), series_list(*e, sys)});
  }
  if (const auto* t = pf.find("family_template")) {
    const ProblemEntry& r = require(pf, "family_range", "index range for the template");
    // `t = 8..14` or `t = 8..14 step 2`
    const std::string& v = r.value;
    const auto eq = v.find('=');
    const auto dots = v.find("..");
    if (eq == std::string::npos || dots == std::string::npos || dots < eq) {
      throw ParseError("expected 'name = lo..hi [step k]'", r.line, r.column);
    }
    const std::string name(trim(std::string_view(v).substr(0, eq)));
    if (!is_identifier(name)) throw ParseError("bad index name", r.line, r.column);
    std::string rest(v.substr(dots + 2));
    unsigned step = 1;
    if (const auto sp = rest.find("step"); sp != std::string::npos) {
      step = parse_uint({r.key, std::string(trim(std::string_view(rest).substr(sp + 4))), r.line,
                         r.column + static_cast<int>(dots + 2 + sp + 4)});
      rest = rest.substr(0, sp);
    }
    const unsigned lo = parse_uint({r.key, std::string(trim(std::string_view(v).substr(eq + 1, dots - eq - 1))),
                                    r.line, r.column + static_cast<int>(eq + 1)});
    const unsigned hi = parse_uint({r.key, std::string(trim(rest)), r.line, r.column + static_cast<int>(dots + 2)});
    if (step == 0 || hi < lo || (hi - lo) / step > 1000) {
      throw ParseError("empty or oversized index range", r.line, r.column);
    }
    const std::string hole = "{" + name + "}";
    if (t->value.find(hole) == std::string::npos) {
      throw ParseError("template does not mention " + hole, t->line, t->column);
    }
    for (unsigned k = lo; k <= hi; k += step) {
      std::string text = t->value;
      for (std::size_t at; (at = text.find(hole)) != std::string::npos;) text.replace(at, hole.size(), std::to_string(k));
      ProblemEntry inst{t->key, text, t->line, t->column};
      fam.push_back({name + "=" + std::to_string(k), series_list(inst, sys)});
    }
  }
  if (fam.empty()) throw Error(ErrorKind::configuration, "probe needs family: lines or a family_template:");
  return fam;
}

void cmd_probe(const ProblemFile& pf, const Settings& st, Output& out) {
  const System sys = problem_system(pf);
  const std::vector<ProbeInput> fam = probe_family(pf, sys);
  std::vector<unsigned> targets;
  if (const auto* e = pf.find("targets")) targets = uint_list(*e);
  if (targets.empty()) targets.push_back(st.target);
  out.inputs = system_inputs(pf, sys);
  json members = json::array();
  for (const auto& f : fam) members.push_back(json{{"label", f.label}, {"zbar", series_list_json(f.zbar)}});
  out.inputs["family"] = members;
  out.inputs["targets"] = targets;
  out.inputs["precision"] = st.precision;
  out.inputs["a_fn"] = st.a_fn.to_string();

  const ProbeReport rep = artin_probe(sys, fam, targets, solve_config(st), st.constants);
  json rows = json::array();
  auto opt = [](const std::optional<mpz_class>& v) { return v ? json(v->get_str()) : json(nullptr); };
  out.text << std::left << std::setw(10) << "label" << std::setw(4) << "c" << std::setw(8) << "ord f"
           << std::setw(8) << "ord H" << std::setw(4) << "s" << std::setw(8) << "gamma" << std::setw(6)
           << "met" << std::setw(11) << "certified" << std::setw(10) << "achieved" << std::setw(13)
           << "route" << "defect\n";
  for (const auto& r : rep.rows) {
    rows.push_back(json{{"label", r.label},
                        {"c", r.c},
                        {"residual_order", order_json(r.residual_order)},
                        {"h_order", order_json(r.h_order)},
                        {"s", r.s},
                        {"gamma", r.gamma.get_str()},
                        {"gamma_met", r.gamma_met},
                        {"certified", r.certified},
                        {"route", r.route},
                        {"achieved", order_json(r.achieved)},
                        {"failure", r.failure},
                        {"defect", r.defect},
                        {"threshold", opt(r.threshold)},
                        {"threshold_met", r.threshold_met},
                        {"rhs", opt(r.rhs)}});
    out.text << std::left << std::setw(10) << r.label << std::setw(4) << r.c << std::setw(8)
             << r.residual_order.to_string() << std::setw(8) << r.h_order.to_string() << std::setw(4)
             << r.s << std::setw(8) << r.gamma.get_str() << std::setw(6) << (r.gamma_met ? "yes" : "no")
             << std::setw(11) << (r.certified ? "yes" : "no") << std::setw(10)
             << (r.certified ? r.achieved.to_string() : "-") << std::setw(13)
             << (r.route.empty() ? "-" : r.route) << (r.defect ? "DEFECT" : "") << "\n";
  }
  out.outputs = json{{"rows", rows},
                     {"defects", rep.defects()},
                     {"constants",
                      json{{"K", st.constants.K.get_str()},
                           {"K1", st.constants.K1.get_str()},
                           {"Kprime", st.constants.Kprime.get_str()},
                           {"K2", st.constants.K2.get_str()},
                           {"K3", st.constants.K3.get_str()},
                           {"C", st.constants.C.get_str()}}}};
  out.text << "defects: " << rep.defects() << "\n";
  if (rep.defects() > 0) {
    out.status = "defects";
    out.exit_code = 1;
  }
}

}  // namespace

const ProblemEntry* ProblemFile::find(std::string_view key) const {
  for (const auto& e : entries) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

std::vector<const ProblemEntry*> ProblemFile::all(std::string_view key) const {
  std::vector<const ProblemEntry*> out;
  for (const auto& e : entries) {
    if (e.key == key) out.push_back(&e);
  }
  return out;
}

ProblemFile parse_problem(std::string_view text, const std::string& default_field) {
  ProblemFile pf;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::size_t lead = 0;
    if (trim(line, &lead).empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError("expected 'key: value'", lineno, static_cast<int>(lead) + 1);
    }
    const std::string key(trim(line.substr(0, colon)));
    if (!known_keys().count(key)) {
      throw ParseError("unknown key '" + key + "'", lineno, static_cast<int>(lead) + 1);
    }
    if (!repeatable(key) && pf.find(key)) {
      throw ParseError("duplicate key '" + key + "'", lineno, static_cast<int>(lead) + 1);
    }
    std::size_t vlead = 0;
    const std::string_view value = trim(line.substr(colon + 1), &vlead);
    pf.entries.push_back({key, std::string(value), lineno, static_cast<int>(colon + 1 + vlead) + 1});
  }

  auto field_from = [](const std::string& spec, int line, int column) {
    try {
      return Field::parse(spec);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), line, column);
    }
  };
  if (const auto* e = pf.find("field")) {
    pf.field = field_from(e->value, e->line, e->column);
  } else if (!default_field.empty()) {
    pf.field = field_from(default_field, 0, 0);
  }
  if (const auto* e = pf.find("series_vars")) pf.series_vars = name_list(*e);
  if (const auto* e = pf.find("unknowns")) pf.unknowns = name_list(*e);
  if (pf.series_vars.size() > 2) {
    const auto* e = pf.find("series_vars");
    throw ParseError("at most two series variables", e->line, e->column);
  }
  return pf;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"elkik",  "colon", "groebner", "prepare", "divide",
                                                 "refine", "solve", "bounds",   "probe"};
  return names;
}

RunReport run_command(const std::string& command, const ProblemFile& problem,
                      const RunOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport rep;
  rep.command = command;
  Output out;
  json error = nullptr;
  try {
    const auto& names = command_names();
    if (std::find(names.begin(), names.end(), command) == names.end()) {
      throw Error(ErrorKind::configuration, "unknown command '" + command + "'");
    }
    const Settings st = settings_of(problem, options);
    if (command == "elkik") cmd_elkik(problem, out);
    else if (command == "colon") cmd_colon(problem, out);
    else if (command == "groebner") cmd_groebner(problem, out);
    else if (command == "prepare") cmd_prepare(problem, st, out);
    else if (command == "divide") cmd_divide(problem, st, out);
    else if (command == "refine") cmd_refine(problem, st, out);
    else if (command == "solve") cmd_solve(problem, st, out);
    else if (command == "bounds") cmd_bounds(problem, st, out);
    else cmd_probe(problem, st, out);
  } catch (const ParseError& e) {
    out.status = to_string(e.kind());
    out.exit_code = exit_code(e.kind());
    error = json{{"kind", to_string(e.kind())}, {"message", e.what()}, {"line", e.line()}, {"column", e.column()}};
  } catch (const Error& e) {
    out.status = to_string(e.kind());
    out.exit_code = exit_code(e.kind());
    error = json{{"kind", to_string(e.kind())}, {"message", e.what()}};
  } catch (const std::exception& e) {
    out.status = "internal-error";
    out.exit_code = 1;
    error = json{{"kind", "internal-error"}, {"message", e.what()}};
  }
  json j{{"command", command}, {"status", out.status}, {"exit_code", out.exit_code}, {"inputs", out.inputs}};
  if (error.is_null()) {
    j["outputs"] = out.outputs;
  } else {
    j["error"] = error;
    out.text << "error (" << out.status << "): " << error["message"].get<std::string>() << "\n";
  }
  rep.exit_code = out.exit_code;
  rep.status = out.status;
  if (!error.is_null()) {
    rep.error = error["message"].get<std::string>();
    if (error.contains("line")) {
      rep.line = error["line"].get<int>();
      rep.column = error["column"].get<int>();
    }
  }
  rep.json = j.dump(2) + "\n";
  rep.text = out.text.str();
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

RunReport run_command_text(const std::string& command, std::string_view problem_text,
                           const std::string& default_field, const RunOptions& options) {
  ProblemFile pf;
  try {
    pf = parse_problem(problem_text, default_field);
  } catch (const ParseError& e) {
    RunReport rep;
    rep.command = command;
    rep.status = to_string(e.kind());
    rep.exit_code = exit_code(e.kind());
    json j{{"command", command},
           {"status", rep.status},
           {"exit_code", rep.exit_code},
           {"inputs", json::object()},
           {"error", json{{"kind", rep.status}, {"message", e.what()}, {"line", e.line()}, {"column", e.column()}}}};
    rep.json = j.dump(2) + "\n";
    rep.text = std::string("error (") + rep.status + "): " + e.what() + "\n";
    rep.error = e.what();
    rep.line = e.line();
    rep.column = e.column();
    return rep;
  }
  return run_command(command, pf, options);
}

namespace {

std::string check_series_objects(const json& node, Field field) {
  if (node.is_object()) {
    if (node.contains("text") && node.contains("vars") && node.contains("terms") && node.contains("precision")) {
      const RingPtr base = make_ring(field, node["vars"].get<std::vector<std::string>>());
      const TruncatedSeries s = parse_series(node["text"].get<std::string>(), base);
      if (!(series_json(s) == node)) return "series '" + node["text"].get<std::string>() + "' does not round-trip";
      return "";
    }
    for (const auto& [k, v] : node.items()) {
      if (auto why = check_series_objects(v, field); !why.empty()) return why;
    }
  } else if (node.is_array()) {
    for (const auto& v : node) {
      if (auto why = check_series_objects(v, field); !why.empty()) return why;
    }
  }
  return "";
}

}  // namespace

std::string revalidate_report(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    return std::string("not JSON: ") + e.what();
  }
  for (const char* k : {"command", "status", "exit_code", "inputs"}) {
    if (!j.contains(k)) return std::string("missing field '") + k + "'";
  }
  try {
    const json& in = j["inputs"];
    const Field field = in.contains("field") ? Field::parse(in["field"].get<std::string>()) : Field::rationals();
    if (auto why = check_series_objects(j, field); !why.empty()) return why;
    if (!j.contains("outputs") || !j["outputs"].contains("certificate")) return "";
    const json& cert = j["outputs"]["certificate"];
    if (cert["status"] != "certified") return "";
    std::vector<std::string> eqs = in["equations"].get<std::vector<std::string>>();
    const System sys = make_system(field, in["series_vars"].get<std::vector<std::string>>(),
                                   in["unknowns"].get<std::vector<std::string>>(), eqs);
    SeriesVector refined, approx;
    for (const auto& s : cert["refined"]) refined.push_back(parse_series(s["text"].get<std::string>(), sys.base));
    for (const auto& s : in["approx"]) approx.push_back(parse_series(s["text"].get<std::string>(), sys.base));
    const unsigned n = cert["precision"].get<unsigned>();
    const unsigned c = cert["c"].get<unsigned>();
    if (!ideal_order(sys.equations, refined, sys.unknowns).at_least_k(n)) {
      return "certified solution does not make the equations vanish mod m^" + std::to_string(n);
    }
    SeriesVector a;
    for (const auto& s : approx) a.push_back(s.precision() >= n ? s.truncated(n) : s.extended(n));
    for (std::size_t i = 0; i < refined.size(); ++i) {
      if (!(refined[i] - a[i]).order().at_least_k(c)) return "certified solution is not within m^" + std::to_string(c);
    }
  } catch (const std::exception& e) {
    return std::string("revalidation failed: ") + e.what();
  }
  return "";
}

}  // namespace artin
