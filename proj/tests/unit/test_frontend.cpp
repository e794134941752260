#include "doctest.h"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "artin/errors.hpp"
#include "artin/frontend.hpp"

using namespace artin;
using json = nlohmann::json;

namespace {

std::string data(const std::string& name) {
  std::ifstream in(std::string(ARTIN_TEST_DATA) + "/" + name, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json run(const std::string& command, const std::string& file, const RunOptions& opt = {}) {
  const RunReport rep = run_command_text(command, data(file), "", opt);
  CHECK(revalidate_report(rep.json) == "");
  return json::parse(rep.json);
}

}  // namespace

TEST_CASE("problem files parse line by line") {
  const ProblemFile pf = parse_problem(
      "# header\n"
      "field: GF(7)   # trailing comment\n"
      "series_vars: x, y\n"
      "unknowns: z1, z2\n"
      "equation: z1 - x\n"
      "equation: z2 - y\n");
  CHECK(pf.field == Field::prime(7));
  CHECK(pf.series_vars == std::vector<std::string>{"x", "y"});
  CHECK(pf.unknowns == std::vector<std::string>{"z1", "z2"});
  CHECK(pf.all("equation").size() == 2);
  CHECK(pf.find("equation")->line == 5);
  CHECK(pf.find("equation")->column == 11);

  CHECK(parse_problem("unknowns: z\n").field == Field::rationals());
  CHECK(parse_problem("unknowns: z\n", "GF(5)").field == Field::prime(5));
  CHECK(parse_problem("field: Q\nunknowns: z\n", "GF(5)").field == Field::rationals());
}

TEST_CASE("problem file errors carry positions") {
  auto where = [](const std::string& text) {
    try {
      parse_problem(text);
    } catch (const ParseError& e) {
      return std::pair{e.line(), e.column()};
    }
    return std::pair{0, 0};
  };
  CHECK(where("unknowns: z\n  colour: blue\n") == std::pair{2, 3});
  CHECK(where("unknowns: z\nunknowns: w\n") == std::pair{2, 1});
  CHECK(where("unknowns: z\nno colon here\n") == std::pair{2, 1});
  CHECK(where("unknowns: z, 2w\n") == std::pair{1, 14});
  CHECK(where("field: GF(6)\n") == std::pair{1, 8});
  CHECK(where("series_vars: x, y, w\n").first == 1);

  const RunReport bad = run_command_text("solve", data("parse_bad_poly.txt"));
  CHECK(bad.exit_code == 3);
  CHECK(bad.line == 3);
  CHECK(bad.column == 17);
  const json j = json::parse(bad.json);
  CHECK(j["error"]["kind"] == "parse-error");
  CHECK(j["error"]["line"] == 3);
  CHECK(revalidate_report(bad.json) == "");

  CHECK(run_command_text("solve", data("parse_bad_key.txt")).exit_code == 3);
  CHECK(run_command_text("frobnicate", "unknowns: z\n").exit_code == 1);
}

TEST_CASE("elkik command on the two four-variable systems") {
  const json f = run("elkik", "elkik_f.txt");
  CHECK(f["exit_code"] == 0);
  CHECK(f["outputs"]["compare"]["equal_mod_equations"] == true);
  CHECK(f["outputs"]["membership"][0]["member"] == true);
  CHECK(f["outputs"]["radical_membership"][0]["member"] == true);
  CHECK(f["outputs"]["components"].size() == 16);

  const json h = run("elkik", "elkik_h.txt");
  CHECK(h["outputs"]["compare"]["equal_mod_equations"] == true);
  CHECK(h["outputs"]["membership"][0]["polynomial"] == "z^3");
  CHECK(h["outputs"]["membership"][0]["member"] == false);
  CHECK(h["outputs"]["radical_membership"][0]["member"] == true);

  const json s = run("elkik", "elkik_smooth.txt");
  CHECK(s["outputs"]["basis"] == json::array({"1"}));
}

TEST_CASE("colon and groebner commands") {
  const json c = run("colon", "colon_f12.txt");
  CHECK(c["outputs"]["basis"] == json::array({"x"}));
  CHECK(c["outputs"]["compare"]["equal"] == true);

  const json g = run("groebner", "groebner_lex.txt");
  CHECK(g["inputs"]["order"] == "lex");
  CHECK(g["outputs"]["basis"].size() == 3);
  CHECK(g["outputs"]["unit_ideal"] == false);

  const RunReport bad = run_command_text("groebner", "unknowns: x, y\nideal: x\norder: block 5\n");
  CHECK(bad.exit_code == 3);
}

TEST_CASE("solve command certificates and failures") {
  const json ok = run("solve", "solve_square.txt");
  CHECK(ok["exit_code"] == 0);
  CHECK(ok["status"] == "certified");
  const json& cert = ok["outputs"]["certificate"];
  CHECK(cert["route"] == "direct");
  CHECK(cert["refined"][0]["text"] == "x + O(m^20)");
  CHECK(cert["distance"][0]["value"] == 4);
  CHECK(cert["delta_quotient_order"]["value"] == 3);
  CHECK(cert["contraction_ok"] == true);
  CHECK(ok["outputs"]["gamma_met"] == false);

  const json exact = run("solve", "solve_exact.txt");
  CHECK(exact["exit_code"] == 0);
  CHECK(exact["outputs"]["certificate"]["route"] == "exact");
  CHECK(exact["outputs"]["certificate"]["iterations"] == 0);

  const json low = run("solve", "solve_insufficient.txt");
  CHECK(low["exit_code"] == 2);
  CHECK(low["error"]["kind"] == "precondition-failed");
  CHECK(low["error"]["message"].get<std::string>().find("insufficient residual order") !=
        std::string::npos);

  const json hyp = run("solve", "solve_hypothesis.txt");
  CHECK(hyp["exit_code"] == 2);
  CHECK(hyp["error"]["kind"] == "hypothesis-violated");

  const json red = run("solve", "solve_reduction.txt");
  CHECK(red["exit_code"] == 0);
  CHECK(red["outputs"]["certificate"]["route"] == "reduction");
  CHECK(red["outputs"]["reduction"]["degree_bounds_ok"] == true);
  CHECK(red["outputs"]["certificate"]["delta_quotient_order"].is_null());

  RunOptions o;
  o.target_order = 5;
  CHECK(run("solve", "solve_square.txt", o)["exit_code"] == 2);

  const json r = run("refine", "refine_square.txt");
  CHECK(r["exit_code"] == 0);
  CHECK(r["outputs"]["certificate"]["trace"][0] == 5);
}

TEST_CASE("bounds, prepare and divide commands") {
  const json b = run("bounds", "bounds_small.txt");
  CHECK(b["outputs"]["elkik_degree_bound"] == "11718750003");
  CHECK(b["outputs"]["gamma"] == "128");

  const json p = run("prepare", "prepare_product.txt");
  CHECK(p["outputs"]["recomposes"] == true);
  CHECK(p["outputs"]["unit"]["text"] == "1 + x + O(m^10)");
  CHECK(p["outputs"]["distinguished"] == "y^2 + [x + O(m^11)] y + [x^2 + O(m^12)]");

  const json d = run("divide", "divide_square.txt");
  CHECK(d["outputs"]["recomposes"] == true);
  CHECK(d["outputs"]["remainder"].size() == 2);
}

TEST_CASE("probe command over the cusp family") {
  const json p = run("probe", "probe_cusp.txt");
  CHECK(p["exit_code"] == 0);
  CHECK(p["outputs"]["defects"] == 0);
  const json& rows = p["outputs"]["rows"];
  CHECK(rows.size() == 12);
  unsigned last = 0;
  for (const auto& row : rows) {
    CHECK(row["certified"] == true);
    const unsigned a = row["achieved"]["value"];
    CHECK(a >= last);
    CHECK(a >= row["c"].get<unsigned>());
    last = a;
  }
}

TEST_CASE("reports are deterministic and tampering is caught") {
  for (const char* cmd : {"solve", "probe"}) {
    const std::string file = std::string(cmd) == "solve" ? "solve_square.txt" : "probe_cusp.txt";
    CHECK(run_command_text(cmd, data(file)).json == run_command_text(cmd, data(file)).json);
  }
  json j = json::parse(run_command_text("solve", data("solve_square.txt")).json);
  j["outputs"]["certificate"]["refined"][0]["text"] = "x + x^2 + O(m^20)";
  CHECK(revalidate_report(j.dump()) != "");
  j = json::parse(run_command_text("solve", data("solve_square.txt")).json);
  j["outputs"]["certificate"]["refined"][0]["terms"][0][1] = "2";
  CHECK(revalidate_report(j.dump()) != "");
  CHECK(revalidate_report("{") != "");
}

TEST_CASE("capacity errors exit with 4") {
  std::string text = "unknowns: z\nseries_vars: x\nequations: ";
  for (int i = 0; i < 21; ++i) text += (i ? ", " : "") + std::string("z - x^") + std::to_string(i + 1);
  const RunReport rep = run_command_text("elkik", text + "\n");
  CHECK(rep.exit_code == 4);
  CHECK(json::parse(rep.json)["error"]["kind"] == "capacity-error");
}
