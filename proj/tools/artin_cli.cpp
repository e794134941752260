// Command-line driver over the C API.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "artin/artin.h"

namespace {

const char* const kCommands[][2] = {
    {"elkik", "Elkik ideal of the equations, with comparison and membership checks"},
    {"colon", "colon ideal (ideal : by)"},
    {"groebner", "reduced Groebner basis"},
    {"prepare", "Weierstrass preparation of a two-variable series"},
    {"divide", "Weierstrass division by a distinguished polynomial"},
    {"refine", "Tougeron Newton refinement of an approximate solution"},
    {"solve", "full approximation pipeline with certificate"},
    {"bounds", "effective degree and order bounds"},
    {"probe", "implication audit over a family of approximate solutions"},
};

bool read_input(const std::string& path, std::string& out) {
  if (path == "-") {
    out.assign(std::istreambuf_iterator<char>(std::cin), {});
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Effective Artin approximation over k[[x]] and k[[x,y]]"};
  app.set_version_flag("--version", std::string(artin_version()));
  app.require_subcommand(1);

  std::string file;
  bool json = false;
  long long precision = -1, target = -1, seed = -1;
  std::string strategy;

  for (const auto& [name, help] : kCommands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", file, "problem file, or - for standard input")->required();
    sub->add_option("--precision", precision, "working precision N (series mod m^N)")
        ->check(CLI::Range(1, 100000));
    sub->add_option("--target-order", target, "target order c")->check(CLI::Range(0, 100000));
    sub->add_option("--strategy", strategy, "one-variable strategy: auto, newton or jet");
    sub->add_option("--seed", seed, "seed for randomized choices")->check(CLI::NonNegativeNumber);
    sub->add_flag("--json", json, "print the JSON report instead of text");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  std::string text;
  if (!read_input(file, text)) {
    std::cerr << "artin: cannot read '" << file << "'\n";
    return ARTIN_ERROR;
  }

  std::unique_ptr<artin_session, decltype(&artin_session_free)> s(artin_session_new(),
                                                                    artin_session_free);
  if (!s) {
    std::cerr << "artin: out of memory\n";
    return ARTIN_ERROR;
  }

  auto set = [&](const char* key, const std::string& value) {
    if (artin_set_option(s.get(), key, value.c_str()) != ARTIN_OK) {
      std::cerr << "artin: " << artin_last_error(s.get()) << "\n";
      std::exit(ARTIN_ERROR);
    }
  };
  if (precision >= 0) set("precision", std::to_string(precision));
  if (target >= 0) set("target_order", std::to_string(target));
  if (seed >= 0) set("seed", std::to_string(seed));
  if (!strategy.empty()) set("strategy", strategy);

  const char* field = std::getenv("ARTIN_FIELD");
  int rc = artin_load_problem(s.get(), text.c_str(), field);
  if (rc == ARTIN_OK) rc = artin_run(s.get(), command.c_str());

  if (json) {
    std::cout << artin_report_json(s.get());
  } else {
    std::cout << artin_report_text(s.get());
  }
  // The text report already names the error; JSON output keeps stdout machine-readable.
  if (json && rc != ARTIN_OK && *artin_last_error(s.get())) {
    std::cerr << "artin: " << file << ": " << artin_last_error(s.get()) << "\n";
  }
  return rc;
}
