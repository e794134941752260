#include "artin/artin.h"

#include <charconv>
#include <optional>
#include <string>

#include "artin/errors.hpp"
#include "artin/frontend.hpp"

struct artin_session {
  std::optional<artin::ProblemFile> problem;
  artin::RunOptions options;
  artin::RunReport report;
  std::string error;
  int line = 0;
  int column = 0;

  void clear_error() {
    error.clear();
    line = column = 0;
  }
  int fail(int code, std::string message, int l = 0, int c = 0) {
    error = std::move(message);
    line = l;
    column = c;
    return code;
  }
};

namespace {

std::optional<unsigned long long> to_uint(const char* v) {
  if (!v) return std::nullopt;
  const std::string_view s(v);
  unsigned long long out = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return out;
}

}  // namespace

extern "C" {

const char* artin_version(void) { return "1.0.0"; }

artin_session* artin_session_new(void) {
  try {
    return new artin_session();
  } catch (...) {
    return nullptr;
  }
}

void artin_session_free(artin_session* s) { delete s; }

int artin_load_problem(artin_session* s, const char* text, const char* default_field) {
  if (!s) return ARTIN_ERROR;
  s->clear_error();
  if (!text) return s->fail(ARTIN_ERROR, "null problem text");
  try {
    s->problem = artin::parse_problem(text, default_field ? default_field : "");
    return ARTIN_OK;
  } catch (const artin::ParseError& e) {
    s->problem.reset();
    // Keep a report so callers can print parse failures like any other.
    s->report = artin::run_command_text("load", text, default_field ? default_field : "");
    return s->fail(ARTIN_PARSE_ERROR, e.what(), e.line(), e.column());
  } catch (const artin::Error& e) {
    s->problem.reset();
    return s->fail(artin::exit_code(e.kind()), e.what());
  } catch (const std::exception& e) {
    s->problem.reset();
    return s->fail(ARTIN_ERROR, e.what());
  }
}

int artin_set_option(artin_session* s, const char* key, const char* value) {
  if (!s) return ARTIN_ERROR;
  s->clear_error();
  if (!key || !value) return s->fail(ARTIN_ERROR, "null option");
  const std::string k(key);
  if (k == "strategy") {
    try {
      s->options.strategy = artin::parse_strategy(value);
      return ARTIN_OK;
    } catch (const std::exception& e) {
      return s->fail(ARTIN_ERROR, e.what());
    }
  }
  const auto v = to_uint(value);
  if (!v || *v > 1'000'000'000ULL) {
    return s->fail(ARTIN_ERROR, "option '" + k + "' expects a nonnegative integer");
  }
  if (k == "precision") {
    s->options.precision = static_cast<unsigned>(*v);
  } else if (k == "target_order") {
    s->options.target_order = static_cast<unsigned>(*v);
  } else if (k == "seed") {
    s->options.seed = *v;
  } else {
    return s->fail(ARTIN_ERROR, "unknown option '" + k + "'");
  }
  return ARTIN_OK;
}

int artin_run(artin_session* s, const char* command) {
  if (!s) return ARTIN_ERROR;
  s->clear_error();
  if (!command) return s->fail(ARTIN_ERROR, "null command");
  if (!s->problem) return s->fail(ARTIN_ERROR, "no problem loaded");
  try {
    s->report = artin::run_command(command, *s->problem, s->options);
  } catch (const std::exception& e) {
    return s->fail(ARTIN_ERROR, e.what());
  }
  if (s->report.exit_code != 0) {
    s->fail(s->report.exit_code, s->report.error.empty() ? s->report.status : s->report.error,
            s->report.line, s->report.column);
  }
  return s->report.exit_code;
}

const char* artin_report_json(const artin_session* s) { return s ? s->report.json.c_str() : ""; }
const char* artin_report_text(const artin_session* s) { return s ? s->report.text.c_str() : ""; }
const char* artin_report_status(const artin_session* s) { return s ? s->report.status.c_str() : ""; }
double artin_report_seconds(const artin_session* s) { return s ? s->report.seconds : 0.0; }

const char* artin_last_error(const artin_session* s) { return s ? s->error.c_str() : "null session"; }
int artin_error_line(const artin_session* s) { return s ? s->line : 0; }
int artin_error_column(const artin_session* s) { return s ? s->column : 0; }

int artin_revalidate(artin_session* s, const char* json) {
  if (!s) return ARTIN_ERROR;
  s->clear_error();
  if (!json) return s->fail(ARTIN_ERROR, "null report");
  try {
    const std::string why = artin::revalidate_report(json);
    return why.empty() ? ARTIN_OK : s->fail(ARTIN_ERROR, why);
  } catch (const std::exception& e) {
    return s->fail(ARTIN_ERROR, e.what());
  }
}

}  // extern "C"
