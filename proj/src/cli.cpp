#include "lufact/cli.hpp"

#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "lufact/conditions.hpp"
#include "lufact/decompositions.hpp"
#include "lufact/errors.hpp"
#include "lufact/factor.hpp"
#include "lufact/io.hpp"
#include "lufact/oracle.hpp"

namespace lufact::cli {

namespace {

using nlohmann::json;

constexpr Verb kAllVerbs[] = {Verb::Check, Verb::Lu,  Verb::Kw,  Verb::Hv,     Verb::Ulu,
                              Verb::Lul,   Verb::Plu, Verb::Lup, Verb::Verify, Verb::Selftest};

const char* verb_help(Verb verb) {
  switch (verb) {
    case Verb::Check:
      return "print the per-k rank report and the failure degree";
    case Verb::Lu:
      return "factor A = L U";
    case Verb::Kw:
      return "factor A = K W with --extra diagonals";
    case Verb::Hv:
      return "factor A = H V with --extra columns/rows";
    case Verb::Ulu:
      return "factor A = U1 L U2";
    case Verb::Lul:
      return "factor A = L1 U L2";
    case Verb::Plu:
      return "factor A = P L U";
    case Verb::Lup:
      return "factor A = L U P";
    case Verb::Verify:
      return "multiply factor blocks and compare with the matrix";
    case Verb::Selftest:
      return "run the exhaustive oracle sweeps";
  }
  return "";
}

bool uses_extra(Verb v) { return v == Verb::Kw || v == Verb::Hv; }
bool allows_trace(Verb v) { return v == Verb::Check || v == Verb::Lu || v == Verb::Kw || v == Verb::Hv; }

// Paths are stripped from ParseError and re-attached here.
class LocatedParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string locate(const std::string& path, const ParseError& e) {
  std::ostringstream out;
  out << (path == "-" ? "<stdin>" : path);
  if (e.line() > 0) {
    out << ':' << e.line();
    if (e.column() > 0) out << ':' << e.column();
  }
  out << ": " << e.what();
  return out.str();
}

Matrix load_matrix(const std::string& path) {
  try {
    return io::parse_matrix(io::read_text(path));
  } catch (const ParseError& e) {
    throw LocatedParseError(locate(path, e));
  }
}

void validate(const Command& cmd) {
  const char* name = verb_name(cmd.verb);
  if (uses_extra(cmd.verb) && !cmd.extra) {
    throw UsageError(std::string(name) + " requires --extra <m>");
  }
  if (!uses_extra(cmd.verb) && cmd.extra) {
    throw UsageError(std::string("--extra is not accepted by ") + name);
  }
  if (cmd.trace && !allows_trace(cmd.verb)) {
    throw UsageError(std::string("--trace is not accepted by ") + name);
  }
  const std::size_t count = cmd.inputs.size();
  switch (cmd.verb) {
    case Verb::Selftest:
      if (count != 0) throw UsageError("selftest takes no input file");
      break;
    case Verb::Verify:
      if (count < 1 || count > 2) throw UsageError("verify takes <matrix-file> [<factor-file>]");
      if (count == 2 && cmd.inputs[0] == "-" && cmd.inputs[1] == "-") {
        throw UsageError("verify cannot read both inputs from standard input");
      }
      break;
    default:
      if (count != 1) throw UsageError(std::string(name) + " takes exactly one matrix file");
  }
}

const char* verdict(bool exists) { return exists ? "exists" : "does_not_exist"; }

json report_json(const char* verb, bool exists, const ConditionReport& report) {
  return {{"command", verb},
          {"verdict", verdict(exists)},
          {"failure_degree", report.failure_degree},
          {"per_k", io::per_k_json(report)}};
}

json factors_json(const std::vector<io::NamedFactor>& factors, const FieldSpec& field) {
  json arr = json::array();
  for (const auto& f : factors) arr.push_back(io::to_json(factor_matrix(f.factor, field)));
  return arr;
}

json names_json(const std::vector<io::NamedFactor>& factors) {
  json arr = json::array();
  for (const auto& f : factors) arr.push_back(f.name);
  return arr;
}

json trace_json(const std::vector<PivotStep>& trace) {
  json arr = json::array();
  for (const auto& step : trace) arr.push_back(io::to_json(step));
  return arr;
}

void print_trace(std::ostream& out, const std::vector<PivotStep>& trace) {
  for (const auto& step : trace) out << io::format_trace_line(step) << '\n';
}

int run_check(const Command& cmd, std::ostream& out) {
  const Matrix a = load_matrix(cmd.inputs[0]);
  const ConditionReport report = condition_report(a);
  std::vector<PivotStep> trace;
  if (cmd.trace) trace = priority_pivot_factor(a).trace;
  if (cmd.json) {
    json j = report_json("check", report.satisfies, report);
    if (cmd.trace) j["trace"] = trace_json(trace);
    out << j.dump(2) << '\n';
  } else {
    if (cmd.trace) print_trace(out, trace);
    out << io::format_report_table(report);
  }
  return report.satisfies ? kSuccess : kNoFactorization;
}

// Shared tail of lu / kw / hv.
int emit_pair_result(const Command& cmd, std::ostream& out, const Matrix& a, bool exists,
                     const ConditionReport& report, std::vector<io::NamedFactor> factors,
                     std::vector<io::NamedFactor> raw, const std::vector<PivotStep>& trace) {
  const char* name = verb_name(cmd.verb);
  if (cmd.json) {
    json j = report_json(name, exists, report);
    if (cmd.extra) j["extra"] = *cmd.extra;
    j["factor_names"] = names_json(factors);
    j["factors"] = factors_json(factors, a.field());
    if (!raw.empty()) {
      j["raw_factor_names"] = names_json(raw);
      j["raw_factors"] = factors_json(raw, a.field());
    }
    if (cmd.trace) j["trace"] = trace_json(trace);
    out << j.dump(2) << '\n';
    return exists ? kSuccess : kNoFactorization;
  }

  if (cmd.trace) print_trace(out, trace);
  if (exists) {
    out << io::format_factor_blocks(factors);
    return kSuccess;
  }
  out << io::format_report_table(report);
  if (!raw.empty()) {
    out << "# the priority-pivot factors below multiply to A but miss the requested shape\n";
    out << io::format_factor_blocks(raw);
  }
  return kNoFactorization;
}

int run_pair_verb(const Command& cmd, std::ostream& out) {
  const Matrix a = load_matrix(cmd.inputs[0]);
  const std::size_t m = cmd.extra.value_or(0);

  if (cmd.verb == Verb::Hv) {
    const auto result = hv_factor(a, m);
    const FactorPair trace_source = priority_pivot_factor(border(a, m));
    if (result) {
      const auto& hv = result.value();
      return emit_pair_result(cmd, out, a, true, condition_report(a), {{"H", hv.H}, {"V", hv.V}}, {},
                              trace_source.trace);
    }
    return emit_pair_result(cmd, out, a, false, result.failure().report, {}, {}, trace_source.trace);
  }

  const bool kw = cmd.verb == Verb::Kw;
  const auto result = kw ? kw_factor(a, m) : lu(a);
  const char* left = kw ? "K" : "L";
  const char* right = kw ? "W" : "U";
  if (result) {
    const auto& pair = result.value();
    return emit_pair_result(cmd, out, a, true, condition_report(a), {{left, pair.L}, {right, pair.U}},
                            {}, pair.trace);
  }
  const auto& fail = result.failure();
  return emit_pair_result(cmd, out, a, false, fail.report, {},
                          {{std::string("raw ") + left, fail.raw->L}, {std::string("raw ") + right, fail.raw->U}},
                          fail.raw->trace);
}

int run_decomposition(const Command& cmd, std::ostream& out) {
  const Matrix a = load_matrix(cmd.inputs[0]);
  TriDecomposition d = [&] {
    switch (cmd.verb) {
      case Verb::Ulu:
        return ulu(a);
      case Verb::Lul:
        return lul(a);
      case Verb::Plu:
        return plu(a);
      default:
        return lup(a);
    }
  }();
  if (!(d.product(a.field()) == a) || !d.shapes_match_kind()) {
    throw InvariantViolation(std::string(kind_name(d.kind)) + ": decomposition failed its own checks");
  }
  const auto names = factor_names(d.kind);
  std::vector<io::NamedFactor> factors;
  for (std::size_t i = 0; i < 3; ++i) factors.push_back({names[i], d.factors[i]});

  if (cmd.json) {
    json j = report_json(verb_name(cmd.verb), true, condition_report(a));
    j["factor_names"] = names_json(factors);
    j["factors"] = factors_json(factors, a.field());
    for (std::size_t i = 0; i < 3; ++i) {
      if (const auto* p = std::get_if<Permutation>(&d.factors[i])) j["permutation"] = p->images();
    }
    out << j.dump(2) << '\n';
  } else {
    out << io::format_factor_blocks(factors);
  }
  return kSuccess;
}

int run_verify(const Command& cmd, std::ostream& out) {
  const Matrix a = load_matrix(cmd.inputs[0]);
  const std::string factor_path = cmd.inputs.size() > 1 ? cmd.inputs[1] : "-";
  std::vector<Factor> factors;
  try {
    factors = io::parse_factor_blocks(io::read_text(factor_path), a.field());
  } catch (const ParseError& e) {
    throw LocatedParseError(locate(factor_path, e));
  }

  Matrix product = factor_matrix(factors.front(), a.field());
  for (std::size_t f = 1; f < factors.size(); ++f) {
    const Matrix next = factor_matrix(factors[f], a.field());
    if (product.cols() != next.rows()) {
      throw UsageError("factor " + std::to_string(f + 1) + " has " + std::to_string(next.rows()) +
                       " rows, expected " + std::to_string(product.cols()));
    }
    product = multiply(product, next);
  }

  json j = {{"command", "verify"}, {"factor_count", factors.size()}};
  std::string message;
  bool match = false;
  if (product.rows() != a.rows() || product.cols() != a.cols()) {
    message = "mismatch: product is " + std::to_string(product.rows()) + "x" +
              std::to_string(product.cols()) + ", matrix is " + std::to_string(a.rows()) + "x" +
              std::to_string(a.cols());
  } else if (product == a) {
    match = true;
    message = "exact match (" + std::to_string(factors.size()) + " factors)";
  } else {
    for (std::size_t i = 1; i <= a.rows() && message.empty(); ++i) {
      for (std::size_t j2 = 1; j2 <= a.cols(); ++j2) {
        if (!(a.at(i, j2) == product.at(i, j2))) {
          message = "mismatch at (" + std::to_string(i) + "," + std::to_string(j2) + "): expected " +
                    format_scalar(a.at(i, j2)) + ", got " + format_scalar(product.at(i, j2));
          j["first_difference"] = {{"row", i},
                                   {"col", j2},
                                   {"expected", format_scalar(a.at(i, j2))},
                                   {"actual", format_scalar(product.at(i, j2))}};
          break;
        }
      }
    }
  }
  if (cmd.json) {
    j["verdict"] = match ? "match" : "mismatch";
    j["message"] = message;
    out << j.dump(2) << '\n';
  } else {
    out << message << '\n';
  }
  return match ? kSuccess : kNoFactorization;
}

int run_selftest(const Command& cmd, std::ostream& out) {
  const auto sweeps = oracle::run_selftest_sweeps();
  bool all = true;
  json arr = json::array();
  for (const auto& s : sweeps) {
    all = all && s.passed();
    json entry = {{"name", s.name}, {"checked", s.checked}, {"disagreements", s.disagreements}};
    if (!s.passed()) entry["first_counterexample"] = s.first_counterexample;
    arr.push_back(std::move(entry));
    if (!cmd.json) {
      out << (s.passed() ? "PASS " : "FAIL ") << s.name << " (" << s.checked << " checked";
      if (!s.passed()) out << ", " << s.disagreements << " disagreements; first: " << s.first_counterexample;
      out << ")\n";
    }
  }
  if (cmd.json) {
    out << json{{"command", "selftest"}, {"verdict", all ? "pass" : "fail"}, {"sweeps", arr}}.dump(2) << '\n';
  }
  return all ? kSuccess : kInternalError;
}

}  // namespace

const char* verb_name(Verb verb) noexcept {
  switch (verb) {
    case Verb::Check:
      return "check";
    case Verb::Lu:
      return "lu";
    case Verb::Kw:
      return "kw";
    case Verb::Hv:
      return "hv";
    case Verb::Ulu:
      return "ulu";
    case Verb::Lul:
      return "lul";
    case Verb::Plu:
      return "plu";
    case Verb::Lup:
      return "lup";
    case Verb::Verify:
      return "verify";
    case Verb::Selftest:
      return "selftest";
  }
  return "?";
}

int run_command(const Command& cmd, std::ostream& out, std::ostream& err) {
  try {
    validate(cmd);
    switch (cmd.verb) {
      case Verb::Check:
        return run_check(cmd, out);
      case Verb::Lu:
      case Verb::Kw:
      case Verb::Hv:
        return run_pair_verb(cmd, out);
      case Verb::Ulu:
      case Verb::Lul:
      case Verb::Plu:
      case Verb::Lup:
        return run_decomposition(cmd, out);
      case Verb::Verify:
        return run_verify(cmd, out);
      case Verb::Selftest:
        return run_selftest(cmd, out);
    }
    throw UsageError("unknown command");
  } catch (const LocatedParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact LU existence tests and triangular factorizations over Q and GF(p)", "lufact"};
  app.require_subcommand(1);

  Command cmd;
  std::optional<std::size_t> extra;
  for (Verb verb : kAllVerbs) {
    auto* sub = app.add_subcommand(verb_name(verb), verb_help(verb));
    if (verb != Verb::Selftest) {
      auto* files = sub->add_option("files", cmd.inputs, "matrix file ('-' for stdin)");
      if (verb != Verb::Verify) files->expected(1)->required();
    }
    sub->add_option("--extra", extra, "number of extra diagonals (kw) or columns/rows (hv)");
    sub->add_flag("--trace", cmd.trace, "print the pivot chosen at every step");
    sub->add_flag("--json", cmd.json, "emit one JSON object instead of text");
    sub->callback([&cmd, verb] { cmd.verb = verb; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kUsageError;
  }
  cmd.extra = extra;
  return run_command(cmd, out, err);
}

}  // namespace lufact::cli
