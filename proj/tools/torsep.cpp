// torsep: separation properties of toric orbit closures.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "torsep/torsep.hpp"

namespace {

enum Exit { kOk = 0, kInput = 2, kHypothesis = 3, kInternal = 4 };

std::string read_all(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path);
  if (!in) throw torsep::InputError("cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

struct Outcome {
  int code = kOk;
  std::string output;
  std::string error;
};

std::string error_json(const std::string& kind, const std::string& message) {
  torsep::json j;
  j["schema"] = torsep::kSchema;
  j["error"] = {{"kind", kind}, {"message", message}};
  return j.dump();
}

Outcome run_one(const std::string& command, const std::string& text, const torsep::Options& opt,
                const std::string& format, bool compact) {
  Outcome out;
  auto fail = [&](int code, const std::string& kind, const std::string& msg) {
    out.code = code;
    out.error = kind + " error: " + msg;
    if (format == "json") out.output = error_json(kind, msg) + "\n";
  };
  try {
    const torsep::Instance inst = torsep::parse_instance(text);
    const torsep::Report report = torsep::run_command(command, inst, opt);
    out.output = (format == "json" && compact) ? torsep::to_json(report).dump() + "\n"
                                               : torsep::emit_report(report, format);
    out.code = torsep::exit_status(report);
    if (out.code != kOk) out.error = "cross-check disagreement or unverified certificate";
  } catch (const torsep::ResourceError& e) {
    fail(kInput, "resource", "guard " + e.guard() + ": " + e.what());
  } catch (const torsep::InputError& e) {
    fail(kInput, "input", e.what());
  } catch (const torsep::HypothesisError& e) {
    fail(kHypothesis, "hypothesis", e.what());
  } catch (const torsep::InternalError& e) {
    fail(kInternal, "internal", e.what());
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide separation properties of torus orbit closures given by integer weights"};
  std::string command;
  std::string input = "-";
  std::string expr;
  std::string mode = "affine";
  std::string property = "all";
  std::string format = "text";
  std::uint64_t seed = 1;
  std::string prime = "10007";
  std::size_t trials = 100;
  std::size_t max_n = torsep::kDefaultMaxN;
  bool batch = false;
  bool timing = false;

  app.add_option("command", command, "decide | ideal | strata | oracle | chpairs | binary | verify")
      ->required()
      ->check(CLI::IsMember({"decide", "ideal", "strata", "oracle", "chpairs", "binary", "verify"}));
  app.add_option("input", input, "input file, '-' for stdin");
  app.add_option("-e,--expr", expr, "instance given inline instead of a file");
  app.add_option("--mode", mode, "affine | projective")->check(CLI::IsMember({"affine", "projective"}));
  app.add_option("--property", property, "sp | wsp | ssp | all")->check(CLI::IsMember({"sp", "wsp", "ssp", "all"}));
  app.add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));
  auto* seed_opt = app.add_option("--seed", seed, "seed for randomized checks (default: $TORSEP_SEED or 1)");
  app.add_option("--prime", prime, "prime modulus for vanishing checks");
  app.add_option("--trials", trials, "number of random orbit points")->check(CLI::PositiveNumber);
  app.add_option("--max-n", max_n, "guard on n for 2^n enumerations")->check(CLI::PositiveNumber);
  app.add_flag("--batch", batch, "one instance per input line");
  app.add_flag("--timing", timing, "include wall-clock time in reports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInput;
  }

  torsep::Options opt;
  opt.mode = torsep::mode_from(mode);
  opt.property = property;
  opt.trials = trials;
  opt.max_n = max_n;
  opt.timing = timing;
  if (opt.prime.set_str(prime, 10) != 0) {
    std::cerr << "input error: --prime is not an integer: " << prime << "\n";
    return kInput;
  }
  if (seed_opt->count() > 0) {
    opt.seed = seed;
  } else if (const char* env = std::getenv("TORSEP_SEED")) {
    try {
      std::size_t used = 0;
      opt.seed = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      std::cerr << "input error: TORSEP_SEED is not an unsigned integer: " << env << "\n";
      return kInput;
    }
  }

  std::string text;
  try {
    text = expr.empty() ? read_all(input) : expr;
  } catch (const torsep::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  }

  if (!batch) {
    Outcome o = run_one(command, text, opt, format, false);
    std::cout << o.output;
    if (!o.error.empty()) std::cerr << o.error << "\n";
    return o.code;
  }

  int worst = kOk;
  std::istringstream lines(text);
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(lines, line)) {
    ++lineno;
    auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    Outcome o = run_one(command, line, opt, format, true);
    if (format == "text" && !first) std::cout << "\n";
    first = false;
    std::cout << o.output;
    if (!o.error.empty()) {
      std::cerr << "line " << lineno << ": " << o.error << "\n";
      if (format == "text") std::cout << "line " << lineno << ": " << o.error << "\n";
    }
    worst = std::max(worst, o.code);
  }
  return worst;
}
