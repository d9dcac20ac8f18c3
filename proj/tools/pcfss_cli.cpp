#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "pcfss/adequacy.hpp"
#include "pcfss/goi/dot.hpp"
#include "pcfss/interp.hpp"
#include "pcfss/opsem.hpp"
#include "pcfss/parse.hpp"
#include "pcfss/typer.hpp"

using nlohmann::json;
using namespace pcfss;

namespace {

struct RunConfig {
  std::string path;
  std::string trace;
  std::string trace_file;
  double weight = 1.0;
  std::uint64_t fuel = kDefaultStepFuel;
  std::uint64_t bounce_fuel = goi::kDefaultBounceFuel;
  std::size_t max_index_bits = goi::ExecLimits{}.max_index_bits;
  std::optional<unsigned> iterants;
  std::uint64_t n_runs = 10'000;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::string mode = "opsem";
  std::size_t bins = 10;
  std::string range;
  std::string query;
  bool csv = false;
  bool pretty = false;
};

// Reported to the user as-is, exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("bad " + what + ": '" + s + "'");
  }
  if (used != s.size()) throw UsageError("bad " + what + ": '" + s + "'");
  return x;
}

Trace parse_trace(const RunConfig& cfg) {
  Trace u;
  if (!cfg.trace_file.empty()) {
    std::istringstream in(read_file(cfg.trace_file));
    std::string line;
    while (std::getline(in, line)) {
      line.erase(0, line.find_first_not_of(" \t\r"));
      line.erase(line.find_last_not_of(" \t\r") + 1);
      if (!line.empty()) u.push_back(parse_double(line, "trace entry"));
    }
  }
  if (!cfg.trace.empty()) {
    std::istringstream in(cfg.trace);
    std::string item;
    while (std::getline(in, item, ',')) u.push_back(parse_double(item, "trace entry"));
  }
  return u;
}

std::pair<double, double> parse_interval(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw UsageError("bad interval '" + s + "', expected lo:hi");
  return {parse_double(s.substr(0, colon), "interval bound"),
          parse_double(s.substr(colon + 1), "interval bound")};
}

Term load(const RunConfig& cfg) { return parse_program(read_file(cfg.path)); }

Term load_real(const RunConfig& cfg) {
  Term t = load(cfg);
  check_closed_real(t);
  return t;
}

goi::ExecLimits limits(const RunConfig& cfg) {
  goi::ExecLimits l;
  l.bounce_fuel = cfg.bounce_fuel;
  l.max_index_bits = cfg.max_index_bits;
  return l;
}

InterpOptions interp_options(const RunConfig& cfg) {
  InterpOptions o;
  o.iterants = cfg.iterants;
  return o;
}

json real_json(double x) {
  if (std::isfinite(x)) return x;
  return format_real(x);
}

json trace_json(const Trace& u) {
  json a = json::array();
  for (double x : u) a.push_back(real_json(x));
  return a;
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

int cmd_check(const RunConfig& cfg) {
  Term t = load(cfg);
  Type a = infer_type(Context{}, t);
  if (cfg.pretty)
    std::cout << cfg.path << ": ok, type " << a.str() << "\n";
  else
    emit({{"type", a.str()}});
  return 0;
}

int cmd_run(const RunConfig& cfg) {
  Term t = load_real(cfg);
  auto r = eval_sampling(t, cfg.weight, parse_trace(cfg), cfg.fuel);
  json j;
  if (auto* done = std::get_if<Terminated>(&r)) {
    j = {{"status", "terminated"},
         {"value", real_json(done->value)},
         {"weight", real_json(done->weight)},
         {"leftover", trace_json(done->leftover)},
         {"steps", done->steps}};
  } else if (auto* b = std::get_if<Blocked>(&r)) {
    j = {{"status", "blocked"}, {"reason", to_string(b->reason)}, {"steps", b->steps}};
  } else {
    j = {{"status", "fuel_exhausted"}, {"steps", std::get<FuelExhausted>(r).steps}};
  }
  if (cfg.pretty)
    std::cout << j.dump(2) << "\n";
  else
    emit(j);
  return 0;
}

int cmd_goi_run(const RunConfig& cfg) {
  Term t = load_real(cfg);
  auto m = interp_term(Context{}, t, interp_options(cfg));
  auto r = observe(*m, cfg.weight, parse_trace(cfg), limits(cfg));
  json j;
  if (auto* o = std::get_if<Observation>(&r))
    j = {{"status", "defined"}, {"value", real_json(o->value)}, {"weight", real_json(o->weight)}};
  else
    j = {{"status", "undefined"}, {"cause", to_string(std::get<ObserveFailure>(r))}};
  if (cfg.pretty)
    std::cout << j.dump(2) << "\n";
  else
    emit(j);
  return 0;
}

int cmd_estimate(const RunConfig& cfg) {
  Term t = load_real(cfg);
  EstimateOptions opt;
  opt.n_runs = cfg.n_runs;
  opt.seed = cfg.seed;
  opt.fuel = cfg.fuel;
  opt.limits = limits(cfg);
  opt.jobs = cfg.jobs;
  if (cfg.mode == "opsem")
    opt.mode = EstimateMode::OpSem;
  else if (cfg.mode == "goi")
    opt.mode = EstimateMode::Goi;
  else
    throw UsageError("unknown mode '" + cfg.mode + "', expected opsem or goi");
  WeightedSampleSet s = estimate_distribution(t, opt);

  double lo = 0, hi = 0;
  if (!cfg.range.empty()) {
    std::tie(lo, hi) = parse_interval(cfg.range);
  } else if (!s.samples.empty()) {
    lo = hi = s.samples.front().value;
    for (const auto& x : s.samples) {
      if (!std::isfinite(x.value)) continue;
      lo = std::min(lo, x.value);
      hi = std::max(hi, x.value);
    }
  }
  auto bins = histogram(s, cfg.bins, lo, hi);

  if (cfg.csv) {
    std::cout << "lo,hi,weighted_mass\n";
    for (const auto& b : bins)
      std::cout << format_real(b.lo) << "," << format_real(b.hi) << "," << format_real(b.weighted_mass)
                << "\n";
    return 0;
  }
  json hist = json::array();
  for (const auto& b : bins)
    hist.push_back({{"lo", real_json(b.lo)}, {"hi", real_json(b.hi)},
                    {"weighted_mass", real_json(b.weighted_mass)}});
  json j = {{"n", s.n},
            {"seed", s.seed},
            {"mode", cfg.mode},
            {"blocked", s.blocked},
            {"exhausted", s.exhausted},
            {"mass", real_json(s.total_mass())},
            {"histogram", hist}};
  if (!cfg.query.empty()) {
    auto [qlo, qhi] = parse_interval(cfg.query);
    j["query"] = {{"lo", real_json(qlo)},
                  {"hi", real_json(qhi)},
                  {"mass", real_json(s.mass(qlo, qhi))},
                  {"std_error", real_json(s.std_error(qlo, qhi))}};
  }
  if (cfg.pretty)
    std::cout << j.dump(2) << "\n";
  else
    emit(j);
  return 0;
}

int cmd_crosscheck(const RunConfig& cfg) {
  Term t = load_real(cfg);
  CrosscheckOptions opt;
  opt.fuel = cfg.fuel;
  opt.limits = limits(cfg);
  opt.interp = interp_options(cfg);
  auto r = crosscheck_trace(t, cfg.weight, parse_trace(cfg), opt);
  if (cfg.pretty) {
    std::cout << r.str() << "\n";
  } else {
    json j = {{"verdict", to_string(r.verdict)}};
    if (auto* w = std::get_if<WeightVal>(&r.opsem))
      j["opsem"] = {{"value", real_json(w->value)}, {"weight", real_json(w->weight)}};
    else
      j["opsem"] = {{"undefined", to_string(std::get<Undefined>(r.opsem))}};
    if (auto* o = std::get_if<Observation>(&r.goi))
      j["goi"] = {{"value", real_json(o->value)}, {"weight", real_json(o->weight)}};
    else
      j["goi"] = {{"undefined", to_string(std::get<ObserveFailure>(r.goi))}};
    emit(j);
  }
  bool ok = r.verdict == Verdict::Agree || r.verdict == Verdict::BothUndefined;
  return ok ? 0 : 2;
}

int cmd_dot(const RunConfig& cfg) {
  Term t = load(cfg);
  auto m = interp_term(Context{}, t, interp_options(cfg));
  std::cout << goi::to_dot(*m, cfg.path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pcfss: run probabilistic programs by reduction and by token machines"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_file = [&](CLI::App* c) { c->add_option("file", cfg.path, "Program file")->required(); };
  auto add_trace = [&](CLI::App* c) {
    c->add_option("--trace", cfg.trace, "Comma-separated trace, e.g. 0.25,0.7");
    c->add_option("--trace-file", cfg.trace_file, "Trace file, one real per line");
    c->add_option("--weight", cfg.weight, "Initial weight")->capture_default_str();
  };
  auto add_goi = [&](CLI::App* c) {
    c->add_option("--bounce-fuel", cfg.bounce_fuel, "Token bounces per composition")
        ->capture_default_str();
    c->add_option("--max-index-bits", cfg.max_index_bits, "Largest copy index, in bits")
        ->capture_default_str();
    c->add_option("--iterants", cfg.iterants, "Unfold fix k times instead of the feedback loop");
  };
  auto add_fuel = [&](CLI::App* c) {
    c->add_option("--fuel", cfg.fuel, "Reduction steps")->capture_default_str();
  };
  auto add_pretty = [&](CLI::App* c) { c->add_flag("--pretty", cfg.pretty, "Human-readable output"); };

  auto* check = app.add_subcommand("check", "Parse and type-check");
  add_file(check);
  add_pretty(check);

  auto* run = app.add_subcommand("run", "Run the sampling semantics on a trace");
  add_file(run);
  add_trace(run);
  add_fuel(run);
  add_pretty(run);

  auto* goi_run = app.add_subcommand("goi-run", "Observe the compiled token machine on a trace");
  add_file(goi_run);
  add_trace(goi_run);
  add_goi(goi_run);
  add_pretty(goi_run);

  auto* estimate = app.add_subcommand("estimate", "Monte Carlo estimate of the output measure");
  add_file(estimate);
  add_fuel(estimate);
  estimate->add_option("--bounce-fuel", cfg.bounce_fuel, "Token bounces per composition")
      ->capture_default_str();
  estimate->add_option("--max-index-bits", cfg.max_index_bits, "Largest copy index, in bits")
      ->capture_default_str();
  estimate->add_option("--n", cfg.n_runs, "Number of runs")->capture_default_str();
  estimate->add_option("--seed", cfg.seed, "Seed")->capture_default_str();
  estimate->add_option("--jobs", cfg.jobs, "Worker threads")->capture_default_str();
  estimate->add_option("--mode", cfg.mode, "opsem or goi")->capture_default_str();
  estimate->add_option("--bins", cfg.bins, "Histogram bins")->capture_default_str();
  estimate->add_option("--range", cfg.range, "Histogram range lo:hi");
  estimate->add_option("--query", cfg.query, "Report the mass of lo:hi");
  estimate->add_flag("--csv", cfg.csv, "Histogram as CSV");
  add_pretty(estimate);

  auto* cross = app.add_subcommand("crosscheck", "Compare both semantics on one trace");
  add_file(cross);
  add_trace(cross);
  add_fuel(cross);
  add_goi(cross);
  add_pretty(cross);

  auto* dot = app.add_subcommand("dot", "Print the compiled network as Graphviz");
  add_file(dot);
  dot->add_option("--iterants", cfg.iterants, "Unfold fix k times instead of the feedback loop");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return cmd_check(cfg);
    if (run->parsed()) return cmd_run(cfg);
    if (goi_run->parsed()) return cmd_goi_run(cfg);
    if (estimate->parsed()) return cmd_estimate(cfg);
    if (cross->parsed()) return cmd_crosscheck(cfg);
    if (dot->parsed()) return cmd_dot(cfg);
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const TypeError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 1;
}
