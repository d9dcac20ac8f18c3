#include "pcfss/adequacy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "pcfss/parse.hpp"
#include "pcfss/rng.hpp"

namespace pcfss {

using goi::at_factor;
using goi::End;
using goi::factor_of;
using goi::Polarity;
using goi::Signal;
using goi::Token;

const char* to_string(ObserveFailure f) {
  switch (f) {
    case ObserveFailure::Phase1Failed: return "Phase1Failed";
    case ObserveFailure::Phase1TraceNotEmpty: return "Phase1TraceNotEmpty";
    case ObserveFailure::Phase2Failed: return "Phase2Failed";
    case ObserveFailure::FuelExhausted: return "FuelExhausted";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Agree: return "Agree";
    case Verdict::DisagreeValue: return "DisagreeValue";
    case Verdict::DisagreeWeight: return "DisagreeWeight";
    case Verdict::BothUndefined: return "BothUndefined";
    case Verdict::OneSided: return "OneSided";
  }
  return "?";
}

ObserveResult observe(const goi::Machine& m, double a, const Trace& u, goi::ExecLimits limits,
                      goi::UniformSource* source) {
  using goi::Shape;
  if (!m.dom().is_void() || !(m.cod() == Shape::tensor(Shape::S(), Shape::bang(Shape::R()))))
    throw std::invalid_argument("observe: expected I -o S (x) !R, got " + m.dom().str() + " -o " +
                                m.cod().str());
  goi::Run run(limits, source);
  goi::State st = m.initial();

  auto fail = [&](ObserveFailure f) -> ObserveResult {
    return run.failure() == goi::Failure::FuelExhausted ? ObserveFailure::FuelExhausted : f;
  };

  auto out1 = m.transition(
      Signal{End::Cod, at_factor(Polarity::Neg, 0, at_factor(Polarity::Neg, 1, Token::wtrace(a, u)))},
      st, run);
  if (!out1 || out1->end != End::Cod) return fail(ObserveFailure::Phase1Failed);
  auto f1 = factor_of(Polarity::Pos, out1->tok);
  if (!f1 || f1->first != 0) return fail(ObserveFailure::Phase1Failed);
  auto s1 = factor_of(Polarity::Pos, f1->second);
  if (!s1 || s1->first != 0 || s1->second.kind() != Token::Kind::WTrace)
    return fail(ObserveFailure::Phase1Failed);
  if (!s1->second.reals().empty()) return ObserveFailure::Phase1TraceNotEmpty;
  double weight = s1->second.weight();

  auto out2 = m.transition(
      Signal{End::Cod, at_factor(Polarity::Neg, 1, Token::idx(0, Token::seq({})))}, st, run);
  if (!out2 || out2->end != End::Cod) return fail(ObserveFailure::Phase2Failed);
  auto f2 = factor_of(Polarity::Pos, out2->tok);
  if (!f2 || f2->first != 1) return fail(ObserveFailure::Phase2Failed);
  const Token& ans = f2->second;
  if (ans.kind() != Token::Kind::Idx || ans.index() != 0 || ans.sub().kind() != Token::Kind::Seq ||
      ans.sub().reals().size() != 1)
    return fail(ObserveFailure::Phase2Failed);
  return Observation{weight, ans.sub().reals()[0]};
}

std::pair<double, double> o0_o1(const goi::Machine& m, const Trace& u, goi::ExecLimits limits) {
  auto r = observe(m, 1.0, u, limits);
  if (auto* o = std::get_if<Observation>(&r)) return {o->weight, o->value};
  return {0.0, 0.0};
}

bool reals_agree(double x, double y) {
  if (std::isnan(x) || std::isnan(y)) return std::isnan(x) && std::isnan(y);
  if (x == y) return true;
  return std::fabs(x - y) <= 1e-9 * std::max(std::fabs(x), std::fabs(y));
}

std::string CrosscheckReport::str() const {
  std::ostringstream out;
  out << to_string(verdict) << " opsem=";
  if (auto* w = std::get_if<WeightVal>(&opsem))
    out << "(" << format_real(w->weight) << ", " << format_real(w->value) << ")";
  else
    out << to_string(std::get<Undefined>(opsem));
  out << " goi=";
  if (auto* o = std::get_if<Observation>(&goi))
    out << "(" << format_real(o->weight) << ", " << format_real(o->value) << ")";
  else
    out << to_string(std::get<ObserveFailure>(goi));
  return out.str();
}

CrosscheckReport crosscheck_trace(const Term& t, const goi::Machine& compiled, double a,
                                  const Trace& u, const CrosscheckOptions& opt) {
  CrosscheckReport r{Verdict::Agree, weight_val(t, u, opt.fuel, a, *opt.interp.prims),
                     observe(compiled, a, u, opt.limits)};
  auto* w = std::get_if<WeightVal>(&r.opsem);
  auto* o = std::get_if<Observation>(&r.goi);
  if (!w && !o)
    r.verdict = Verdict::BothUndefined;
  else if (!w || !o)
    r.verdict = Verdict::OneSided;
  else if (!reals_agree(w->value, o->value))
    r.verdict = Verdict::DisagreeValue;
  else if (!reals_agree(w->weight, o->weight))
    r.verdict = Verdict::DisagreeWeight;
  return r;
}

CrosscheckReport crosscheck_trace(const Term& t, double a, const Trace& u,
                                  const CrosscheckOptions& opt) {
  check_closed_real(t, *opt.interp.prims);
  auto m = interp_term(Context{}, t, opt.interp);
  return crosscheck_trace(t, *m, a, u, opt);
}

double WeightedSampleSet::mass(double lo, double hi) const {
  if (n == 0) return 0.0;
  double sum = 0.0;
  for (const auto& s : samples)
    if (s.value >= lo && s.value <= hi) sum += s.weight;
  return sum / static_cast<double>(n);
}

double WeightedSampleSet::total_mass() const {
  if (n == 0) return 0.0;
  double sum = 0.0;
  for (const auto& s : samples) sum += s.weight;
  return sum / static_cast<double>(n);
}

double WeightedSampleSet::std_error(double lo, double hi) const {
  if (n < 2) return 0.0;
  double mean = mass(lo, hi);
  double sq = 0.0;
  for (const auto& s : samples)
    if (s.value >= lo && s.value <= hi) sq += s.weight * s.weight;
  auto nd = static_cast<double>(n);
  double var = (sq / nd - mean * mean) * nd / (nd - 1);
  return std::sqrt(std::max(var, 0.0) / nd);
}

namespace {

enum class RunStatus { Done, Blocked, Exhausted };

struct RunRecord {
  RunStatus status = RunStatus::Blocked;
  WeightedSample sample{0, 0};
};

RunRecord one_run(const Term& t, const goi::Machine* net, const EstimateOptions& opt,
                  std::uint64_t i) {
  CounterRng rng(opt.seed, i);
  RunRecord rec;
  if (net) {
    auto r = observe(*net, 1.0, {}, opt.limits, &rng);
    if (auto* o = std::get_if<Observation>(&r)) {
      rec.status = RunStatus::Done;
      rec.sample = {o->value, o->weight};
    } else if (std::get<ObserveFailure>(r) == ObserveFailure::FuelExhausted) {
      rec.status = RunStatus::Exhausted;
    }
  } else {
    auto r = eval_lazy(t, 1.0, [&rng] { return rng.next(); }, opt.fuel, *opt.prims);
    if (auto* done = std::get_if<Terminated>(&r)) {
      rec.status = RunStatus::Done;
      rec.sample = {done->value, done->weight};
    } else if (std::holds_alternative<FuelExhausted>(r)) {
      rec.status = RunStatus::Exhausted;
    }
  }
  if (rec.status == RunStatus::Done && std::isnan(rec.sample.weight)) rec.status = RunStatus::Blocked;
  return rec;
}

}  // namespace

WeightedSampleSet estimate_distribution(const Term& t, const EstimateOptions& opt) {
  check_closed_real(t, *opt.prims);
  goi::MachinePtr net;
  if (opt.mode == EstimateMode::Goi) {
    InterpOptions io;
    io.sample_from_source = true;
    io.prims = opt.prims;
    net = interp_term(Context{}, t, io);
  }

  std::vector<RunRecord> records(opt.n_runs);
  unsigned jobs = std::max(1u, opt.jobs);
  auto work = [&](unsigned k) {
    for (std::uint64_t i = k; i < opt.n_runs; i += jobs) records[i] = one_run(t, net.get(), opt, i);
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < jobs; ++k) pool.emplace_back(work, k);
    for (auto& th : pool) th.join();
  }

  WeightedSampleSet out;
  out.n = opt.n_runs;
  out.seed = opt.seed;
  for (const auto& r : records) {
    switch (r.status) {
      case RunStatus::Done: out.samples.push_back(r.sample); break;
      case RunStatus::Blocked: ++out.blocked; break;
      case RunStatus::Exhausted: ++out.exhausted; break;
    }
  }
  return out;
}

std::vector<HistogramBin> histogram(const WeightedSampleSet& s, std::size_t bins, double lo,
                                    double hi) {
  std::vector<HistogramBin> out;
  if (bins == 0 || !(hi >= lo)) return out;
  double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t i = 0; i < bins; ++i)
    out.push_back({lo + width * static_cast<double>(i),
                   i + 1 == bins ? hi : lo + width * static_cast<double>(i + 1), 0.0});
  if (s.n == 0) return out;
  for (const auto& x : s.samples) {
    if (!(x.value >= lo && x.value <= hi)) continue;
    std::size_t k = width > 0 ? static_cast<std::size_t>((x.value - lo) / width) : 0;
    k = std::min(k, bins - 1);
    out[k].weighted_mass += x.weight;
  }
  for (auto& b : out) b.weighted_mass /= static_cast<double>(s.n);
  return out;
}

SamplefreeResult exact_samplefree_measure(const Term& t, std::uint64_t fuel,
                                          const PrimRegistry& prims) {
  if (contains_sample(t)) throw std::invalid_argument("exact_samplefree_measure: term samples");
  auto r = eval_sampling(t, 1.0, {}, fuel, prims);
  if (auto* done = std::get_if<Terminated>(&r))
    return {SamplefreeResult::Kind::Dirac, done->weight, done->value};
  if (std::holds_alternative<FuelExhausted>(r)) return {SamplefreeResult::Kind::Divergent};
  return {SamplefreeResult::Kind::Stuck};
}

}  // namespace pcfss
