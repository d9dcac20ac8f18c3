#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pcfss/goi/machine.hpp"
#include "pcfss/interp.hpp"
#include "pcfss/opsem.hpp"

namespace pcfss {

struct Observation {
  double weight;
  double value;
  friend bool operator==(const Observation&, const Observation&) = default;
};

enum class ObserveFailure { Phase1Failed, Phase1TraceNotEmpty, Phase2Failed, FuelExhausted };
const char* to_string(ObserveFailure f);

using ObserveResult = std::variant<Observation, ObserveFailure>;

// Two-phase dialogue on m : I -o S (x) !R.  Phase 1 sends the state (a, u)
// and expects (a', empty) back; phase 2 asks copy 0 of the value and expects
// the one-element answer b.
ObserveResult observe(const goi::Machine& m, double a, const Trace& u, goi::ExecLimits limits = {},
                      goi::UniformSource* source = nullptr);

// observe(m, 1, u) as (weight, value), or (0, 0) where undefined.
std::pair<double, double> o0_o1(const goi::Machine& m, const Trace& u, goi::ExecLimits limits = {});

// Relative tolerance 1e-9; NaN matches NaN.
bool reals_agree(double x, double y);

enum class Verdict { Agree, DisagreeValue, DisagreeWeight, BothUndefined, OneSided };
const char* to_string(Verdict v);

struct CrosscheckReport {
  Verdict verdict;
  std::variant<WeightVal, Undefined> opsem;
  ObserveResult goi;
  std::string str() const;
};

struct CrosscheckOptions {
  std::uint64_t fuel = kDefaultStepFuel;
  goi::ExecLimits limits{};
  InterpOptions interp{};
};

// Requires |- t : real.
CrosscheckReport crosscheck_trace(const Term& t, double a, const Trace& u,
                                  const CrosscheckOptions& opt = {});
// Same with the network compiled once by the caller.
CrosscheckReport crosscheck_trace(const Term& t, const goi::Machine& compiled, double a,
                                  const Trace& u, const CrosscheckOptions& opt = {});

enum class EstimateMode { OpSem, Goi };

struct EstimateOptions {
  std::uint64_t n_runs = 10'000;
  std::uint64_t seed = 0;
  std::uint64_t fuel = kDefaultStepFuel;
  goi::ExecLimits limits{};
  EstimateMode mode = EstimateMode::OpSem;
  unsigned jobs = 1;
  const PrimRegistry* prims = &builtin_prims();
};

struct WeightedSample {
  double value;
  double weight;
};

struct WeightedSampleSet {
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  // Completed runs in run order.
  std::vector<WeightedSample> samples;
  std::uint64_t blocked = 0;
  std::uint64_t exhausted = 0;

  // (1/n) * sum of weights of samples with value in [lo, hi].
  double mass(double lo, double hi) const;
  double total_mass() const;
  // Standard error of mass(lo, hi).
  double std_error(double lo, double hi) const;
};

// Run i draws its uniforms from CounterRng(seed, i).  Blocked and exhausted
// runs contribute zero; a NaN weight counts as blocked.
WeightedSampleSet estimate_distribution(const Term& t, const EstimateOptions& opt = {});

struct HistogramBin {
  double lo;
  double hi;
  double weighted_mass;
};
// `bins` equal-width bins over [lo, hi]; the last bin is closed.
std::vector<HistogramBin> histogram(const WeightedSampleSet& s, std::size_t bins, double lo,
                                    double hi);

struct SamplefreeResult {
  enum class Kind { Dirac, Divergent, Stuck };
  Kind kind;
  double weight = 0;
  double value = 0;
};
// Weighted Dirac c * delta_b of a sample-free closed real term; throws
// std::invalid_argument when t contains sample.
SamplefreeResult exact_samplefree_measure(const Term& t, std::uint64_t fuel = kDefaultStepFuel,
                                          const PrimRegistry& prims = builtin_prims());

}  // namespace pcfss
