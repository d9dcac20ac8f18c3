#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "pcfss/prims.hpp"
#include "pcfss/syntax.hpp"

namespace pcfss {

using Trace = std::vector<double>;

inline constexpr std::uint64_t kDefaultStepFuel = 1'000'000;

struct Config {
  Term term;
  double weight;
  Trace trace;  // head is trace.front()
};

enum class BlockReason { TraceUnderflow, ValueReached, NotReal };

const char* to_string(BlockReason r);

struct Terminated {
  double value;
  double weight;
  Trace leftover;
  std::uint64_t steps;
};
struct Blocked {
  BlockReason reason;
  std::uint64_t steps;
};
struct FuelExhausted {
  std::uint64_t steps;
};

using RunOutcome = std::variant<Terminated, Blocked, FuelExhausted>;

class NotARedex : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Deterministic contraction of beta, let-value, fix-unfold, if and prim redexes.
Term det_reduce(const Term& redex, const PrimRegistry& prims = builtin_prims());

using StepResult = std::variant<Config, Blocked>;
StepResult step_config(const Config& c, const PrimRegistry& prims = builtin_prims());

RunOutcome eval_sampling(const Term& t, double weight0, const Trace& trace,
                         std::uint64_t fuel = kDefaultStepFuel,
                         const PrimRegistry& prims = builtin_prims());

// Same semantics, but each sample redex asks `draw` for its value.
RunOutcome eval_lazy(const Term& t, double weight0, const std::function<double()>& draw,
                     std::uint64_t fuel = kDefaultStepFuel,
                     const PrimRegistry& prims = builtin_prims());

enum class Undefined { TraceUnderflow, TraceLeftover, FuelExhausted, Stuck };
const char* to_string(Undefined u);

struct WeightVal {
  double weight;
  double value;
};

std::variant<WeightVal, Undefined> weight_val(const Term& t, const Trace& trace,
                                              std::uint64_t fuel = kDefaultStepFuel,
                                              double weight0 = 1.0,
                                              const PrimRegistry& prims = builtin_prims());

}  // namespace pcfss
