#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pcfss/goi/shape.hpp"
#include "pcfss/goi/token.hpp"

namespace pcfss::goi {

inline constexpr std::uint64_t kDefaultBounceFuel = 100'000;

struct ExecLimits {
  // Internal bounces allowed per composition node per external input.
  std::uint64_t bounce_fuel = kDefaultBounceFuel;
  // Elementary transitions allowed per run, across all nodes.
  std::uint64_t step_budget = 50'000'000;
  // Largest copy index digging may produce.
  std::size_t max_index_bits = 1u << 16;
  // Check every transition's input and output against its interface.
  bool validate = false;
};

enum class Failure { None, Undefined, FuelExhausted, InvalidToken };
const char* to_string(Failure f);

class UniformSource {
 public:
  virtual ~UniformSource() = default;
  virtual double next() = 0;
};

// Per-execution context: limits, counters, failure cause, random source.
class Run {
 public:
  explicit Run(ExecLimits limits = {}, UniformSource* source = nullptr)
      : limits_(limits), source_(source) {}

  const ExecLimits& limits() const { return limits_; }
  UniformSource* source() const { return source_; }
  std::uint64_t steps() const { return steps_; }
  Failure failure() const { return failure_; }

  bool tick() {
    if (++steps_ > limits_.step_budget) {
      fail(Failure::FuelExhausted);
      return false;
    }
    return true;
  }
  void fail(Failure f) {
    if (failure_ == Failure::None || failure_ == Failure::Undefined) failure_ = f;
  }
  void clear_failure() { failure_ = Failure::None; }

 private:
  ExecLimits limits_;
  UniformSource* source_;
  std::uint64_t steps_ = 0;
  Failure failure_ = Failure::None;
};

// Execution state of a machine tree.  Composite machines keep their
// children's states in `parts`; ! keeps only the copies that have moved.
struct State {
  std::vector<State> parts;
  std::map<Nat, std::unique_ptr<State>> copies;
  std::optional<double> cell;
};

class Machine;
using MachinePtr = std::shared_ptr<const Machine>;

// Mealy machine dom -o cod.  Descriptions are immutable and shareable;
// state lives outside.
class Machine {
 public:
  enum class Layout { Leaf, Compose, Tensor, Bang, Group, Cluster };

  Machine(std::string label, Shape dom, Shape cod)
      : label_(std::move(label)), dom_(std::move(dom)), cod_(std::move(cod)) {}
  virtual ~Machine() = default;

  const std::string& label() const { return label_; }
  const Shape& dom() const { return dom_; }
  const Shape& cod() const { return cod_; }

  virtual bool stateless() const { return true; }
  virtual State initial() const { return {}; }
  virtual Layout layout() const { return Layout::Leaf; }
  virtual std::vector<MachinePtr> children() const { return {}; }

  // One transition; nullopt means undefined, with the cause recorded in run.
  std::optional<Signal> transition(const Signal& in, State& s, Run& run) const;

 protected:
  virtual std::optional<Signal> step(const Signal& in, State& s, Run& run) const = 0;

 private:
  std::string label_;
  Shape dom_;
  Shape cod_;
};

using WireFn = std::function<std::optional<Signal>(const Signal&, Run&)>;

// Stateless machine given by a transition function.
MachinePtr make_wire(std::string label, Shape dom, Shape cod, WireFn fn);

// Delegates to `inner`.  Renders as one node named `label` when opaque,
// otherwise as a labelled box around the inner network.
MachinePtr group(std::string label, MachinePtr inner, bool opaque = true);

// Interaction loop on the shared interface, truncated after `fuel` bounces
// (defaults to the run's bounce fuel).
MachinePtr compose(MachinePtr m, MachinePtr n, std::optional<std::uint64_t> fuel = std::nullopt);
// compose(ms[0], ms[1], ...): data flows left to right.
MachinePtr chain(std::vector<MachinePtr> ms);
MachinePtr tensor(MachinePtr m, MachinePtr n);
MachinePtr bang(MachinePtr m);
// Everywhere undefined.
MachinePtr bottom(Shape dom, Shape cod);

}  // namespace pcfss::goi
