#include "pcfss/goi/probe.hpp"

namespace pcfss::goi {

ProbeResponse probe(const Machine& m, const std::vector<Signal>& inputs, ExecLimits limits,
                    UniformSource* source) {
  ProbeResponse r;
  r.reserve(inputs.size());
  State s = m.initial();
  Run run(limits, source);
  bool dead = false;
  Failure cause = Failure::None;
  for (const auto& in : inputs) {
    if (dead) {
      r.push_back({std::nullopt, cause});
      continue;
    }
    std::optional<Signal> out = m.transition(in, s, run);
    if (!out) {
      dead = true;
      cause = run.failure();
    }
    Failure c = out ? Failure::None : cause;
    r.push_back({std::move(out), c});
  }
  return r;
}

bool probe_equiv(const Machine& m, const Machine& n, const std::vector<std::vector<Signal>>& probes,
                 ExecLimits limits) {
  for (const auto& p : probes)
    if (!(probe(m, p, limits) == probe(n, p, limits))) return false;
  return true;
}

std::string to_string(const ProbeResponse& r) {
  std::string s;
  for (const auto& e : r) {
    if (!s.empty()) s += " ; ";
    s += e.out ? e.out->str() : std::string("undef(") + to_string(e.cause) + ")";
  }
  return s;
}

}  // namespace pcfss::goi
