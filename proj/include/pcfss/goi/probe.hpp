#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pcfss/goi/machine.hpp"

namespace pcfss::goi {

struct ProbeEntry {
  std::optional<Signal> out;
  Failure cause = Failure::None;

  friend bool operator==(const ProbeEntry& a, const ProbeEntry& b) { return a.out == b.out; }
};

using ProbeResponse = std::vector<ProbeEntry>;

// Feeds the inputs in order from the initial state.  Once a transition is
// undefined every later entry is undefined too.
ProbeResponse probe(const Machine& m, const std::vector<Signal>& inputs, ExecLimits limits = {},
                    UniformSource* source = nullptr);

bool probe_equiv(const Machine& m, const Machine& n, const std::vector<std::vector<Signal>>& probes,
                 ExecLimits limits = {});

std::string to_string(const ProbeResponse& r);

}  // namespace pcfss::goi
