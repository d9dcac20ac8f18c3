#pragma once

#include <cstdint>

#include "pcfss/goi/machine.hpp"

namespace pcfss {

// Counter-based uniform stream: draw i of run r under seed s is
// splitmix64(key(s, r) + i), mapped to [0, 1) with 53 random bits.
class CounterRng final : public goi::UniformSource {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t run);
  double next() override;
  std::uint64_t draws() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace pcfss
