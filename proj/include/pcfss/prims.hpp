#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcfss/syntax.hpp"

namespace pcfss {

struct PrimInfo {
  std::string name;
  std::size_t arity;
  std::function<double(std::span<const double>)> fn;
};

// Measurable primitives addressed by PrimId.  Functions must be total on
// finite inputs and let NaN flow through.
class PrimRegistry {
 public:
  PrimId add(std::string name, std::size_t arity, std::function<double(std::span<const double>)> fn);
  const PrimInfo& at(PrimId id) const;
  std::optional<PrimId> find(const std::string& name) const;
  std::size_t size() const { return prims_.size(); }
  double apply(PrimId id, std::span<const double> args) const;

 private:
  std::vector<PrimInfo> prims_;
};

// add sub mul neg abs exp log lt min max
const PrimRegistry& builtin_prims();

}  // namespace pcfss
