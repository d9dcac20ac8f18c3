#include "pcfss/prims.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pcfss {

PrimId PrimRegistry::add(std::string name, std::size_t arity,
                         std::function<double(std::span<const double>)> fn) {
  if (arity == 0) throw std::invalid_argument("primitive arity must be positive: " + name);
  if (find(name)) throw std::invalid_argument("duplicate primitive: " + name);
  prims_.push_back({std::move(name), arity, std::move(fn)});
  return prims_.size() - 1;
}

const PrimInfo& PrimRegistry::at(PrimId id) const {
  if (id >= prims_.size()) throw std::out_of_range("unknown primitive id");
  return prims_[id];
}

std::optional<PrimId> PrimRegistry::find(const std::string& name) const {
  for (std::size_t i = 0; i < prims_.size(); ++i)
    if (prims_[i].name == name) return i;
  return std::nullopt;
}

double PrimRegistry::apply(PrimId id, std::span<const double> args) const {
  const PrimInfo& p = at(id);
  if (args.size() != p.arity) throw std::invalid_argument("arity mismatch for " + p.name);
  return p.fn(args);
}

namespace {

PrimRegistry make_builtins() {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  PrimRegistry r;
  r.add("add", 2, [](std::span<const double> a) { return a[0] + a[1]; });
  r.add("sub", 2, [](std::span<const double> a) { return a[0] - a[1]; });
  r.add("mul", 2, [](std::span<const double> a) { return a[0] * a[1]; });
  r.add("neg", 1, [](std::span<const double> a) { return -a[0]; });
  r.add("abs", 1, [](std::span<const double> a) { return std::fabs(a[0]); });
  r.add("exp", 1, [](std::span<const double> a) { return std::exp(a[0]); });
  r.add("log", 1, [nan](std::span<const double> a) { return a[0] > 0 ? std::log(a[0]) : nan; });
  // 0.0 encodes "true" so that `if` picks its first branch.
  r.add("lt", 2, [nan](std::span<const double> a) {
    if (std::isnan(a[0]) || std::isnan(a[1])) return nan;
    return a[0] < a[1] ? 0.0 : 1.0;
  });
  r.add("min", 2, [nan](std::span<const double> a) {
    if (std::isnan(a[0]) || std::isnan(a[1])) return nan;
    return std::fmin(a[0], a[1]);
  });
  r.add("max", 2, [nan](std::span<const double> a) {
    if (std::isnan(a[0]) || std::isnan(a[1])) return nan;
    return std::fmax(a[0], a[1]);
  });
  return r;
}

}  // namespace

const PrimRegistry& builtin_prims() {
  static const PrimRegistry r = make_builtins();
  return r;
}

}  // namespace pcfss
