#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pcfss/prims.hpp"
#include "pcfss/syntax.hpp"

namespace pcfss {

// Ordered typing context.  Extending with a name that is already present
// hides the older entry under an unreachable name, so names stay unique.
class Context {
 public:
  struct Entry {
    std::string name;
    Type type;
  };

  Context() = default;
  Context extend(const std::string& name, const Type& t) const;
  std::optional<std::size_t> lookup(const std::string& name) const;
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  // All but the last entry.
  Context prefix() const;

 private:
  std::vector<Entry> entries_;
};

class TypeError : public std::runtime_error {
 public:
  enum class Kind { UnboundVariable, TypeMismatch, ArityMismatch, NotGroundReal };
  TypeError(Kind kind, SourcePos pos, const std::string& msg);
  Kind kind() const { return kind_; }
  SourcePos pos() const { return pos_; }
  const std::string& detail() const { return detail_; }

 private:
  Kind kind_;
  SourcePos pos_;
  std::string detail_;
};

Type infer_type(const Context& ctx, const Term& t, const PrimRegistry& prims = builtin_prims());
Type infer_value_type(const Context& ctx, const Value& v,
                      const PrimRegistry& prims = builtin_prims());
void check_closed_real(const Term& t, const PrimRegistry& prims = builtin_prims());

}  // namespace pcfss
