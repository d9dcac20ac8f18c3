#pragma once

#include <optional>
#include <stdexcept>

#include "pcfss/goi/machine.hpp"
#include "pcfss/prims.hpp"
#include "pcfss/syntax.hpp"
#include "pcfss/typer.hpp"

namespace pcfss {

// [[unit]] = I, [[real]] = R, [[A -> B]] = S (x) (!B (x) (!A)^perp).
goi::Shape type_shape(const Type& t);
// Left-nested tensor of the entry shapes; I when empty.
goi::Shape context_shape(const Context& ctx);

struct InterpOptions {
  // Compile fix with k iterants instead of the feedback network.
  std::optional<unsigned> iterants;
  // Sample nodes draw from the run's uniform source instead of the trace.
  bool sample_from_source = false;
  const PrimRegistry* prims = &builtin_prims();
};

// Raised when a compiled network's interface differs from the one computed
// from the typing derivation.
class InterpError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// !D -o S (x) !A for ctx |- t : A.  Throws TypeError when t is ill-typed.
goi::MachinePtr interp_term(const Context& ctx, const Term& t, const InterpOptions& opt = {});
// !D -o A for ctx |- v : A.
goi::MachinePtr interp_value(const Context& ctx, const Value& v, const InterpOptions& opt = {});

}  // namespace pcfss
