#pragma once

#include "pcfss/goi/machine.hpp"
#include "pcfss/prims.hpp"

namespace pcfss::goi {

// I -o R: query u -> answer a::u.
MachinePtr real_const(double a);

// R (x) ... (x) R -o R (right-nested, one factor per argument).  Queries the
// arguments left to right, each answer pushing onto the stack; the last
// answer a_n::...::a_1::u becomes f(a_1, ..., a_n)::u.
MachinePtr fn_machine(PrimId fid, const PrimRegistry& prims = builtin_prims());

// R (x) (X (x) X) -o X.  Backward tokens on X are encoded and sent to the
// guard; the answer a::code is decoded and routed to the first X when a = 0,
// to the second otherwise.
MachinePtr cond(Shape x);

// R -o S: (a, u) -> query a::u; answer g::a::u -> (|g a|, u).
MachinePtr score_machine();

// I -o S (x) !R.  Pops one trace element on the state pass and answers every
// copy of the value with it afterwards.
MachinePtr sample_machine();
// Same, but the value is drawn from the run's uniform source and the trace
// passes through untouched.
MachinePtr sample_machine_rng();

// I -o S and S (x) S -o S.  In the multiplication the second factor receives
// the incoming state first and hands its result to the first factor.
MachinePtr state_unit();
MachinePtr state_mult();

}  // namespace pcfss::goi
