#pragma once

#include <utility>

#include "pcfss/goi/machine.hpp"

namespace pcfss::goi {

// <n, m> = n + (n+m)(n+m+1)/2
Nat cantor_pair(const Nat& n, const Nat& m);
std::pair<Nat, Nat> cantor_unpair(const Nat& k);

// !X -o X: (n, x) -> x forward, x -> (0, x) backward.
MachinePtr dereliction(Shape x);
// !X -o !!X: (<n,m>, x) <-> (n, (m, x)).
MachinePtr digging(Shape x);
// !X -o !X (x) !X: (2n, x) <-> first (n, x), (2n+1, x) <-> second (n, x).
MachinePtr contraction(Shape x);
// !X -o I, everywhere undefined.
MachinePtr weakening(Shape x);

}  // namespace pcfss::goi
