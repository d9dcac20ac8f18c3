#pragma once

#include "pcfss/goi/machine.hpp"

namespace pcfss::goi {

// m : !X -o X.  Returns the feedback network I -o X:
// (m (x) counit) . ((c . !m . dg) (x) id) . unit.
MachinePtr dagger(MachinePtr m);

// iterants(m, 0) = bot; iterants(m, k+1) = m . !(iterants(m, k)).  I -o X.
MachinePtr iterants(MachinePtr m, unsigned k);

// Parametrized forms for g : !D (x) !X -o X.  The context copy is
// contracted: one half feeds g directly, the other half is dug and fed to
// the copies of g behind the loop.  Both return !D -o X.
MachinePtr dagger_in_context(MachinePtr g, Shape d, Shape x);
MachinePtr iterants_in_context(MachinePtr g, Shape d, Shape x, unsigned k);

}  // namespace pcfss::goi
