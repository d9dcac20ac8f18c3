#pragma once

#include <memory>
#include <vector>

#include "pcfss/goi/machine.hpp"

namespace pcfss::goi {

MachinePtr identity(Shape x);
// I -o X (x) X^perp
MachinePtr unit_link(Shape x);
// X^perp (x) X -o I
MachinePtr counit_link(Shape x);
// X (x) Y -o Y (x) X
MachinePtr symmetry(Shape x, Shape y);

// Tensor tree over numbered leaves; used to describe re-bracketings.
class Wiring {
 public:
  static Wiring leaf(int id, Shape s);
  static Wiring unit();
  static Wiring pair(Wiring a, Wiring b);

  Shape shape() const;

  struct Node;
  std::shared_ptr<const Node> node;
};

// Polarity-preserving isomorphism sending each leaf of `from` to the leaf of
// `to` with the same id.  Leaves present on one side only must be void.
MachinePtr rewire(const Wiring& from, const Wiring& to, std::string label = "iso");

// X -o I (x) X and back, X -o X (x) I and back.
MachinePtr lunit_in(Shape x);
MachinePtr lunit_out(Shape x);
MachinePtr runit_in(Shape x);
MachinePtr runit_out(Shape x);
// (X (x) Y) (x) Z -o X (x) (Y (x) Z) and back.
MachinePtr assoc_right(Shape x, Shape y, Shape z);
MachinePtr assoc_left(Shape x, Shape y, Shape z);

// !(X (x) Y) -o !X (x) !Y and back.
MachinePtr bang_split(Shape x, Shape y);
MachinePtr bang_join(Shape x, Shape y);

}  // namespace pcfss::goi
