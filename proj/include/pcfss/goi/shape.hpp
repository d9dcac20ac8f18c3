#pragma once

#include <memory>
#include <string>

namespace pcfss::goi {

enum class Polarity { Pos, Neg };

inline Polarity flip(Polarity p) { return p == Polarity::Pos ? Polarity::Neg : Polarity::Pos; }

// Interface objects.  pos(I) is empty, R carries real stacks on both sides,
// S0 carries (weight, trace) pairs forward only.  Tensor is X+ + Y+ forward
// and Y- + X- backward.
class Shape {
 public:
  enum class Kind { I, R, S0, Bang, Tensor, Dual };

  static Shape I();
  static Shape R();
  static Shape S0();
  // S0 (x) S0^perp, the state object.
  static Shape S();
  static Shape bang(Shape x);
  static Shape tensor(Shape x, Shape y);
  // Dual(Dual(x)) = x and Dual(I) = I.
  static Shape dual(Shape x);

  Kind kind() const;
  // Bang and Dual.
  const Shape& inner() const;
  // Tensor.
  const Shape& left() const;
  const Shape& right() const;

  // True when neither side carries any token.
  bool is_void() const;
  std::string str() const;

  // Equality of token spaces: duals are pushed to the leaves first, using
  // (X (x) Y)^perp = Y^perp (x) X^perp, (!X)^perp = !(X^perp), R^perp = R.
  friend bool operator==(const Shape& a, const Shape& b);
  bool identical(const Shape& other) const;

 private:
  struct Node;
  explicit Shape(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

Shape canonical(const Shape& s);

}  // namespace pcfss::goi
