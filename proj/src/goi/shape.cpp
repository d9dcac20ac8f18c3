#include "pcfss/goi/shape.hpp"

#include <optional>
#include <stdexcept>

namespace pcfss::goi {

struct Shape::Node {
  Kind kind;
  std::optional<Shape> a;
  std::optional<Shape> b;
};

Shape Shape::I() {
  static const Shape s(std::make_shared<const Node>(Node{Kind::I, {}, {}}));
  return s;
}

Shape Shape::R() {
  static const Shape s(std::make_shared<const Node>(Node{Kind::R, {}, {}}));
  return s;
}

Shape Shape::S0() {
  static const Shape s(std::make_shared<const Node>(Node{Kind::S0, {}, {}}));
  return s;
}

Shape Shape::S() {
  static const Shape s = tensor(S0(), dual(S0()));
  return s;
}

Shape Shape::bang(Shape x) {
  return Shape(std::make_shared<const Node>(Node{Kind::Bang, std::move(x), {}}));
}

Shape Shape::tensor(Shape x, Shape y) {
  return Shape(std::make_shared<const Node>(Node{Kind::Tensor, std::move(x), std::move(y)}));
}

Shape Shape::dual(Shape x) {
  if (x.kind() == Kind::Dual) return x.inner();
  if (x.kind() == Kind::I) return x;
  return Shape(std::make_shared<const Node>(Node{Kind::Dual, std::move(x), {}}));
}

Shape::Kind Shape::kind() const { return n_->kind; }

const Shape& Shape::inner() const {
  if (kind() != Kind::Bang && kind() != Kind::Dual) throw std::logic_error("inner of " + str());
  return *n_->a;
}

const Shape& Shape::left() const {
  if (kind() != Kind::Tensor) throw std::logic_error("left of " + str());
  return *n_->a;
}

const Shape& Shape::right() const {
  if (kind() != Kind::Tensor) throw std::logic_error("right of " + str());
  return *n_->b;
}

bool Shape::is_void() const {
  switch (kind()) {
    case Kind::I: return true;
    case Kind::R:
    case Kind::S0: return false;
    case Kind::Bang:
    case Kind::Dual: return inner().is_void();
    case Kind::Tensor: return left().is_void() && right().is_void();
  }
  return false;
}

std::string Shape::str() const {
  switch (kind()) {
    case Kind::I: return "I";
    case Kind::R: return "R";
    case Kind::S0: return "S0";
    case Kind::Bang: {
      std::string s = inner().str();
      if (inner().kind() == Kind::Tensor) s = "(" + s + ")";
      return "!" + s;
    }
    case Kind::Dual: {
      std::string s = inner().str();
      if (inner().kind() == Kind::Tensor) s = "(" + s + ")";
      return s + "^";
    }
    case Kind::Tensor: {
      if (identical(S())) return "S";
      std::string l = left().str();
      if (left().kind() == Kind::Tensor && !left().identical(S())) l = "(" + l + ")";
      return l + " * " + right().str();
    }
  }
  return "?";
}

bool Shape::identical(const Shape& o) const {
  if (n_ == o.n_) return true;
  if (kind() != o.kind()) return false;
  switch (kind()) {
    case Kind::I:
    case Kind::R:
    case Kind::S0: return true;
    case Kind::Bang:
    case Kind::Dual: return inner().identical(o.inner());
    case Kind::Tensor: return left().identical(o.left()) && right().identical(o.right());
  }
  return false;
}

namespace {

Shape canon(const Shape& s, bool dualized) {
  switch (s.kind()) {
    case Shape::Kind::I:
    case Shape::Kind::R: return s;
    case Shape::Kind::S0: return dualized ? Shape::dual(s) : s;
    case Shape::Kind::Bang: return Shape::bang(canon(s.inner(), dualized));
    case Shape::Kind::Dual: return canon(s.inner(), !dualized);
    case Shape::Kind::Tensor:
      if (dualized) return Shape::tensor(canon(s.right(), true), canon(s.left(), true));
      return Shape::tensor(canon(s.left(), false), canon(s.right(), false));
  }
  return s;
}

}  // namespace

Shape canonical(const Shape& s) { return canon(s, false); }

bool operator==(const Shape& a, const Shape& b) {
  return a.identical(b) || canonical(a).identical(canonical(b));
}

}  // namespace pcfss::goi
