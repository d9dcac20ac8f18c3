#include "pcfss/goi/token.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "pcfss/parse.hpp"

namespace pcfss::goi {

struct Token::Node {
  Kind kind;
  double weight = 0.0;
  std::vector<double> reals;
  Nat index;
  std::optional<Token> sub;
};

Token Token::star() {
  static const Token t(std::make_shared<const Node>(Node{Kind::Star, 0.0, {}, 0, {}}));
  return t;
}

Token Token::seq(std::vector<double> reals) {
  return Token(std::make_shared<const Node>(Node{Kind::Seq, 0.0, std::move(reals), 0, {}}));
}

Token Token::wtrace(double weight, std::vector<double> trace) {
  return Token(
      std::make_shared<const Node>(Node{Kind::WTrace, weight, std::move(trace), 0, {}}));
}

Token Token::idx(Nat n, Token sub) {
  if (n < 0) throw std::invalid_argument("negative copy index");
  return Token(std::make_shared<const Node>(Node{Kind::Idx, 0.0, {}, std::move(n), std::move(sub)}));
}

Token Token::inl(Token sub) {
  return Token(std::make_shared<const Node>(Node{Kind::InL, 0.0, {}, 0, std::move(sub)}));
}

Token Token::inr(Token sub) {
  return Token(std::make_shared<const Node>(Node{Kind::InR, 0.0, {}, 0, std::move(sub)}));
}

Token::Kind Token::kind() const { return n_->kind; }
const std::vector<double>& Token::reals() const { return n_->reals; }
double Token::weight() const { return n_->weight; }
const Nat& Token::index() const { return n_->index; }

const Token& Token::sub() const {
  if (!n_->sub) throw std::logic_error("token has no sub-token");
  return *n_->sub;
}

namespace {

std::string reals_str(const std::vector<double>& xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ",";
    s += format_real(xs[i]);
  }
  return s + "]";
}

bool same_reals(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         (a.empty() || std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
}

}  // namespace

std::string Token::str() const {
  switch (kind()) {
    case Kind::Star: return "*";
    case Kind::Seq: return reals_str(reals());
    case Kind::WTrace: return "(" + format_real(weight()) + "," + reals_str(reals()) + ")";
    case Kind::Idx: return "(" + index().str() + "," + sub().str() + ")";
    case Kind::InL: return "L." + sub().str();
    case Kind::InR: return "R." + sub().str();
  }
  return "?";
}

bool operator==(const Token& a, const Token& b) {
  if (a.n_ == b.n_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Token::Kind::Star: return true;
    case Token::Kind::Seq: return same_reals(a.reals(), b.reals());
    case Token::Kind::WTrace:
      return std::memcmp(&a.n_->weight, &b.n_->weight, sizeof(double)) == 0 &&
             same_reals(a.reals(), b.reals());
    case Token::Kind::Idx: return a.index() == b.index() && a.sub() == b.sub();
    case Token::Kind::InL:
    case Token::Kind::InR: return a.sub() == b.sub();
  }
  return false;
}

Token at_factor(Polarity p, int factor, Token t) {
  bool left = (factor == 0) == (p == Polarity::Pos);
  return left ? Token::inl(std::move(t)) : Token::inr(std::move(t));
}

std::optional<std::pair<int, Token>> factor_of(Polarity p, const Token& t) {
  if (t.kind() != Token::Kind::InL && t.kind() != Token::Kind::InR) return std::nullopt;
  bool left = t.kind() == Token::Kind::InL;
  int factor = (left == (p == Polarity::Pos)) ? 0 : 1;
  return std::make_pair(factor, t.sub());
}

bool validate(const Shape& s, Polarity p, const Token& t) {
  switch (s.kind()) {
    case Shape::Kind::I: return false;
    case Shape::Kind::R: return t.kind() == Token::Kind::Seq;
    case Shape::Kind::S0: {
      if (p == Polarity::Neg || t.kind() != Token::Kind::WTrace) return false;
      // NaN weights are let through so that they can be reported downstream.
      if (!(t.weight() >= 0) && !std::isnan(t.weight())) return false;
      for (double b : t.reals())
        if (!(b >= 0.0 && b <= 1.0)) return false;
      return true;
    }
    case Shape::Kind::Bang:
      return t.kind() == Token::Kind::Idx && validate(s.inner(), p, t.sub());
    case Shape::Kind::Dual: return validate(s.inner(), flip(p), t);
    case Shape::Kind::Tensor: {
      auto f = factor_of(p, t);
      if (!f) return false;
      return validate(f->first == 0 ? s.left() : s.right(), p, f->second);
    }
  }
  return false;
}

std::string Signal::str() const { return (end == End::Dom ? "dom:" : "cod:") + tok.str(); }

}  // namespace pcfss::goi
