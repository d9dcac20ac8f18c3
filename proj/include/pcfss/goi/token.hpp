#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pcfss/goi/shape.hpp"

namespace pcfss::goi {

// Copy indices grow doubly exponentially under nested digging, so they are
// arbitrary precision.
using Nat = boost::multiprecision::cpp_int;

// Immutable payload tree; copies share structure.
class Token {
 public:
  enum class Kind { Star, Seq, WTrace, Idx, InL, InR };

  static Token star();
  static Token seq(std::vector<double> reals);
  static Token wtrace(double weight, std::vector<double> trace);
  static Token idx(Nat n, Token sub);
  static Token inl(Token sub);
  static Token inr(Token sub);

  Kind kind() const;
  // Seq payload, or WTrace trace.
  const std::vector<double>& reals() const;
  double weight() const;
  const Nat& index() const;
  const Token& sub() const;

  std::string str() const;

  // Reals compare bitwise.
  friend bool operator==(const Token& a, const Token& b);

 private:
  struct Node;
  explicit Token(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

// Tokens of a binary tensor: forward, InL is the left factor; backward,
// InL is the right factor.
Token at_factor(Polarity p, int factor, Token t);
std::optional<std::pair<int, Token>> factor_of(Polarity p, const Token& t);

bool validate(const Shape& s, Polarity p, const Token& t);

enum class End { Dom, Cod };

// A token crossing one end of a machine.  Inputs are dom-positive or
// cod-negative; outputs are cod-positive or dom-negative.
struct Signal {
  End end;
  Token tok;

  friend bool operator==(const Signal& a, const Signal& b) {
    return a.end == b.end && a.tok == b.tok;
  }
  std::string str() const;
};

}  // namespace pcfss::goi
