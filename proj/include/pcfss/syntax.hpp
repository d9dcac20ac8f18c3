#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace pcfss {

struct SourcePos {
  int line = 0;
  int col = 0;
};

class Type {
 public:
  enum class Kind { Unit, Real, Arrow };

  static Type unit();
  static Type real();
  static Type arrow(Type dom, Type cod);

  Kind kind() const;
  bool is_arrow() const { return kind() == Kind::Arrow; }
  const Type& domain() const;
  const Type& codomain() const;
  std::string str() const;

  friend bool operator==(const Type& a, const Type& b);

 private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

using PrimId = std::size_t;

class Term;

// Values: skip, variables, lambdas, real constants, fixpoints.
class Value {
 public:
  enum class Kind { Skip, Var, Lam, Real, Fix };

  static Value skip(SourcePos p = {});
  static Value var(std::string name, SourcePos p = {});
  static Value lam(std::string param, Type param_type, Term body, SourcePos p = {});
  static Value real(double a, SourcePos p = {});
  static Value fix(std::string self, std::string param, Type arg, Type result, Term body,
                   SourcePos p = {});

  Kind kind() const;
  SourcePos pos() const;
  // Var: the variable. Lam: the parameter. Fix: the self name.
  const std::string& name() const;
  // Fix only: the parameter.
  const std::string& param() const;
  // Lam: parameter type. Fix: argument type.
  const Type& type() const;
  // Fix only.
  const Type& result_type() const;
  const Term& body() const;
  double real() const;

  friend bool operator==(const Value& a, const Value& b);

 private:
  struct Node;
  explicit Value(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

class Term {
 public:
  enum class Kind { Val, App, Let, If, Prim, Sample, Score };

  static Term val(Value v, SourcePos p = {});
  static Term app(Value fn, Value arg, SourcePos p = {});
  static Term let(std::string var, Term bound, Term body, SourcePos p = {});
  static Term if_(Value guard, Term then_branch, Term else_branch, SourcePos p = {});
  static Term prim(PrimId fid, std::vector<Value> args, SourcePos p = {});
  static Term sample(SourcePos p = {});
  static Term score(Value v, SourcePos p = {});

  Kind kind() const;
  SourcePos pos() const;
  bool is_value() const { return kind() == Kind::Val; }

  // Val: the value. Score: the argument. If: the guard. App: the function.
  const Value& value() const;
  // App only.
  const Value& arg() const;
  // Let only.
  const std::string& var() const;
  const Term& bound() const;
  const Term& body() const;
  // If only.
  const Term& then_branch() const;
  const Term& else_branch() const;
  // Prim only.
  PrimId prim_id() const;
  const std::vector<Value>& args() const;

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

std::set<std::string> free_vars(const Term& t);
std::set<std::string> free_vars(const Value& v);

bool contains_sample(const Term& t);
std::set<PrimId> prims_used(const Term& t);

// Capture-avoiding substitution of v for the free occurrences of x.
Term substitute(const Term& t, const std::string& x, const Value& v);
Value substitute(const Value& w, const std::string& x, const Value& v);

// Stack of pending let frames, outermost first.
struct LetFrame {
  std::string var;
  Term body;
};

struct EvalContext {
  std::vector<LetFrame> frames;
};

struct Decomposition {
  EvalContext ctx;
  Term redex;
};

// Splits t as E[R] with R not a let; nullopt when t is a value.
std::optional<Decomposition> decompose(const Term& t);
Term plug(const EvalContext& ctx, Term hole);

}  // namespace pcfss
