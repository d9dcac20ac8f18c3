#include "pcfss/syntax.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace pcfss {

struct Type::Node {
  Kind kind;
  std::optional<Type> dom;
  std::optional<Type> cod;
};

Type Type::unit() {
  static const Type t(std::make_shared<const Node>(Node{Kind::Unit, {}, {}}));
  return t;
}

Type Type::real() {
  static const Type t(std::make_shared<const Node>(Node{Kind::Real, {}, {}}));
  return t;
}

Type Type::arrow(Type dom, Type cod) {
  return Type(std::make_shared<const Node>(Node{Kind::Arrow, std::move(dom), std::move(cod)}));
}

Type::Kind Type::kind() const { return n_->kind; }

const Type& Type::domain() const {
  if (!n_->dom) throw std::logic_error("domain of non-arrow type");
  return *n_->dom;
}

const Type& Type::codomain() const {
  if (!n_->cod) throw std::logic_error("codomain of non-arrow type");
  return *n_->cod;
}

std::string Type::str() const {
  switch (kind()) {
    case Kind::Unit: return "Unit";
    case Kind::Real: return "Real";
    case Kind::Arrow: {
      std::string d = domain().str();
      if (domain().is_arrow()) d = "(" + d + ")";
      return d + " -> " + codomain().str();
    }
  }
  return "?";
}

bool operator==(const Type& a, const Type& b) {
  if (a.n_ == b.n_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.kind() != Type::Kind::Arrow) return true;
  return a.domain() == b.domain() && a.codomain() == b.codomain();
}

struct Value::Node {
  Kind kind;
  SourcePos pos;
  std::string name;
  std::string param;
  std::optional<Type> type;
  std::optional<Type> result;
  std::optional<Term> body;
  double real = 0.0;
};

Value Value::skip(SourcePos p) {
  return Value(std::make_shared<const Node>(Node{Kind::Skip, p, {}, {}, {}, {}, {}, 0.0}));
}

Value Value::var(std::string name, SourcePos p) {
  return Value(
      std::make_shared<const Node>(Node{Kind::Var, p, std::move(name), {}, {}, {}, {}, 0.0}));
}

Value Value::lam(std::string param, Type param_type, Term body, SourcePos p) {
  return Value(std::make_shared<const Node>(Node{Kind::Lam, p, std::move(param), {},
                                                 std::move(param_type), {}, std::move(body),
                                                 0.0}));
}

Value Value::real(double a, SourcePos p) {
  return Value(std::make_shared<const Node>(Node{Kind::Real, p, {}, {}, {}, {}, {}, a}));
}

Value Value::fix(std::string self, std::string param, Type arg, Type result, Term body,
                 SourcePos p) {
  return Value(std::make_shared<const Node>(Node{Kind::Fix, p, std::move(self),
                                                 std::move(param), std::move(arg),
                                                 std::move(result), std::move(body), 0.0}));
}

Value::Kind Value::kind() const { return n_->kind; }
SourcePos Value::pos() const { return n_->pos; }
const std::string& Value::name() const { return n_->name; }
const std::string& Value::param() const { return n_->param; }
const Type& Value::type() const { return *n_->type; }
const Type& Value::result_type() const { return *n_->result; }
const Term& Value::body() const { return *n_->body; }
double Value::real() const { return n_->real; }

namespace {

// Bitwise equality so that NaN constants compare equal to themselves.
bool same_real(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

bool operator==(const Value& a, const Value& b) {
  if (a.n_ == b.n_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Value::Kind::Skip: return true;
    case Value::Kind::Var: return a.name() == b.name();
    case Value::Kind::Real: return same_real(a.real(), b.real());
    case Value::Kind::Lam:
      return a.name() == b.name() && a.type() == b.type() && a.body() == b.body();
    case Value::Kind::Fix:
      return a.name() == b.name() && a.param() == b.param() && a.type() == b.type() &&
             a.result_type() == b.result_type() && a.body() == b.body();
  }
  return false;
}

struct Term::Node {
  Kind kind;
  SourcePos pos;
  std::optional<Value> v;
  std::optional<Value> w;
  std::string var;
  std::optional<Term> m;
  std::optional<Term> n;
  PrimId fid = 0;
  std::vector<Value> args;
};

Term Term::val(Value v, SourcePos p) {
  Node n{Kind::Val, p, std::move(v), {}, {}, {}, {}, 0, {}};
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::app(Value fn, Value arg, SourcePos p) {
  Node n{Kind::App, p, std::move(fn), std::move(arg), {}, {}, {}, 0, {}};
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::let(std::string var, Term bound, Term body, SourcePos p) {
  Node n{Kind::Let, p, {}, {}, std::move(var), std::move(bound), std::move(body), 0, {}};
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::if_(Value guard, Term then_branch, Term else_branch, SourcePos p) {
  Node n{Kind::If, p, std::move(guard), {}, {}, std::move(then_branch), std::move(else_branch),
         0, {}};
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::prim(PrimId fid, std::vector<Value> args, SourcePos p) {
  Node n{Kind::Prim, p, {}, {}, {}, {}, {}, fid, std::move(args)};
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::sample(SourcePos p) {
  Node n{Kind::Sample, p, {}, {}, {}, {}, {}, 0, {}};
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::score(Value v, SourcePos p) {
  Node n{Kind::Score, p, std::move(v), {}, {}, {}, {}, 0, {}};
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term::Kind Term::kind() const { return n_->kind; }
SourcePos Term::pos() const { return n_->pos; }
const Value& Term::value() const { return *n_->v; }
const Value& Term::arg() const { return *n_->w; }
const std::string& Term::var() const { return n_->var; }
const Term& Term::bound() const { return *n_->m; }
const Term& Term::body() const { return *n_->n; }
const Term& Term::then_branch() const { return *n_->m; }
const Term& Term::else_branch() const { return *n_->n; }
PrimId Term::prim_id() const { return n_->fid; }
const std::vector<Value>& Term::args() const { return n_->args; }

bool operator==(const Term& a, const Term& b) {
  if (a.n_ == b.n_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Val:
    case Term::Kind::Score: return a.value() == b.value();
    case Term::Kind::App: return a.value() == b.value() && a.arg() == b.arg();
    case Term::Kind::Let:
      return a.var() == b.var() && a.bound() == b.bound() && a.body() == b.body();
    case Term::Kind::If:
      return a.value() == b.value() && a.then_branch() == b.then_branch() &&
             a.else_branch() == b.else_branch();
    case Term::Kind::Prim: return a.prim_id() == b.prim_id() && a.args() == b.args();
    case Term::Kind::Sample: return true;
  }
  return false;
}

namespace {

void collect_free(const Term& t, std::set<std::string>& bound, std::set<std::string>& out);

void collect_free(const Value& v, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (v.kind()) {
    case Value::Kind::Skip:
    case Value::Kind::Real: return;
    case Value::Kind::Var:
      if (!bound.count(v.name())) out.insert(v.name());
      return;
    case Value::Kind::Lam: {
      bool fresh = bound.insert(v.name()).second;
      collect_free(v.body(), bound, out);
      if (fresh) bound.erase(v.name());
      return;
    }
    case Value::Kind::Fix: {
      bool f1 = bound.insert(v.name()).second;
      bool f2 = bound.insert(v.param()).second;
      collect_free(v.body(), bound, out);
      if (f2) bound.erase(v.param());
      if (f1) bound.erase(v.name());
      return;
    }
  }
}

void collect_free(const Term& t, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Val:
    case Term::Kind::Score: collect_free(t.value(), bound, out); return;
    case Term::Kind::App:
      collect_free(t.value(), bound, out);
      collect_free(t.arg(), bound, out);
      return;
    case Term::Kind::Let: {
      collect_free(t.bound(), bound, out);
      bool fresh = bound.insert(t.var()).second;
      collect_free(t.body(), bound, out);
      if (fresh) bound.erase(t.var());
      return;
    }
    case Term::Kind::If:
      collect_free(t.value(), bound, out);
      collect_free(t.then_branch(), bound, out);
      collect_free(t.else_branch(), bound, out);
      return;
    case Term::Kind::Prim:
      for (const auto& a : t.args()) collect_free(a, bound, out);
      return;
    case Term::Kind::Sample: return;
  }
}

}  // namespace

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> bound, out;
  collect_free(t, bound, out);
  return out;
}

std::set<std::string> free_vars(const Value& v) {
  std::set<std::string> bound, out;
  collect_free(v, bound, out);
  return out;
}

bool contains_sample(const Term& t);

namespace {

bool value_contains_sample(const Value& v) {
  if (v.kind() == Value::Kind::Lam || v.kind() == Value::Kind::Fix)
    return contains_sample(v.body());
  return false;
}

void collect_prims(const Term& t, std::set<PrimId>& out);

void collect_prims(const Value& v, std::set<PrimId>& out) {
  if (v.kind() == Value::Kind::Lam || v.kind() == Value::Kind::Fix) collect_prims(v.body(), out);
}

void collect_prims(const Term& t, std::set<PrimId>& out) {
  switch (t.kind()) {
    case Term::Kind::Val:
    case Term::Kind::Score: collect_prims(t.value(), out); return;
    case Term::Kind::App:
      collect_prims(t.value(), out);
      collect_prims(t.arg(), out);
      return;
    case Term::Kind::Let:
      collect_prims(t.bound(), out);
      collect_prims(t.body(), out);
      return;
    case Term::Kind::If:
      collect_prims(t.value(), out);
      collect_prims(t.then_branch(), out);
      collect_prims(t.else_branch(), out);
      return;
    case Term::Kind::Prim:
      out.insert(t.prim_id());
      for (const auto& a : t.args()) collect_prims(a, out);
      return;
    case Term::Kind::Sample: return;
  }
}

}  // namespace

bool contains_sample(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Sample: return true;
    case Term::Kind::Val:
    case Term::Kind::Score: return value_contains_sample(t.value());
    case Term::Kind::App: return value_contains_sample(t.value()) || value_contains_sample(t.arg());
    case Term::Kind::Let: return contains_sample(t.bound()) || contains_sample(t.body());
    case Term::Kind::If:
      return value_contains_sample(t.value()) || contains_sample(t.then_branch()) ||
             contains_sample(t.else_branch());
    case Term::Kind::Prim:
      for (const auto& a : t.args())
        if (value_contains_sample(a)) return true;
      return false;
  }
  return false;
}

std::set<PrimId> prims_used(const Term& t) {
  std::set<PrimId> out;
  collect_prims(t, out);
  return out;
}

namespace {

struct Substituter {
  const std::string& x;
  const Value& v;
  std::set<std::string> fv;  // free variables of v
  int counter = 0;

  std::string fresh(const std::string& base, const std::set<std::string>& avoid) {
    for (;;) {
      std::string cand = base + "_" + std::to_string(++counter);
      if (!fv.count(cand) && !avoid.count(cand) && cand != x) return cand;
    }
  }

  // Renames binder y in body when it would capture a free variable of v.
  std::pair<std::string, Term> open(const std::string& y, const Term& body) {
    if (!fv.count(y)) return {y, body};
    std::set<std::string> avoid = free_vars(body);
    std::string z = fresh(y, avoid);
    return {z, substitute(body, y, Value::var(z))};
  }

  Value value(const Value& w) {
    switch (w.kind()) {
      case Value::Kind::Skip:
      case Value::Kind::Real: return w;
      case Value::Kind::Var: return w.name() == x ? v : w;
      case Value::Kind::Lam: {
        if (w.name() == x) return w;
        auto [y, body] = open(w.name(), w.body());
        return Value::lam(y, w.type(), term(body), w.pos());
      }
      case Value::Kind::Fix: {
        if (w.name() == x || w.param() == x) return w;
        auto [f, b1] = open(w.name(), w.body());
        auto [y, b2] = open(w.param(), b1);
        return Value::fix(f, y, w.type(), w.result_type(), term(b2), w.pos());
      }
    }
    return w;
  }

  Term term(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Val: return Term::val(value(t.value()), t.pos());
      case Term::Kind::Score: return Term::score(value(t.value()), t.pos());
      case Term::Kind::App: return Term::app(value(t.value()), value(t.arg()), t.pos());
      case Term::Kind::Let: {
        Term m = term(t.bound());
        if (t.var() == x) return Term::let(t.var(), m, t.body(), t.pos());
        auto [y, body] = open(t.var(), t.body());
        return Term::let(y, m, term(body), t.pos());
      }
      case Term::Kind::If:
        return Term::if_(value(t.value()), term(t.then_branch()), term(t.else_branch()),
                         t.pos());
      case Term::Kind::Prim: {
        std::vector<Value> args;
        args.reserve(t.args().size());
        for (const auto& a : t.args()) args.push_back(value(a));
        return Term::prim(t.prim_id(), std::move(args), t.pos());
      }
      case Term::Kind::Sample: return t;
    }
    return t;
  }
};

}  // namespace

Term substitute(const Term& t, const std::string& x, const Value& v) {
  Substituter s{x, v, free_vars(v)};
  return s.term(t);
}

Value substitute(const Value& w, const std::string& x, const Value& v) {
  Substituter s{x, v, free_vars(v)};
  return s.value(w);
}

std::optional<Decomposition> decompose(const Term& t) {
  if (t.is_value()) return std::nullopt;
  Decomposition d{{}, t};
  while (d.redex.kind() == Term::Kind::Let && !d.redex.bound().is_value()) {
    d.ctx.frames.push_back({d.redex.var(), d.redex.body()});
    Term inner = d.redex.bound();
    d.redex = inner;
  }
  return d;
}

Term plug(const EvalContext& ctx, Term hole) {
  for (auto it = ctx.frames.rbegin(); it != ctx.frames.rend(); ++it)
    hole = Term::let(it->var, std::move(hole), it->body);
  return hole;
}

}  // namespace pcfss
