#include "pcfss/goi/machine.hpp"

#include <stdexcept>

namespace pcfss::goi {

const char* to_string(Failure f) {
  switch (f) {
    case Failure::None: return "None";
    case Failure::Undefined: return "Undefined";
    case Failure::FuelExhausted: return "FuelExhausted";
    case Failure::InvalidToken: return "InvalidToken";
  }
  return "?";
}

std::optional<Signal> Machine::transition(const Signal& in, State& s, Run& run) const {
  if (!run.tick()) return std::nullopt;
  bool check = run.limits().validate;
  if (check) {
    bool ok = in.end == End::Dom ? validate(dom_, Polarity::Pos, in.tok)
                                 : validate(cod_, Polarity::Neg, in.tok);
    if (!ok) {
      run.fail(Failure::InvalidToken);
      return std::nullopt;
    }
  }
  std::optional<Signal> out = step(in, s, run);
  if (!out) {
    run.fail(Failure::Undefined);
    return out;
  }
  if (check) {
    bool ok = out->end == End::Cod ? validate(cod_, Polarity::Pos, out->tok)
                                   : validate(dom_, Polarity::Neg, out->tok);
    if (!ok) {
      run.fail(Failure::InvalidToken);
      return std::nullopt;
    }
  }
  return out;
}

namespace {

class Wire final : public Machine {
 public:
  Wire(std::string label, Shape dom, Shape cod, WireFn fn)
      : Machine(std::move(label), std::move(dom), std::move(cod)), fn_(std::move(fn)) {}

 protected:
  std::optional<Signal> step(const Signal& in, State&, Run& run) const override {
    return fn_(in, run);
  }

 private:
  WireFn fn_;
};

class Group final : public Machine {
 public:
  Group(std::string label, MachinePtr inner, bool opaque)
      : Machine(std::move(label), inner->dom(), inner->cod()),
        inner_(std::move(inner)),
        opaque_(opaque) {}

  bool stateless() const override { return inner_->stateless(); }
  State initial() const override { return inner_->initial(); }
  Layout layout() const override { return opaque_ ? Layout::Group : Layout::Cluster; }
  std::vector<MachinePtr> children() const override { return {inner_}; }

 protected:
  std::optional<Signal> step(const Signal& in, State& s, Run& run) const override {
    return inner_->transition(in, s, run);
  }

 private:
  MachinePtr inner_;
  bool opaque_;
};

class Compose final : public Machine {
 public:
  Compose(MachinePtr m, MachinePtr n, std::optional<std::uint64_t> fuel)
      : Machine("compose", m->dom(), n->cod()),
        m_(std::move(m)),
        n_(std::move(n)),
        fuel_(fuel),
        stateless_(m_->stateless() && n_->stateless()) {
    if (!(m_->cod() == n_->dom()))
      throw std::invalid_argument("compose: " + m_->label() + " has codomain " +
                                  m_->cod().str() + " but " + n_->label() + " has domain " +
                                  n_->dom().str());
  }

  bool stateless() const override { return stateless_; }
  State initial() const override {
    State s;
    if (!stateless_) {
      s.parts.push_back(m_->initial());
      s.parts.push_back(n_->initial());
    }
    return s;
  }
  Layout layout() const override { return Layout::Compose; }
  std::vector<MachinePtr> children() const override { return {m_, n_}; }

 protected:
  std::optional<Signal> step(const Signal& in, State& s, Run& run) const override {
    State scratch;
    State& sm = stateless_ ? scratch : s.parts[0];
    State& sn = stateless_ ? scratch : s.parts[1];
    std::uint64_t fuel = fuel_ ? *fuel_ : run.limits().bounce_fuel;
    bool in_m = in.end == End::Dom;
    Signal cur = in;
    for (std::uint64_t bounces = 0;; ++bounces) {
      if (bounces > fuel) {
        run.fail(Failure::FuelExhausted);
        return std::nullopt;
      }
      std::optional<Signal> out = in_m ? m_->transition(cur, sm, run) : n_->transition(cur, sn, run);
      if (!out) return std::nullopt;
      if (in_m) {
        if (out->end == End::Dom) return out;
        cur = Signal{End::Dom, std::move(out->tok)};
        in_m = false;
      } else {
        if (out->end == End::Cod) return out;
        cur = Signal{End::Cod, std::move(out->tok)};
        in_m = true;
      }
    }
  }

 private:
  MachinePtr m_;
  MachinePtr n_;
  std::optional<std::uint64_t> fuel_;
  bool stateless_;
};

class Tensor final : public Machine {
 public:
  Tensor(MachinePtr m, MachinePtr n)
      : Machine("tensor", Shape::tensor(m->dom(), n->dom()), Shape::tensor(m->cod(), n->cod())),
        m_(std::move(m)),
        n_(std::move(n)),
        stateless_(m_->stateless() && n_->stateless()) {}

  bool stateless() const override { return stateless_; }
  State initial() const override {
    State s;
    if (!stateless_) {
      s.parts.push_back(m_->initial());
      s.parts.push_back(n_->initial());
    }
    return s;
  }
  Layout layout() const override { return Layout::Tensor; }
  std::vector<MachinePtr> children() const override { return {m_, n_}; }

 protected:
  std::optional<Signal> step(const Signal& in, State& s, Run& run) const override {
    Polarity p = in.end == End::Dom ? Polarity::Pos : Polarity::Neg;
    auto f = factor_of(p, in.tok);
    if (!f) return std::nullopt;
    State scratch;
    const Machine& part = f->first == 0 ? *m_ : *n_;
    State& ps = stateless_ ? scratch : s.parts[static_cast<std::size_t>(f->first)];
    std::optional<Signal> out = part.transition(Signal{in.end, std::move(f->second)}, ps, run);
    if (!out) return std::nullopt;
    Polarity q = out->end == End::Cod ? Polarity::Pos : Polarity::Neg;
    return Signal{out->end, at_factor(q, f->first, std::move(out->tok))};
  }

 private:
  MachinePtr m_;
  MachinePtr n_;
  bool stateless_;
};

class Bang final : public Machine {
 public:
  explicit Bang(MachinePtr m)
      : Machine("!", Shape::bang(m->dom()), Shape::bang(m->cod())), m_(std::move(m)) {}

  bool stateless() const override { return m_->stateless(); }
  Layout layout() const override { return Layout::Bang; }
  std::vector<MachinePtr> children() const override { return {m_}; }

 protected:
  std::optional<Signal> step(const Signal& in, State& s, Run& run) const override {
    if (in.tok.kind() != Token::Kind::Idx) return std::nullopt;
    const Nat& n = in.tok.index();
    std::optional<Signal> out;
    if (m_->stateless()) {
      State scratch;
      out = m_->transition(Signal{in.end, in.tok.sub()}, scratch, run);
    } else {
      auto it = s.copies.find(n);
      if (it == s.copies.end())
        it = s.copies.emplace(n, std::make_unique<State>(m_->initial())).first;
      out = m_->transition(Signal{in.end, in.tok.sub()}, *it->second, run);
    }
    if (!out) return std::nullopt;
    return Signal{out->end, Token::idx(n, std::move(out->tok))};
  }

 private:
  MachinePtr m_;
};

}  // namespace

MachinePtr make_wire(std::string label, Shape dom, Shape cod, WireFn fn) {
  return std::make_shared<Wire>(std::move(label), std::move(dom), std::move(cod), std::move(fn));
}

MachinePtr group(std::string label, MachinePtr inner, bool opaque) {
  return std::make_shared<Group>(std::move(label), std::move(inner), opaque);
}

MachinePtr compose(MachinePtr m, MachinePtr n, std::optional<std::uint64_t> fuel) {
  return std::make_shared<Compose>(std::move(m), std::move(n), fuel);
}

MachinePtr chain(std::vector<MachinePtr> ms) {
  if (ms.empty()) throw std::invalid_argument("chain of no machines");
  MachinePtr acc = ms.front();
  for (std::size_t i = 1; i < ms.size(); ++i) acc = compose(acc, ms[i]);
  return acc;
}

MachinePtr tensor(MachinePtr m, MachinePtr n) {
  return std::make_shared<Tensor>(std::move(m), std::move(n));
}

MachinePtr bang(MachinePtr m) { return std::make_shared<Bang>(std::move(m)); }

MachinePtr bottom(Shape dom, Shape cod) {
  return make_wire("bot", std::move(dom), std::move(cod),
                   [](const Signal&, Run&) -> std::optional<Signal> { return std::nullopt; });
}

}  // namespace pcfss::goi
