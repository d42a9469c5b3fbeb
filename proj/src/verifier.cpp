#include "diffmod/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

namespace dm {

namespace {

using Comp = Modality::Comp;
using Sides = std::pair<Mor, Mor>;

Mor zero_like(const Mor& f) { return zero_morphism(f->src(), f->tgt(), f->rig()); }

Comp zeroed(Comp c) {
  return [c](const Obj& x) { return zero_like(c(x)); };
}

Comp zeroed_at(Comp c, const Obj& at) {
  std::string k = at->key();
  return [c, k](const Obj& x) {
    Mor f = c(x);
    return x->key() == k ? zero_like(f) : f;
  };
}

std::function<Subject(const Subject&)> mut(std::function<void(Subject&)> f) {
  return [f](const Subject& s0) {
    Subject s = s0;
    f(s);
    return s;
  };
}

// l ↦ l⊗...⊗l (n copies). Not natural; only used to build mutants.
Mor copies(const Obj& o, std::size_t n, const Rig& r) {
  std::vector<Obj> fs(n, o);
  std::size_t a = o->arity();
  return basis_map(
      o, tensor(fs), "copy" + std::to_string(n), r,
      [n, a](const Label& l) {
        std::vector<Label> parts;
        auto one = unpack(l, a);
        for (std::size_t i = 0; i < n; ++i) parts.insert(parts.end(), one.begin(), one.end());
        return LinComb::single(pack(parts));
      },
      Shift{0, std::nullopt});
}

// Every label to the unit.
Mor erase(const Obj& o, const Rig& r) {
  return basis_map(o, unit_object(), "erase", r,
                   [](const Label&) { return LinComb::single(Label::unit()); },
                   Shift{std::nullopt, 0});
}

// Naturality samples X -> X⊕X: f(x_i) = ι0 x_i + ι1 x_{i+1}, g(x_i) = ι1 x_i.
Mor sample_f(const Obj& x, const Rig& r) {
  auto ls = x->upto(0);
  Obj y = biproduct(x, x);
  return basis_map(
      x, y, "f", r,
      [ls, &r](const Label& l) {
        LinComb out;
        out.add(Label::inl(l), Value(1), r);
        auto it = std::find(ls.begin(), ls.end(), l);
        std::size_t i = static_cast<std::size_t>(it - ls.begin());
        out.add(Label::inr(ls[(i + 1) % ls.size()]), Value(1), r);
        return out;
      },
      Shift::exact(0));
}

Mor sample_g(const Obj& x, const Rig& r) {
  return basis_map(x, biproduct(x, x), "g", r,
                   [](const Label& l) { return LinComb::single(Label::inr(l)); }, Shift::exact(0));
}

// T = (1⊗∇)∘copy3 + (1⊗u) : !X -> !X⊗!X, added to Δ by comonoid mutants.
Mor delta_junk(const Modality& m, const Obj& x) {
  const Rig& r = m.r();
  Obj b = m.obj(x);
  Mor a = compose(tensor_mor(identity(b, r), m.need(m.nabla, "∇", x)), copies(b, 3, r));
  Mor c = tensor_mor(identity(b, r), m.need(m.u, "u", x));
  return add(a, c);
}

// d + d∘(d⊗1)∘((u∘e)⊗dup): breaks interchange once X has two atoms.
Mor interchange_breaker(const Modality& m, const Mor& d, const Obj& x) {
  const Rig& r = m.r();
  Mor ue = compose(m.need(m.u, "u", x), m.e(x));
  Mor extra = compose({d, tensor_mor(d, identity(x, r)), tensor_mor(ue, copies(x, 2, r))});
  return add(d, extra);
}

// First factor of the least term of (ε⊗ε)∘Δ; on a bag of size 2 this is
// its smaller member.
Mor pick(const Modality& m, const Obj& x) {
  Mor eps = m.eps(x);
  Mor pair = compose(tensor_mor(eps, eps), m.Delta(x));
  std::size_t a = x->arity();
  return make_mor(
      eps->src(), x, "pick", m.r(),
      [pair, a](const Label& l, const Window& w) {
        LinComb both = pair->apply(l);
        if (both.empty()) return LinComb();
        return LinComb::single(split(both.begin()->first, a, a).first).filtered(w);
      },
      Shift{std::nullopt, 0});
}

// Δ + (1⊗η∘pick)∘copy2, which b = (1⊗ε)∘Δ sees.
Mor delta_pick(const Modality& m, const Obj& x) {
  const Rig& r = m.r();
  Obj b = m.obj(x);
  Mor extra = compose(tensor_mor(identity(b, r), compose(m.need(m.eta, "η", x), pick(m, x))),
                      copies(b, 2, r));
  return add(m.Delta(x), extra);
}

// Some label ℓ of !X of weight <= 2 with ε(ℓ) != 0.
Label eps_visible(const Modality& m, const Obj& x) {
  Mor eps = m.eps(x);
  for (const auto& l : m.obj(x)->upto(2))
    if (!eps->apply(l).empty()) return l;
  throw std::logic_error("no ε-visible label in " + m.obj(x)->key());
}

Mor id(const Obj& o, const Rig& r) { return identity(o, r); }

const Rig& subject_rig(const Subject& s) { return s.phi ? s.phi->to.r() : s.m.r(); }

// ---------------------------------------------------------------- suites

std::vector<Equation> comonad_suite(const Instance& in) {
  Obj X = in.X;
  std::vector<Equation> q;
  q.push_back({"counit-left",
               [X](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 return {compose(m.eps(m.obj(X)), m.delta(X)), id(m.obj(X), m.r())};
               },
               "ε := 0", mut([](Subject& s) { s.m.eps = zeroed(s.m.eps); })});
  q.push_back({"counit-right",
               [X](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 return {compose(m.fmap(m.eps(X)), m.delta(X)), id(m.obj(X), m.r())};
               },
               "ε := 0", mut([](Subject& s) { s.m.eps = zeroed(s.m.eps); })});
  q.push_back({"coassociativity",
               [X](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 return {compose(m.delta(m.obj(X)), m.delta(X)),
                         compose(m.fmap(m.delta(X)), m.delta(X))};
               },
               "δ := 0 at !X",
               mut([X](Subject& s) { s.m.delta = zeroed_at(s.m.delta, s.m.obj(X)); })});
  Obj Y = biproduct(X, X);
  q.push_back({"naturality-eps",
               [X, Y](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 Mor f = sample_f(X, m.r());
                 return {compose(m.eps(Y), m.fmap(f)), compose(f, m.eps(X))};
               },
               "ε := 0 at X⊕X", mut([Y](Subject& s) { s.m.eps = zeroed_at(s.m.eps, Y); })});
  q.push_back({"naturality-delta",
               [X, Y](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 Mor f = sample_f(X, m.r());
                 return {compose(m.delta(Y), m.fmap(f)), compose(m.fmap(m.fmap(f)), m.delta(X))};
               },
               "δ := 0 at X⊕X", mut([Y](Subject& s) { s.m.delta = zeroed_at(s.m.delta, Y); })});
  return q;
}

std::vector<Equation> coalgebra_suite(const Instance& in) {
  Obj X = in.X;
  Obj Y = biproduct(X, X);
  auto junk = mut([](Subject& s) {
    Modality base = s.m;
    s.m.Delta = [base](const Obj& x) { return add(base.Delta(x), delta_junk(base, x)); };
  });
  const char* junk_desc = "Δ := Δ + (1⊗∇)∘copy3 + (1⊗u)";
  std::vector<Equation> q;
  q.push_back({"counit-left",
               [X](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 return {compose(tensor_mor(m.e(X), id(m.obj(X), m.r())), m.Delta(X)),
                         id(m.obj(X), m.r())};
               },
               "e := 0", mut([](Subject& s) { s.m.e = zeroed(s.m.e); })});
  q.push_back({"counit-right",
               [X](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 return {compose(tensor_mor(id(m.obj(X), m.r()), m.e(X)), m.Delta(X)),
                         id(m.obj(X), m.r())};
               },
               "e := 0", mut([](Subject& s) { s.m.e = zeroed(s.m.e); })});
  q.push_back({"coassociativity",
               [X](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 Mor i = id(m.obj(X), m.r());
                 return {compose(tensor_mor(m.Delta(X), i), m.Delta(X)),
                         compose(tensor_mor(i, m.Delta(X)), m.Delta(X))};
               },
               junk_desc, junk});
  q.push_back({"cocommutativity",
               [X](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 Obj b = m.obj(X);
                 return {compose(symmetry(b, b, m.r()), m.Delta(X)), m.Delta(X)};
               },
               junk_desc, junk});
  q.push_back({"delta-counit",
               [X](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 return {compose(m.e(m.obj(X)), m.delta(X)), m.e(X)};
               },
               "e := 0 at !X", mut([X](Subject& s) { s.m.e = zeroed_at(s.m.e, s.m.obj(X)); })});
  q.push_back({"delta-comultiplication",
               [X](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 return {compose(m.Delta(m.obj(X)), m.delta(X)),
                         compose(tensor_mor(m.delta(X), m.delta(X)), m.Delta(X))};
               },
               "Δ := 0 at !X",
               mut([X](Subject& s) { s.m.Delta = zeroed_at(s.m.Delta, s.m.obj(X)); })});
  q.push_back({"naturality-e",
               [X, Y](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 return {compose(m.e(Y), m.fmap(sample_f(X, m.r()))), m.e(X)};
               },
               "e := 0 at X⊕X", mut([Y](Subject& s) { s.m.e = zeroed_at(s.m.e, Y); })});
  q.push_back({"naturality-Delta",
               [X, Y](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 Mor bf = m.fmap(sample_f(X, m.r()));
                 return {compose(m.Delta(Y), bf), compose(tensor_mor(bf, bf), m.Delta(X))};
               },
               "Δ := 0 at X⊕X", mut([Y](Subject& s) { s.m.Delta = zeroed_at(s.m.Delta, Y); })});
  return q;
}

std::vector<Equation> bialgebra_suite(const Instance& in) {
  Obj X = in.X;
  Obj Y = biproduct(X, X);
  std::vector<Equation> q;
  auto u0 = mut([](Subject& s) { s.m.u = zeroed(s.m.u); });
  auto n0 = mut([](Subject& s) { s.m.nabla = zeroed(s.m.nabla); });
  auto nabla_junk = mut([](Subject& s) {
    Modality base = s.m;
    s.m.nabla = [base](const Obj& x) {
      Obj b = base.obj(x);
      return add(base.nabla(x), tensor_mor(id(b, base.r()), erase(b, base.r())));
    };
  });
  const char* nj = "∇ := ∇ + (1⊗erase)";
  q.push_back({"unit-left",
               [X](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 return {compose(m.nabla(X), tensor_mor(m.u(X), id(m.obj(X), m.r()))),
                         id(m.obj(X), m.r())};
               },
               "u := 0", u0});
  q.push_back({"unit-right",
               [X](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 return {compose(m.nabla(X), tensor_mor(id(m.obj(X), m.r()), m.u(X))),
                         id(m.obj(X), m.r())};
               },
               "u := 0", u0});
  q.push_back({"associativity",
               [X](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 Mor i = id(m.obj(X), m.r());
                 return {compose(m.nabla(X), tensor_mor(m.nabla(X), i)),
                         compose(m.nabla(X), tensor_mor(i, m.nabla(X)))};
               },
               nj, nabla_junk});
  q.push_back({"commutativity",
               [X](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 Obj b = m.obj(X);
                 return {compose(m.nabla(X), symmetry(b, b, m.r())), m.nabla(X)};
               },
               nj, nabla_junk});
  q.push_back({"counit-of-unit",
               [X](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 return {compose(m.e(X), m.u(X)), id(unit_object(), m.r())};
               },
               "u := 0", u0});
  q.push_back({"counit-of-product",
               [X](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 return {compose(m.e(X), m.nabla(X)), tensor_mor(m.e(X), m.e(X))};
               },
               "∇ := 0", n0});
  q.push_back({"comultiplication-of-unit",
               [X](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 return {compose(m.Delta(X), m.u(X)), tensor_mor(m.u(X), m.u(X))};
               },
               "Δ := 0", mut([](Subject& s) { s.m.Delta = zeroed(s.m.Delta); })});
  q.push_back({"comultiplication-of-product",
               [X](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 Obj b = m.obj(X);
                 Mor mid = tensor_mor({id(b, m.r()), symmetry(b, b, m.r()), id(b, m.r())});
                 return {compose(m.Delta(X), m.nabla(X)),
                         compose({tensor_mor(m.nabla(X), m.nabla(X)), mid,
                                  tensor_mor(m.Delta(X), m.Delta(X))})};
               },
               "Δ := Δ + (1⊗∇)∘copy3 + (1⊗u)", mut([](Subject& s) {
                 Modality base = s.m;
                 s.m.Delta = [base](const Obj& x) { return add(base.Delta(x), delta_junk(base, x)); };
               })});
  q.push_back({"eps-of-product",
               [X](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 return {compose(m.eps(X), m.nabla(X)),
                         add(tensor_mor(m.e(X), m.eps(X)), tensor_mor(m.eps(X), m.e(X)))};
               },
               "∇ := 0", n0});
  q.push_back({"eps-of-unit",
               [X](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 return {compose(m.eps(X), m.u(X)), zero_morphism(unit_object(), X, m.r())};
               },
               "u := u + an ε-visible label", mut([](Subject& s) {
                 Modality base = s.m;
                 s.m.u = [base](const Obj& x) {
                   Label l = eps_visible(base, x);
                   return add(base.u(x), point_map(base.obj(x), LinComb::single(l), base.r()));
                 };
               })});
  q.push_back({"convolution-zero",
               [X, Y](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 return {m.fmap(zero_morphism(X, Y, m.r())), compose(m.u(Y), m.e(X))};
               },
               "u := 0", u0});
  q.push_back({"convolution-sum",
               [X, Y](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 Mor f = sample_f(X, m.r()), g = sample_g(X, m.r());
                 return {m.fmap(add(f, g)),
                         compose({m.nabla(Y), tensor_mor(m.fmap(f), m.fmap(g)), m.Delta(X)})};
               },
               "∇ := 0", n0});
  q.push_back({"naturality-u",
               [X, Y](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 return {compose(m.fmap(sample_f(X, m.r())), m.u(X)), m.u(Y)};
               },
               "u := 0 at X⊕X", mut([Y](Subject& s) { s.m.u = zeroed_at(s.m.u, Y); })});
  q.push_back({"naturality-nabla",
               [X, Y](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 Mor bf = m.fmap(sample_f(X, m.r()));
                 return {compose(bf, m.nabla(X)), compose(m.nabla(Y), tensor_mor(bf, bf))};
               },
               "∇ := 0 at X⊕X", mut([Y](Subject& s) { s.m.nabla = zeroed_at(s.m.nabla, Y); })});
  return q;
}

std::vector<Equation> differential_suite(const Instance& in) {
  Obj X = in.X;
  std::vector<Equation> q;
  q.push_back({"constant",
               [X](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 Mor d = m.need(m.d, "d", X);
                 return {compose(m.e(X), d), zero_like(compose(m.e(X), d))};
               },
               "d := d + (1⊗erase)", mut([](Subject& s) {
                 Modality base = s.m;
                 s.m.d = [base](const Obj& x) {
                   return add(base.d(x), tensor_mor(id(base.obj(x), base.r()), erase(x, base.r())));
                 };
               })});
  q.push_back({"product",
               [X](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 const Rig& r = m.r();
                 Obj b = m.obj(X);
                 Mor d = m.need(m.d, "d", X);
                 Mor left = tensor_mor(id(b, r), d);
                 Mor right = compose(tensor_mor(d, id(b, r)), tensor_mor(id(b, r), symmetry(b, X, r)));
                 return {compose(m.Delta(X), d),
                         compose(add(left, right), tensor_mor(m.Delta(X), id(X, r)))};
               },
               "Δ := Δ + (1⊗∇)∘copy3 + (1⊗u)", mut([](Subject& s) {
                 Modality base = s.m;
                 s.m.Delta = [base](const Obj& x) { return add(base.Delta(x), delta_junk(base, x)); };
               })});
  q.push_back({"linear",
               [X](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 return {compose(m.eps(X), m.need(m.d, "d", X)), tensor_mor(m.e(X), id(X, m.r()))};
               },
               "d := 0", mut([](Subject& s) { s.m.d = zeroed(s.m.d); })});
  q.push_back({"chain",
               [X](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 const Rig& r = m.r();
                 Obj b = m.obj(X);
                 Mor d = m.need(m.d, "d", X);
                 Mor rhs = compose({m.d(b), tensor_mor(m.delta(X), d),
                                    tensor_mor(m.Delta(X), id(X, r))});
                 return {compose(m.delta(X), d), rhs};
               },
               "d := 0 at !X", mut([X](Subject& s) { s.m.d = zeroed_at(s.m.d, s.m.obj(X)); })});
  q.push_back({"interchange",
               [X](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 const Rig& r = m.r();
                 Mor d = m.need(m.d, "d", X);
                 Mor twice = compose(d, tensor_mor(d, id(X, r)));
                 return {twice, compose(twice, tensor_mor(id(m.obj(X), r), symmetry(X, X, r)))};
               },
               "d := d + d∘(d⊗1)∘((u∘e)⊗dup)", mut([](Subject& s) {
                 Modality base = s.m;
                 s.m.d = [base](const Obj& x) { return interchange_breaker(base, base.d(x), x); };
               })});
  return q;
}

std::vector<Equation> codereliction_suite(const Instance& in) {
  Obj X = in.X, Y = in.Y;
  std::vector<Equation> q;
  q.push_back({"eta-counit",
               [X](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 return {compose(m.eps(X), m.eta(X)), id(X, m.r())};
               },
               "η := 0", mut([](Subject& s) { s.m.eta = zeroed(s.m.eta); })});
  q.push_back({"eta-comultiplication",
               [X](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 Obj b = m.obj(X);
                 Mor rhs = compose({m.nabla(b), tensor_mor(m.delta(X), m.eta(b)),
                                    tensor_mor(m.u(X), m.eta(X))});
                 return {compose(m.delta(X), m.eta(X)), rhs};
               },
               "η := 0 at !X", mut([X](Subject& s) { s.m.eta = zeroed_at(s.m.eta, s.m.obj(X)); })});
  q.push_back({"monoidal-rule",
               [X, Y](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 const Rig& r = m.r();
                 Mor lhs = compose(m.m_tensor(X, Y), tensor_mor(m.eta(X), id(m.obj(Y), r)));
                 Mor rhs = compose(m.eta(tensor(X, Y)), tensor_mor(id(X, r), m.eps(Y)));
                 return {lhs, rhs};
               },
               "m⊗ := 0", mut([](Subject& s) {
                 auto mt = s.m.m_tensor;
                 s.m.m_tensor = [mt](const Obj& x, const Obj& y) { return zero_like(mt(x, y)); };
               })});
  return q;
}

std::vector<Equation> monoidal_suite(const Instance& in) {
  Obj X = in.X, Y = in.Y, Z = in.Z;
  Obj I = unit_object();
  std::vector<Equation> q;
  auto mI0 = mut([](Subject& s) {
    auto mi = s.m.m_unit;
    s.m.m_unit = [mi]() { return zero_like(mi()); };
  });
  auto mt0 = mut([](Subject& s) {
    auto mt = s.m.m_tensor;
    s.m.m_tensor = [mt](const Obj& x, const Obj& y) { return zero_like(mt(x, y)); };
  });
  auto mt0_at = [](Obj a, Obj b) {
    std::string ka = a->key(), kb = b->key();
    return mut([ka, kb](Subject& s) {
      auto mt = s.m.m_tensor;
      s.m.m_tensor = [mt, ka, kb](const Obj& x, const Obj& y) {
        Mor f = mt(x, y);
        return x->key() == ka && y->key() == kb ? zero_like(f) : f;
      };
    });
  };
  q.push_back({"eps-unit",
               [I](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 return {compose(m.eps(I), m.m_unit()), id(I, m.r())};
               },
               "m_I := 0", mI0});
  q.push_back({"eps-tensor",
               [X, Y](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 return {compose(m.eps(tensor(X, Y)), m.m_tensor(X, Y)),
                         tensor_mor(m.eps(X), m.eps(Y))};
               },
               "m⊗ := 0", mt0});
  q.push_back({"delta-unit",
               [I](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 return {compose(m.delta(I), m.m_unit()), compose(m.fmap(m.m_unit()), m.m_unit())};
               },
               "δ := 0 at I", mut([I](Subject& s) { s.m.delta = zeroed_at(s.m.delta, I); })});
  q.push_back({"delta-tensor",
               [X, Y](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 Mor mxy = m.m_tensor(X, Y);
                 Mor rhs = compose({m.fmap(mxy), m.m_tensor(m.obj(X), m.obj(Y)),
                                    tensor_mor(m.delta(X), m.delta(Y))});
                 return {compose(m.delta(tensor(X, Y)), mxy), rhs};
               },
               "m⊗ := 0 at (!X,!Y)", [mt0_at, X, Y](const Subject& s) {
                 return mt0_at(s.m.obj(X), s.m.obj(Y))(s);
               }});
  q.push_back({"e-unit",
               [I](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 return {compose(m.e(I), m.m_unit()), id(I, m.r())};
               },
               "m_I := 0", mI0});
  q.push_back({"Delta-unit",
               [I](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 return {compose(m.Delta(I), m.m_unit()), tensor_mor(m.m_unit(), m.m_unit())};
               },
               "Δ := 0", mut([](Subject& s) { s.m.Delta = zeroed(s.m.Delta); })});
  q.push_back({"e-tensor",
               [X, Y](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 return {compose(m.e(tensor(X, Y)), m.m_tensor(X, Y)), tensor_mor(m.e(X), m.e(Y))};
               },
               "m⊗ := 0", mt0});
  q.push_back({"Delta-tensor",
               [X, Y](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 const Rig& r = m.r();
                 Obj bx = m.obj(X), by = m.obj(Y);
                 Mor mxy = m.m_tensor(X, Y);
                 Mor mid = tensor_mor({id(bx, r), symmetry(bx, by, r), id(by, r)});
                 Mor rhs = compose({tensor_mor(mxy, mxy), mid, tensor_mor(m.Delta(X), m.Delta(Y))});
                 return {compose(m.Delta(tensor(X, Y)), mxy), rhs};
               },
               "Δ := 0 at X⊗Y",
               mut([X, Y](Subject& s) { s.m.Delta = zeroed_at(s.m.Delta, tensor(X, Y)); })});
  q.push_back({"e-coalgebra-map",
               [X](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 return {compose(m.m_unit(), m.e(X)), compose(m.fmap(m.e(X)), m.delta(X))};
               },
               "m_I := 0", mI0});
  q.push_back({"Delta-coalgebra-map",
               [X](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 Obj b = m.obj(X);
                 Mor lhs = compose({m.m_tensor(b, b), tensor_mor(m.delta(X), m.delta(X)), m.Delta(X)});
                 return {lhs, compose(m.fmap(m.Delta(X)), m.delta(X))};
               },
               "m⊗ := 0", mt0});
  q.push_back({"unit-left",
               [I, X](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 return {compose(m.m_tensor(I, X), tensor_mor(m.m_unit(), id(m.obj(X), m.r()))),
                         id(m.obj(X), m.r())};
               },
               "m_I := 0", mI0});
  q.push_back({"unit-right",
               [I, X](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 return {compose(m.m_tensor(X, I), tensor_mor(id(m.obj(X), m.r()), m.m_unit())),
                         id(m.obj(X), m.r())};
               },
               "m_I := 0", mI0});
  q.push_back({"associativity",
               [X, Y, Z](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 const Rig& r = m.r();
                 Mor lhs = compose(m.m_tensor(tensor(X, Y), Z),
                                   tensor_mor(m.m_tensor(X, Y), id(m.obj(Z), r)));
                 Mor rhs = compose(m.m_tensor(X, tensor(Y, Z)),
                                   tensor_mor(id(m.obj(X), r), m.m_tensor(Y, Z)));
                 return {lhs, rhs};
               },
               "m⊗ := 0 at (X⊗Y,Z)", mt0_at(tensor(X, Y), Z)});
  q.push_back({"symmetry",
               [X, Y](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 const Rig& r = m.r();
                 Mor lhs = compose(m.fmap(symmetry(X, Y, r)), m.m_tensor(X, Y));
                 Mor rhs = compose(m.m_tensor(Y, X), symmetry(m.obj(X), m.obj(Y), r));
                 return {lhs, rhs};
               },
               "m⊗ := 0 at (Y,X)", mt0_at(Y, X)});
  return q;
}

std::vector<Equation> seely_suite(const Instance& in) {
  Obj X = in.X, Y = in.Y;
  std::vector<Equation> q;
  auto u0 = mut([](Subject& s) { s.m.u = zeroed(s.m.u); });
  auto n0 = mut([](Subject& s) { s.m.nabla = zeroed(s.m.nabla); });
  q.push_back({"storage-top",
               [X, Y](const Subject& s) -> Sides {
                 SeelyMaps sm = seely_maps(s.m, X, Y);
                 return {compose(sm.chi_top, sm.cochi_top), id(unit_object(), s.m.r())};
               },
               "u := 0", u0});
  q.push_back({"costorage-top",
               [X, Y](const Subject& s) -> Sides {
                 SeelyMaps sm = seely_maps(s.m, X, Y);
                 return {compose(sm.cochi_top, sm.chi_top), id(s.m.obj(zero_object()), s.m.r())};
               },
               "u := 0", u0});
  q.push_back({"storage",
               [X, Y](const Subject& s) -> Sides {
                 SeelyMaps sm = seely_maps(s.m, X, Y);
                 return {compose(sm.chi, sm.cochi), id(sm.cochi->src(), s.m.r())};
               },
               "∇ := 0", n0});
  q.push_back({"costorage",
               [X, Y](const Subject& s) -> Sides {
                 SeelyMaps sm = seely_maps(s.m, X, Y);
                 return {compose(sm.cochi, sm.chi), id(sm.chi->src(), s.m.r())};
               },
               "∇ := 0", n0});
  return q;
}

std::vector<Equation> morphism_suite(const Instance& in, bool differential, const Subject& s0) {
  Obj X = in.X, Y = in.Y;
  Obj XX = biproduct(X, X);
  std::vector<Equation> q;
  auto phi0 = mut([](Subject& s) { s.phi->phi = zeroed(s.phi->phi); });
  q.push_back({"counit",
               [X](const Subject& s) -> Sides {
                 const ModalityMorphism& p = *s.phi;
                 return {compose(p.to.eps(X), p.phi(X)), p.from.eps(X)};
               },
               "φ := 0", phi0});
  q.push_back({"comultiplication",
               [X](const Subject& s) -> Sides {
                 const ModalityMorphism& p = *s.phi;
                 Mor phiphi = compose(p.to.fmap(p.phi(X)), p.phi(p.from.obj(X)));
                 return {compose(p.to.delta(X), p.phi(X)), compose(phiphi, p.from.delta(X))};
               },
               "φ := 0 at M X", mut([X](Subject& s) {
                 s.phi->phi = zeroed_at(s.phi->phi, s.phi->from.obj(X));
               })});
  q.push_back({"comonoid-counit",
               [X](const Subject& s) -> Sides {
                 const ModalityMorphism& p = *s.phi;
                 return {compose(p.to.e(X), p.phi(X)), p.from.e(X)};
               },
               "e of the target := 0", mut([](Subject& s) { s.phi->to.e = zeroed(s.phi->to.e); })});
  q.push_back({"comonoid-comultiplication",
               [X](const Subject& s) -> Sides {
                 const ModalityMorphism& p = *s.phi;
                 Mor f = p.phi(X);
                 return {compose(p.to.Delta(X), f), compose(tensor_mor(f, f), p.from.Delta(X))};
               },
               "Δ of the target := 0",
               mut([](Subject& s) { s.phi->to.Delta = zeroed(s.phi->to.Delta); })});
  q.push_back({"naturality",
               [X, XX](const Subject& s) -> Sides {
                 const ModalityMorphism& p = *s.phi;
                 Mor f = sample_f(X, p.to.r());
                 return {compose(p.phi(XX), p.from.fmap(f)), compose(p.to.fmap(f), p.phi(X))};
               },
               "φ := 0 at X⊕X", mut([XX](Subject& s) { s.phi->phi = zeroed_at(s.phi->phi, XX); })});
  if (s0.phi->from.has_monoidal() && s0.phi->to.has_monoidal()) {
    q.push_back({"monoidal-unit",
                 [](const Subject& s) -> Sides {
                   const ModalityMorphism& p = *s.phi;
                   return {compose(p.phi(unit_object()), p.from.m_unit()), p.to.m_unit()};
                 },
                 "φ := 0", phi0});
    q.push_back({"monoidal-tensor",
                 [X, Y](const Subject& s) -> Sides {
                   const ModalityMorphism& p = *s.phi;
                   return {compose(p.phi(tensor(X, Y)), p.from.m_tensor(X, Y)),
                           compose(p.to.m_tensor(X, Y), tensor_mor(p.phi(X), p.phi(Y)))};
                 },
                 "φ := 0 at X⊗Y",
                 mut([X, Y](Subject& s) { s.phi->phi = zeroed_at(s.phi->phi, tensor(X, Y)); })});
  }
  if (differential) {
    q.push_back({"deriving",
                 [X](const Subject& s) -> Sides {
                   const ModalityMorphism& p = *s.phi;
                   Mor f = p.phi(X);
                   return {compose(p.to.d(X), tensor_mor(f, id(X, p.to.r()))),
                           compose(f, p.from.d(X))};
                 },
                 "d of the target := 0",
                 mut([](Subject& s) { s.phi->to.d = zeroed(s.phi->to.d); })});
  }
  return q;
}

Sides commuting_sides(const ActionData& a) {
  const Rig& r = a.act->rig();
  Mor twice = compose(a.act, tensor_mor(a.act, identity(a.base, r)));
  Mor swapped = compose(twice, tensor_mor(identity(a.carrier, r), symmetry(a.base, a.base, r)));
  return {twice, swapped};
}

std::vector<Equation> action_lift_suite(const Instance& in) {
  Obj X = in.X;
  std::vector<Equation> q;
  auto delta_junk_mut = mut([](Subject& s) {
    Modality base = s.m;
    s.m.Delta = [base](const Obj& x) { return add(base.Delta(x), delta_junk(base, x)); };
  });
  auto breaker = mut([](Subject& s) {
    Modality base = s.m;
    s.m.d = [base](const Obj& x) { return interchange_breaker(base, base.d(x), x); };
  });
  auto pick_mut = mut([](Subject& s) {
    Modality base = s.m;
    s.m.Delta = [base](const Obj& x) { return delta_pick(base, x); };
  });
  q.push_back({"coderiving-symmetric",
               [X](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 const Rig& r = m.r();
                 Mor b = coderive(m, X);
                 Mor twice = compose(tensor_mor(b, id(X, r)), b);
                 return {twice, compose(tensor_mor(id(m.obj(X), r), symmetry(X, X, r)), twice)};
               },
               "Δ := Δ + (1⊗η∘pick)∘copy2", pick_mut});
  q.push_back({"coderiving-deriving",
               [X](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 const Rig& r = m.r();
                 Obj b = m.obj(X);
                 Mor d = m.need(m.d, "d", X);
                 Mor tail = compose({tensor_mor(d, id(X, r)), tensor_mor(id(b, r), symmetry(X, X, r)),
                                     tensor_mor(coderive(m, X), id(X, r))});
                 return {compose(coderive(m, X), d), add(id(tensor(b, X), r), tail)};
               },
               "d := 0", mut([](Subject& s) { s.m.d = zeroed(s.m.d); })});
  q.push_back({"comultiplication-coderiving",
               [X](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 const Rig& r = m.r();
                 Mor b = coderive(m, X);
                 return {compose(tensor_mor(m.Delta(X), id(X, r)), b),
                         compose(tensor_mor(id(m.obj(X), r), b), m.Delta(X))};
               },
               "Δ := Δ + (1⊗∇)∘copy3 + (1⊗u)", delta_junk_mut});
  q.push_back({"coderiving-cocommutative",
               [X](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 const Rig& r = m.r();
                 Obj bx = m.obj(X);
                 Mor b = coderive(m, X);
                 Mor lhs = compose(tensor_mor(id(bx, r), b), m.Delta(X));
                 Mor rhs = compose({tensor_mor(id(bx, r), symmetry(X, bx, r)),
                                    tensor_mor(b, id(bx, r)), m.Delta(X)});
                 return {lhs, rhs};
               },
               "Δ := Δ + (1⊗∇)∘copy3 + (1⊗u)", delta_junk_mut});
  q.push_back({"counit-coderiving",
               [X](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 return {compose(tensor_mor(m.e(X), id(X, m.r())), coderive(m, X)), m.eps(X)};
               },
               "e := 0", mut([](Subject& s) { s.m.e = zeroed(s.m.e); })});
  q.push_back({"delta-coderiving",
               [X](const Subject& s) -> Sides {
                 const Modality& m = s.m;
                 Obj b = m.obj(X);
                 return {compose(tensor_mor(m.delta(X), id(b, m.r())), m.Delta(X)),
                         compose(coderive(m, b), m.delta(X))};
               },
               "Δ := 0 at X", mut([X](Subject& s) { s.m.Delta = zeroed_at(s.m.Delta, X); })});
  q.push_back({"lift-commuting-sym",
               [X](const Subject& s) -> Sides {
                 return commuting_sides(lift_modality(s.m, sym_action(X, s.m.r())));
               },
               "d := d + d∘(d⊗1)∘((u∘e)⊗dup)", breaker});
  q.push_back({"lift-commuting-nilsquare",
               [X](const Subject& s) -> Sides {
                 return commuting_sides(lift_modality(s.m, free_nilsquare(X, s.m.r())));
               },
               "ε := ε + pick", mut([](Subject& s) {
                 Modality base = s.m;
                 s.m.eps = [base](const Obj& x) { return add(base.eps(x), pick(base, x)); };
               })});
  return q;
}

template <class F>
void parallel_for(std::size_t n, int jobs, F f) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
  for (std::size_t t = 0; t < k; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;) f(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

std::string Instance::describe(const std::string& suite) const {
  std::string out = "X=" + X->key();
  if (suite == "monoidal") return out + ", Y=" + Y->key() + ", Z=" + Z->key();
  if (suite == "seely" || suite == "codereliction" || is_morphism_suite(suite))
    return out + ", Y=" + Y->key();
  return out;
}

Instance make_instance(const std::vector<std::string>& names) {
  std::vector<std::string> y, z;
  for (const auto& n : names) {
    y.push_back(n + "'");
    z.push_back(n + "''");
  }
  return {atoms(names), atoms(y), atoms(z)};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "comonad", "coalgebra", "differential", "codereliction", "bialgebra", "monoidal",
      "seely",   "coalg-morphism", "diff-morphism", "action-lift"};
  return names;
}

bool is_morphism_suite(const std::string& suite) {
  return suite == "coalg-morphism" || suite == "diff-morphism";
}

void require_components(const std::string& suite, const Subject& s) {
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) throw MissingComponent("suite " + suite + " needs " + what);
  };
  if (is_morphism_suite(suite)) {
    need(s.phi.has_value(), "a modality morphism");
    need(s.phi->from.has_coalgebra() && s.phi->to.has_coalgebra(),
         "coalgebra structure on both modalities");
    if (suite == "diff-morphism")
      need(s.phi->from.has_deriving() && s.phi->to.has_deriving(), "d on both modalities");
    return;
  }
  const Modality& m = s.m;
  need(m.has_coalgebra(), "ε, δ, e and Δ");
  if (suite == "bialgebra" || suite == "seely") need(m.has_bialgebra(), "u and ∇");
  if (suite == "differential" || suite == "action-lift") need(m.has_deriving(), "d");
  if (suite == "codereliction")
    need(m.has_codereliction() && m.has_bialgebra() && m.has_monoidal(), "η, u, ∇ and m⊗");
  if (suite == "monoidal") need(m.has_monoidal(), "m_I and m⊗");
}

std::vector<Equation> suite_equations(const std::string& suite, const Subject& s,
                                      const Instance& inst) {
  if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
    throw std::invalid_argument("unknown suite " + suite);
  require_components(suite, s);
  if (suite == "comonad") return comonad_suite(inst);
  if (suite == "coalgebra") return coalgebra_suite(inst);
  if (suite == "differential") return differential_suite(inst);
  if (suite == "codereliction") return codereliction_suite(inst);
  if (suite == "bialgebra") return bialgebra_suite(inst);
  if (suite == "monoidal") return monoidal_suite(inst);
  if (suite == "seely") return seely_suite(inst);
  if (suite == "action-lift") return action_lift_suite(inst);
  return morphism_suite(inst, suite == "diff-morphism", s);
}

CheckReport check_equation(const Equation& eq, const Subject& s, const std::string& suite,
                           const Instance& inst, long d) {
  auto t0 = std::chrono::steady_clock::now();
  CheckReport rep;
  try {
    auto [lhs, rhs] = eq.sides(s);
    rep = check_equal(eq.id, lhs, rhs, d, eq.slack);
  } catch (const std::exception& ex) {
    rep.equation = eq.id;
    rep.weight = d;
    rep.pass = false;
    rep.error = ex.what();
  }
  rep.suite = suite;
  rep.objects = inst.describe(suite);
  rep.rig = subject_rig(s).name();
  auto t1 = std::chrono::steady_clock::now();
  rep.millis = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  return rep;
}

std::vector<CheckReport> run_suite(const std::string& suite, const Subject& s,
                                   const Instance& inst, long d, int jobs) {
  auto eqs = suite_equations(suite, s, inst);
  std::vector<CheckReport> out(eqs.size());
  parallel_for(eqs.size(), jobs, [&](std::size_t i) { out[i] = check_equation(eqs[i], s, suite, inst, d); });
  return out;
}

std::vector<CheckReport> run_mutants(const std::string& suite, const Subject& s,
                                     const Instance& inst, long d, int jobs) {
  auto eqs = suite_equations(suite, s, inst);
  std::vector<CheckReport> out(eqs.size());
  parallel_for(eqs.size(), jobs, [&](std::size_t i) {
    CheckReport rep;
    try {
      Subject ms = eqs[i].mutate(s);
      rep = check_equation(eqs[i], ms, suite, inst, d);
    } catch (const std::exception& ex) {
      rep.suite = suite;
      rep.pass = false;
      rep.error = ex.what();
    }
    bool caught = !rep.pass && rep.error.empty() && rep.witness.has_value();
    rep.equation = eqs[i].id + " under " + eqs[i].mutation;
    rep.pass = caught;
    out[i] = rep;
  });
  return out;
}

bool all_pass(const std::vector<CheckReport>& rs) {
  return std::all_of(rs.begin(), rs.end(), [](const CheckReport& r) { return r.pass; });
}

Capabilities earn_capabilities(Modality& m, const Instance& inst, long d, int jobs) {
  Capabilities c;
  Subject s{m, std::nullopt};
  if (m.has_coalgebra())
    c.coalgebra = all_pass(run_suite("comonad", s, inst, d, jobs)) &&
                  all_pass(run_suite("coalgebra", s, inst, d, jobs));
  if (c.coalgebra && m.has_bialgebra()) c.bialgebra = all_pass(run_suite("bialgebra", s, inst, d, jobs));
  if (c.coalgebra && m.has_monoidal()) c.monoidal = all_pass(run_suite("monoidal", s, inst, d, jobs));
  if (c.coalgebra && m.has_deriving())
    c.differential = all_pass(run_suite("differential", s, inst, d, jobs));
  m.caps = c;
  return c;
}

}  // namespace dm
