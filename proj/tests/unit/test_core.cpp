#include "diffmod/actions.hpp"
#include "diffmod/morphism.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace dm;

namespace {

const Rig& B = Rig::get(RigKind::Bool);
const Rig& N = Rig::get(RigKind::Nat);
const Rig& Z2 = Rig::get(RigKind::Z2);

Label A(const char* n) { return Label::atom(n); }

Mor rel(const Obj& s, const Obj& t, std::vector<std::pair<Label, Label>> ps, const Rig& r = B,
        Value c = 1) {
  return basis_map(s, t, "R", r,
                   [ps, c, &r](const Label& x) {
                     LinComb out;
                     for (const auto& [a, b] : ps)
                       if (a == x) out.add(b, c, r);
                     return out;
                   },
                   Shift::none());
}

bool eq(const Mor& f, const Mor& g, long d) { return morphisms_equal_up_to(f, g, d).equal; }

}  // namespace

TEST_CASE("rig laws hold on every triple of a finite rig") {
  for (RigKind k : {RigKind::Bool, RigKind::Z2}) {
    const Rig& r = Rig::get(k);
    for (const auto& a : r.elements())
      for (const auto& b : r.elements())
        for (const auto& c : r.elements()) {
          CHECK(r.add(a, b) == r.add(b, a));
          CHECK(r.mul(a, b) == r.mul(b, a));
          CHECK(r.add(r.add(a, b), c) == r.add(a, r.add(b, c)));
          CHECK(r.mul(r.mul(a, b), c) == r.mul(a, r.mul(b, c)));
          CHECK(r.mul(a, r.add(b, c)) == r.add(r.mul(a, b), r.mul(a, c)));
          CHECK(r.mul(a, 0) == 0);
          CHECK(r.mul(a, 1) == a);
          CHECK(r.add(a, 0) == a);
        }
  }
}

TEST_CASE("rig laws on random nat and int triples") {
  std::mt19937_64 gen(7);
  auto big = [&](bool sign) {
    Value v = gen();
    v = (v << 64) + gen();  // past 64 bits on purpose
    if (sign && (gen() & 1)) v = -v;
    return v;
  };
  for (RigKind k : {RigKind::Nat, RigKind::Int}) {
    const Rig& r = Rig::get(k);
    for (int i = 0; i < 1000; ++i) {
      Value a = big(k == RigKind::Int), b = big(k == RigKind::Int), c = big(k == RigKind::Int);
      REQUIRE(r.valid(a));
      CHECK(r.add(a, b) == r.add(b, a));
      CHECK(r.mul(a, b) == r.mul(b, a));
      CHECK(r.add(r.add(a, b), c) == r.add(a, r.add(b, c)));
      CHECK(r.mul(r.mul(a, b), c) == r.mul(a, r.mul(b, c)));
      CHECK(r.mul(a, r.add(b, c)) == r.add(r.mul(a, b), r.mul(a, c)));
      CHECK(r.mul(a, 0) == 0);
      CHECK(r.mul(a, 1) == a);
    }
  }
}

TEST_CASE("rig arithmetic examples") {
  CHECK(B.add(1, 1) == 1);
  CHECK(Z2.add(1, 1) == 0);
  CHECK(N.mul(3, 4) == 12);
  Value two64 = Value(1) << 64;
  CHECK(N.mul(two64, two64) == (Value(1) << 128));
  CHECK(Rig::by_name("z2").kind() == RigKind::Z2);
  CHECK_THROWS_AS(Rig::by_name("real"), std::invalid_argument);
}

TEST_CASE("labels are stored canonically") {
  CHECK(Label::bag({A("b"), A("a"), A("b")}) == Label::bag({A("b"), A("b"), A("a")}));
  CHECK(Label::bag({A("b"), A("a")}).items()[0] == A("a"));
  Label p = Label::point({{A("b"), 1}, {A("a"), 1}});
  CHECK(p.items()[0] == A("a"));
  CHECK_THROWS(Label::point({{A("a"), 0}}));
  CHECK_THROWS(Label::point({{A("a"), 1}, {A("a"), 1}}));
  // Atom < Unit < Pair < Inl < Inr < Bag < Point
  std::vector<Label> order{A("z"), Label::unit(), Label::pair(A("a"), A("a")), Label::inl(A("a")),
                           Label::inr(A("a")), Label::bag({}), Label::point({})};
  CHECK(std::is_sorted(order.begin(), order.end()));
}

TEST_CASE("label weights") {
  CHECK(A("a").weight() == 0);
  CHECK(Label::unit().weight() == 0);
  Label b = Label::bag({A("a"), A("b")});
  CHECK(b.weight() == 2);
  CHECK(Label::bag({b, Label::bag({})}).weight() == 2 + 2 + 0);
  CHECK(Label::pair(b, b).weight() == 4);
  CHECK(Label::inr(b).weight() == 2);
  CHECK(Label::point({{A("a"), 1}, {b, 1}}).weight() == 1 + 3);
}

TEST_CASE("lincomb never stores zero") {
  LinComb c;
  c.add(A("a"), 0, N);
  CHECK(c.empty());
  c.add(A("a"), 1, Z2);
  c.add(A("a"), 1, Z2);
  CHECK(c.empty());
  c.add(A("a"), 2, N);
  c.add(A("a"), 3, N);
  CHECK(c.coeff(A("a")) == 5);
}

TEST_CASE("enumeration agrees with counting") {
  for (int n = 0; n <= 3; ++n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::string(1, char('a' + i)));
    Obj X = atoms(names);
    Obj S = sym_object(X);
    Obj P = point_object(X, B);
    for (long w = 0; w <= 4; ++w) {
      CHECK(S->exact(w).size() == oracle::choose(n + w - 1 + (n == 0 && w == 0), w));
      CHECK(P->exact(w).size() == oracle::choose(n, w));
      const auto& ls = S->exact(w);
      CHECK(std::is_sorted(ls.begin(), ls.end()));
      CHECK(std::adjacent_find(ls.begin(), ls.end()) == ls.end());
      for (const auto& l : ls) {
        CHECK(S->member(l));
        CHECK(l.weight() == w);
      }
    }
  }
  // z2 points have the same supports as bool points
  CHECK(point_object(atoms({"a", "b"}), Z2)->upto(2).size() == 4);
}

TEST_CASE("enumeration examples") {
  Obj X = atoms({"a"});
  std::vector<Label> want{Label::bag({}), Label::bag({A("a")}), Label::bag({A("a"), A("a")})};
  CHECK(enumerate_basis(sym_object(X), 2) == want);
  CHECK(enumerate_basis(unit_object(), 5) == std::vector<Label>{Label::unit()});
  CHECK(enumerate_basis(biproduct(X, X), 3) == std::vector<Label>{Label::inl(A("a")), Label::inr(A("a"))});
  CHECK(enumerate_basis(zero_object(), 3).empty());
}

TEST_CASE("points") {
  CHECK(points(atoms({"a", "b"}), 0, B).size() == 4);
  CHECK(points(atoms({"a"}), 0, Z2).size() == 2);
  CHECK(points(zero_object(), 3, B).size() == 1);
  CHECK_THROWS_AS(points(atoms({"a"}), 0, N), std::domain_error);
}

TEST_CASE("composition examples") {
  Obj X = atoms({"a"}), Y = atoms({"c"}), Z = atoms({"e", "f"});
  Mor R = rel(X, Y, {{A("a"), A("c")}});
  Mor Q = rel(Y, Z, {{A("c"), A("e")}, {A("c"), A("f")}});
  LinComb want;
  want.add(A("e"), 1, B);
  want.add(A("f"), 1, B);
  CHECK(compose(Q, R)->apply(A("a")) == want);

  Obj Yb = atoms({"b"}), Zc = atoms({"c"});
  Mor two = rel(X, Yb, {{A("a"), A("b")}}, N, 2);
  Mor three = rel(Yb, Zc, {{A("b"), A("c")}}, N, 3);
  CHECK(compose(three, two)->apply(A("a")).coeff(A("c")) == 6);
  CHECK_THROWS_AS(compose(R, R), ObjectMismatch);
}

TEST_CASE("hom-set examples") {
  Obj X = atoms({"a"}), Y = atoms({"b", "c"});
  Mor f = rel(X, Y, {{A("a"), A("b")}});
  Mor g = rel(X, Y, {{A("a"), A("c")}});
  CHECK(eq(add(f, zero_morphism(X, Y, B)), f, 0));
  CHECK(eq(add(f, g), rel(X, Y, {{A("a"), A("b")}, {A("a"), A("c")}}), 0));
  Mor fz = rel(X, Y, {{A("a"), A("b")}}, Z2);
  CHECK(eq(add(fz, fz), zero_morphism(X, Y, Z2), 0));
}

// Random relations between bag objects so that D actually bounds something.
TEST_CASE("category and bilinearity laws on random relations") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 12; ++trial) {
    auto obj = [&](const char* p) {
      std::vector<std::string> ns;
      int n = 1 + static_cast<int>(gen() % 3);
      for (int i = 0; i < n; ++i) ns.push_back(p + std::to_string(i));
      return sym_object(atoms(ns));
    };
    Obj X = obj("x"), Y = obj("y"), Z = obj("z"), W = obj("w");
    auto rnd = [&](const Obj& s, const Obj& t) { return oracle::hashed_relation(s, t, gen(), 3, "r"); };
    Mor f = rnd(X, Y), f2 = rnd(X, Y), g = rnd(Y, Z), g2 = rnd(Y, Z), h = rnd(Z, W), k = rnd(W, W);
    {  // Act & Assert: composition against the boolean matrix product
      auto want = oracle::rel_compose(oracle::table(g, 3), oracle::table(f, 3));
      CHECK(oracle::table(compose(g, f), 3) == want);
    }
    CHECK(eq(compose(compose(h, g), f), compose(h, compose(g, f)), 3));
    CHECK(eq(compose(identity(Y, B), f), f, 3));
    CHECK(eq(compose(f, identity(X, B)), f, 3));
    CHECK(eq(compose(g, add(f, f2)), add(compose(g, f), compose(g, f2)), 3));
    CHECK(eq(compose(add(g, g2), f), add(compose(g, f), compose(g2, f)), 3));
    CHECK(eq(tensor_mor(add(f, f2), k), add(tensor_mor(f, k), tensor_mor(f2, k)), 3));
    CHECK(eq(tensor_mor(compose(g, f), identity(W, B)),
             compose(tensor_mor(g, identity(W, B)), tensor_mor(f, identity(W, B))), 3));
  }
}

TEST_CASE("symmetry and strict tensor") {
  Obj X = atoms({"a"}), Y = atoms({"c"});
  CHECK(symmetry(X, Y, B)->apply(Label::pair(A("a"), A("c"))) ==
        LinComb::single(Label::pair(A("c"), A("a"))));
  CHECK(eq(compose(symmetry(Y, X, B), symmetry(X, Y, B)), identity(tensor(X, Y), B), 0));

  Obj P = sym_object(atoms({"p"})), Q = sym_object(atoms({"q"})), R = sym_object(atoms({"r"}));
  CHECK(tensor(P, tensor(Q, R))->key() == tensor(tensor(P, Q), R)->key());
  CHECK(tensor(P, unit_object())->key() == P->key());
  {  // Act & Assert: hexagon σ_{P,Q⊗R} = (Q⊗σ_{P,R})∘(σ_{P,Q}⊗R)
    Mor lhs = symmetry(P, tensor(Q, R), B);
    Mor rhs = compose(tensor_mor(identity(Q, B), symmetry(P, R, B)),
                      tensor_mor(symmetry(P, Q, B), identity(R, B)));
    CHECK(eq(lhs, rhs, 2));
  }
  {  // Act & Assert: σ_{P,I} is the identity
    CHECK(eq(symmetry(P, unit_object(), B), identity(P, B), 2));
  }
  {  // Act & Assert: tensor_mor(id, f) acts on the second factor
    Mor f = oracle::hashed_relation(Q, R, 5, 2, "f");
    Mor t = tensor_mor(identity(P, B), f);
    for (const auto& l : tensor(P, Q)->upto(2)) {
      LinComb want;
      for (const auto& [y, v] : f->apply(l.second())) want.add(Label::pair(l.first(), y), v, B);
      CHECK(t->apply(l) == want);
    }
  }
}

TEST_CASE("biproduct laws") {
  Obj X = sym_object(atoms({"a"})), Y = sym_object(atoms({"b"}));
  Biproduct bp = biproduct_maps(X, Y, B);
  CHECK(eq(compose(bp.out0, bp.in0), identity(X, B), 3));
  CHECK(eq(compose(bp.out1, bp.in0), zero_morphism(X, Y, B), 3));
  CHECK(eq(add(compose(bp.in0, bp.out0), compose(bp.in1, bp.out1)), identity(bp.obj, B), 3));
  Biproduct xx = biproduct_maps(X, X, B);
  CHECK(eq(compose(copairing(identity(X, B), identity(X, B)), xx.in0), identity(X, B), 3));
  CHECK(eq(compose(xx.out1, pairing(identity(X, B), identity(X, B))), identity(X, B), 3));
}

TEST_CASE("comparison reports the first differing label") {
  Obj X = atoms({"a", "b"});
  auto c = morphisms_equal_up_to(identity(X, B), identity(X, B), 3);
  CHECK(c.equal);
  c = morphisms_equal_up_to(identity(X, B), zero_morphism(X, X, B), 3);
  CHECK_FALSE(c.equal);
  CHECK(*c.witness == A("a"));
  CHECK(morphisms_equal_up_to(identity(zero_object(), B), zero_morphism(zero_object(), zero_object(), B), 3).equal);
}

TEST_CASE("declared shifts are enforced") {
  Obj X = atoms({"a"});
  Obj S = sym_object(X);
  Mor liar = basis_map(X, S, "liar", B, [](const Label&) { return LinComb::single(Label::bag({Label::atom("a")})); },
                       Shift::exact(0));
  CHECK_THROWS_AS(liar->apply(A("a")), std::logic_error);
  SymAlg sa = symmetric_algebra(X, B);
  // Δ^S is finite but ρ-like maps are not; an unbounded window on an
  // infinite column must refuse
  Mor inf = make_mor(X, S, "all", B,
                     [S](const Label&, const Window& w) {
                       LinComb out;
                       for (const auto& l : S->upto(*w.weight)) out.add(l, 1, Rig::get(RigKind::Bool));
                       return out;
                     },
                     Shift{0, std::nullopt}, nullptr, false);
  CHECK_THROWS_AS(inf->apply(A("a")), TruncationExceeded);
  CHECK(inf->apply(A("a"), Window::upto(2)).size() == 3);
}

TEST_CASE("memoize is observationally invisible") {
  Obj S = sym_object(atoms({"a", "b"}));
  Mor f = oracle::hashed_relation(S, S, 3, 3, "f");
  Mor m = memoize(f);
  CHECK(eq(f, m, 3));
  CHECK(eq(f, m, 3));
}
