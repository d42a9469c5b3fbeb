// One line per acceptance criterion. Exit status is non-zero if any line
// says FAIL.
#include "diffmod/verifier.hpp"
#include "generators.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

using namespace dm;

namespace {

const Rig& B = Rig::get(RigKind::Bool);
const Rig& N = Rig::get(RigKind::Nat);

using Xs = std::vector<std::string>;
const std::vector<Xs> kSizes{{"a"}, {"a", "b"}};

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

// limit_s <= 0 means no time limit.
void criterion(int n, const std::string& what, double limit_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("threw: ") + e.what()};
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool in_time = limit_s <= 0 || s < limit_s;
  bool ok = o.ok && in_time;
  if (!ok) ++failures;
  std::ostringstream limit;
  if (limit_s > 0) limit << ", limit " << limit_s << " s";
  std::printf("%s %2d  %s  [%.2f s%s]%s%s\n", ok ? "PASS" : "FAIL", n, what.c_str(), s, limit.str().c_str(),
              o.detail.empty() ? "" : "  ", o.detail.c_str());
  std::fflush(stdout);
}

// Counts failing reports and names the first one.
struct Tally {
  int total = 0, failed = 0;
  std::string first;
  void add(const std::vector<CheckReport>& reps, const std::string& where) {
    for (const auto& r : reps) {
      ++total;
      if (!r.pass) {
        if (failed++ == 0)
          first = where + " " + r.suite + "/" + r.equation + (r.witness ? " at " + r.witness->str() : "") +
                  (r.error.empty() ? "" : " (" + r.error + ")");
      }
    }
  }
  Outcome outcome() const {
    std::string d = std::to_string(total - failed) + "/" + std::to_string(total) + " pass";
    if (failed) d += "; first failure: " + first;
    return {failed == 0 && total > 0, d};
  }
};

Subject of(const Modality& m) { return Subject{m, std::nullopt}; }

Modality pdiff() { return free_differential(points_modality(B)).result; }

bool eq(const Mor& f, const Mor& g, long d) { return morphisms_equal_up_to(f, g, d).equal; }

}  // namespace

int main() {
  criterion(1, "differential suite, free-diff(points), bool, |X| in {1,2}, D=4", 60, [] {
    Tally t;
    for (const auto& xs : kSizes) t.add(run_suite("differential", of(pdiff()), make_instance(xs), 4), xs[xs.size() - 1]);
    return t.outcome();
  });

  criterion(2, "differential + codereliction suites, bag, bool, |X| in {1,2}, D=4", 60, [] {
    Tally t;
    for (const auto& xs : kSizes)
      for (const char* s : {"differential", "codereliction"})
        t.add(run_suite(s, of(bag_modality(B)), make_instance(xs), 4), "|X|=" + std::to_string(xs.size()));
    return t.outcome();
  });

  criterion(3, "comonad, coalgebra, bialgebra suites for P, !, P-partial, bool, |X| in {1,2}, D=3", 120, [] {
    Tally t;
    for (const Modality& m : {points_modality(B), bag_modality(B), pdiff()})
      for (const auto& xs : kSizes)
        for (const char* s : {"comonad", "coalgebra", "bialgebra"})
          t.add(run_suite(s, of(m), make_instance(xs), 3), m.name);
    return t.outcome();
  });

  criterion(4, "Seely maps invertible for P, !, P-partial at |X|=|Y|=1, D=3", 0, [] {
    Tally t;
    for (const Modality& m : {points_modality(B), bag_modality(B), pdiff()}) {
      t.add(run_suite("seely", of(m), make_instance({"a"}), 3), m.name);
      SeelyMaps s = seely_maps(m, atoms({"a"}), atoms({"c"}));
      Obj lhs = tensor(m.obj(atoms({"a"})), m.obj(atoms({"c"})));
      Obj sum = m.obj(biproduct(atoms({"a"}), atoms({"c"})));
      t.add({check_equal("chi.cochi", compose(s.chi, s.cochi), identity(lhs, B), 3),
             check_equal("cochi.chi", compose(s.cochi, s.chi), identity(sum, B), 3)},
            m.name);
    }
    return t.outcome();
  });

  criterion(5, "no deriving transformation on P: 16 candidates, 0 survivors, |X|=1", 1, [] {
    Refutation r = refute_deriving(1, 3);
    // Direct set reading: columns at (∅,a) and ({a},a) are subsets of
    // {∅, {a}}. The constant rule needs every column empty; the linear
    // rule needs the union of each column to be {a}.
    std::uint64_t constant = 0, linear = 0, both = 0;
    for (unsigned mask = 0; mask < 16; ++mask) {
      bool c = mask == 0;
      bool l = (mask & 0b0010) && (mask & 0b1000);  // bit 1: (∅,a)->{a}, bit 3: ({a},a)->{a}
      constant += c;
      linear += l;
      both += c && l;
    }
    bool ok = r.candidates_tested == 16 && r.survivors.empty() && both == 0 && r.pass_constant == constant &&
              r.pass_linear == both;
    return Outcome{ok, "tested " + std::to_string(r.candidates_tested) + ", constant " +
                           std::to_string(r.pass_constant) + " (oracle " + std::to_string(constant) +
                           "), constant+linear " + std::to_string(r.pass_linear) + " (oracle " +
                           std::to_string(both) + "), survivors " + std::to_string(r.survivors.size())};
  });

  criterion(6, "closed-form relational oracle for P-partial, X=Y={a,b}, D=3 (m-tensor at D=2)", 120, [] {
    Tally t;
    auto reps = rel_oracle_compare({"a", "b"}, {"a", "b"}, 3, 2);
    t.add(reps, "rel");
    Outcome o = t.outcome();
    o.ok = o.ok && reps.size() == 11;
    return o;
  });

  criterion(7, "z2 witness: f and f' are coalgebra maps with equal counit image, f != f', D=4", 5, [] {
    Tally t;
    t.add(lemma27_witness(4), "z2");
    return t.outcome();
  });

  criterion(8, "universal property: 100 random commuting bool actions, |A|,|X| <= 2, D=3", 0, [] {
    std::mt19937_64 g(20261015);
    int bad = 0;
    std::string first;
    for (int trial = 0; trial < 100; ++trial) {
      std::size_t na = 1 + g() % 2, nx = 1 + g() % 2, nb = 1 + g() % 3;
      auto act = gen::random_commuting(g, nb, nx);
      Obj A = atoms(gen::names("a", na)), X = act.data.base;
      auto ft = gen::random_table(g, A->upto(0), act.carrier);
      Mor f = gen::table_map(A, act.data.carrier, ft, "f");
      Mor ext = universal_extend(f, act.data);
      Mor other = gen::shuffled_extension(A, act, ft, g());
      SymAlg s = symmetric_algebra(X, B);
      Mor idA = identity(A, B), idX = identity(X, B);
      auto action_map = [&](const Mor& h) {
        return eq(compose(h, tensor_mor(idA, s.d)), compose(act.data.act, tensor_mor(h, idX)), 3);
      };
      bool ok = eq(compose(ext, tensor_mor(idA, s.u)), f, 3) && action_map(ext) &&
                eq(compose(other, tensor_mor(idA, s.u)), f, 3) && action_map(other) && eq(ext, other, 3);
      if (!ok && bad++ == 0) first = "trial " + std::to_string(trial);
    }
    return Outcome{bad == 0, std::to_string(100 - bad) + "/100 instances" + (bad ? "; first " + first : "")};
  });

  criterion(9, "freeness counit: psi-sharp.zeta = id and rho-sharp.zeta = rho, X={a,b}, D=3", 0, [] {
    InitialMorphisms im = initial_morphisms(B);
    Obj X = atoms({"a", "b"});
    Tally t;
    t.add({check_equal("psi#.zeta = id", compose(im.psi_sharp(X), im.bag_diff.zeta(X)), identity(im.bag.obj(X), B), 3),
           check_equal("rho#.zeta = rho", compose(im.rho_sharp(X), im.points_diff.zeta(X)), im.rho(X), 3)},
          "X={a,b}");
    return t.outcome();
  });

  criterion(10, "round trip d -> eta -> d on the bag modality, X={a,b}, D=3", 0, [] {
    Modality bm = bag_modality(B);
    Modality via = bm;
    via.eta = [bm](const Obj& x) { return codereliction_of(bm, x); };
    Obj X = atoms({"a", "b"});
    Tally t;
    t.add({check_equal("d round trip", deriving_of(via, X), bm.d(X), 3)}, "bag");
    return t.outcome();
  });

  criterion(11, "Delta^S(Bag{a,a}): coefficient 2 on Bag{a}(x)Bag{a} over nat, 1 over bool", 0, [] {
    Label a = Label::atom("a");
    Label aa = Label::bag({a, a}), one = Label::bag({a});
    LinComb nat = symmetric_algebra(atoms({"a"}), N).Delta->apply(aa);
    LinComb bl = symmetric_algebra(atoms({"a"}), B).Delta->apply(aa);
    auto want = oracle::split_counts({a, a});
    bool ok = nat.size() == want.size() && bl.size() == want.size();
    for (const auto& [k, n] : want) ok = ok && nat.coeff(Label::pair(k.first, k.second)) == n;
    Value c2 = nat.coeff(Label::pair(one, one)), c1 = bl.coeff(Label::pair(one, one));
    ok = ok && c2 == 2 && c1 == 1;
    return Outcome{ok, "nat " + c2.str() + ", bool " + c1.str()};
  });

  criterion(12, "mutation kill rate over every suite, bool, |X|=2, D=3", 0, [] {
    Instance inst = make_instance({"a", "b"});
    Tally t;
    FreeDiff fb = free_differential(bag_modality(B));
    std::vector<Modality> mods{bag_modality(B), points_modality(B), pdiff(), fb.result};
    for (const auto& m : mods)
      for (const auto& suite : suite_names()) {
        if (is_morphism_suite(suite)) continue;
        // the generic δ∂ of the bag base is too slow for the monoidal suite
        if (m.name == "free-diff(bag)" && suite == "monoidal") continue;
        Subject s = of(m);
        try {
          require_components(suite, s);
        } catch (const MissingComponent&) {
          continue;
        }
        t.add(run_mutants(suite, s, inst, 3), m.name);
      }
    FreeDiff fp = free_differential(points_modality(B));
    InitialMorphisms im = initial_morphisms(B);
    std::vector<std::pair<std::string, ModalityMorphism>> phis{
        {"coalg-morphism", {"ζ(points)", fp.base, fp.result, fp.zeta}},
        {"coalg-morphism", {"ζ(bag)", fb.base, fb.result, fb.zeta}},
        {"coalg-morphism", {"ρ", im.points, im.bag, im.rho}},
        {"diff-morphism", {"ρ♯", im.points_diff.result, im.bag, im.rho_sharp}},
        {"diff-morphism", {"ψ♯", im.bag_diff.result, im.bag, im.psi_sharp}}};
    for (const auto& [suite, phi] : phis) t.add(run_mutants(suite, Subject{phi.to, phi}, inst, 3), phi.name);
    return t.outcome();
  });

  std::printf("%s\n", failures ? "acceptance: FAIL" : "acceptance: all criteria pass");
  return failures ? 1 : 0;
}
