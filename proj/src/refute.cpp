#include "diffmod/verifier.hpp"

#include <map>

namespace dm {

namespace {

std::vector<std::string> atom_names(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

Mor relation_mor(const Relation& rel, const Obj& src, const Obj& tgt, const Rig& r) {
  std::map<Label, LinComb> cols;
  for (const auto& [a, b] : rel) cols[a].add(b, Value(1), r);
  return basis_map(
      src, tgt, "d?", r,
      [cols](const Label& l) {
        auto it = cols.find(l);
        return it == cols.end() ? LinComb() : it->second;
      },
      Shift::none());
}

const char* kRuleOrder[] = {"constant", "linear", "product", "interchange", "chain"};

}  // namespace

std::pair<Obj, Obj> deriving_search_space(int xsize) {
  Modality P = points_modality(Rig::get(RigKind::Bool));
  Obj X = atoms(atom_names(xsize));
  return {tensor(P.obj(X), X), P.obj(X)};
}

std::vector<CheckReport> check_deriving_candidate(const Relation& rel, int xsize, long d) {
  const Rig& r = Rig::get(RigKind::Bool);
  Modality P = points_modality(r);
  Instance inst = make_instance(atom_names(xsize));
  auto [src, tgt] = deriving_search_space(xsize);
  Mor cand = relation_mor(rel, src, tgt, r);
  std::string xkey = inst.X->key();
  // Only the component at X is a candidate; the chain rule also asks for
  // d at PX, which a single relation does not determine.
  P.d = [cand, xkey](const Obj& x) {
    if (x->key() != xkey) throw MissingComponent("candidate d is only given at X = " + xkey);
    return cand;
  };
  Subject s{P, std::nullopt};
  auto eqs = suite_equations("differential", s, inst);
  std::vector<CheckReport> out;
  for (const char* id : kRuleOrder) {
    auto it = std::find_if(eqs.begin(), eqs.end(), [id](const Equation& e) { return e.id == id; });
    CheckReport rep = check_equation(*it, s, "refute", inst, d);
    out.push_back(rep);
    if (!rep.pass) break;
  }
  return out;
}

Refutation refute_deriving(int xsize, long d) {
  if (xsize < 1) throw std::invalid_argument("refute_deriving: X needs at least one atom");
  if (xsize > 2) throw std::invalid_argument("search space too large");
  const Rig& r = Rig::get(RigKind::Bool);
  auto [src, tgt] = deriving_search_space(xsize);
  std::vector<Label> srcs = src->upto(2 * xsize + 1), tgts = tgt->upto(2 * xsize);
  Refutation res;

  if (xsize == 1) {
    res.method = "exhaustive";
    std::vector<std::pair<Label, Label>> cells;
    for (const auto& a : srcs)
      for (const auto& b : tgts) cells.emplace_back(a, b);
    std::uint64_t n = std::uint64_t{1} << cells.size();
    for (std::uint64_t mask = 0; mask < n; ++mask) {
      Relation rel;
      for (std::size_t i = 0; i < cells.size(); ++i)
        if (mask >> i & 1) rel.push_back(cells[i]);
      auto reps = check_deriving_candidate(rel, xsize, d);
      ++res.candidates_tested;
      if (reps[0].pass) ++res.pass_constant;
      if (reps.size() > 1 && reps[1].pass) ++res.pass_linear;
      if (all_pass(reps) && reps.size() == 5) res.survivors.push_back(rel);
    }
    return res;
  }

  // The constant and linear rules only look at one column at a time, so
  // a relation passes both iff each of its columns does.
  res.method = "columnwise";
  Modality P = points_modality(r);
  Obj X = atoms(atom_names(xsize));
  Mor e = P.e(X), eps = P.eps(X);
  std::uint64_t per_col = std::uint64_t{1} << tgts.size();
  res.candidates_tested = 1;
  res.pass_constant = 1;
  res.pass_linear = 1;
  std::vector<std::vector<LinComb>> good(srcs.size());
  for (std::size_t c = 0; c < srcs.size(); ++c) {
    res.candidates_tested *= per_col;
    const Label& l = srcs[c];
    LinComb want = LinComb::single(l.second());  // (e⊗1)(p, x) = x, e being total
    std::uint64_t n_const = 0, n_lin = 0;
    for (std::uint64_t mask = 0; mask < per_col; ++mask) {
      LinComb col;
      for (std::size_t i = 0; i < tgts.size(); ++i)
        if (mask >> i & 1) col.add(tgts[i], Value(1), r);
      LinComb ec, epsc;
      for (const auto& [t, v] : col) {
        ec.add_scaled(e->apply(t), v, r);
        epsc.add_scaled(eps->apply(t), v, r);
      }
      if (!ec.empty()) continue;
      ++n_const;
      if (epsc != want) continue;
      ++n_lin;
      good[c].push_back(col);
    }
    res.pass_constant *= n_const;
    res.pass_linear *= n_lin;
  }
  if (res.pass_linear > 0 && res.pass_linear <= 4096) {
    std::vector<std::size_t> idx(srcs.size(), 0);
    while (true) {
      Relation rel;
      for (std::size_t c = 0; c < srcs.size(); ++c)
        for (const auto& [t, v] : good[c][idx[c]]) rel.emplace_back(srcs[c], t);
      auto reps = check_deriving_candidate(rel, xsize, d);
      if (all_pass(reps) && reps.size() == 5) res.survivors.push_back(rel);
      std::size_t c = 0;
      while (c < idx.size() && ++idx[c] == good[c].size()) idx[c++] = 0;
      if (c == idx.size()) break;
    }
  } else if (res.pass_linear > 0) {
    throw std::runtime_error("too many constant-and-linear survivors to check the other rules");
  }
  return res;
}

std::vector<CheckReport> lemma27_witness(long d) {
  const Rig& r = Rig::get(RigKind::Z2);
  FreeDiff fd = free_differential(points_modality(r));
  const Modality& m = fd.result;
  Obj X = atoms({"x"});
  Obj C = atoms({"1", "d"});
  Obj PD = m.obj(X);
  Label one = Label::atom("1"), dd = Label::atom("d"), x = Label::atom("x");
  Obj I = unit_object();

  Mor eC = basis_map(C, I, "eC", r,
                     [one](const Label& l) { return l == one ? LinComb::single(Label::unit()) : LinComb(); },
                     Shift::exact(0));
  Mor DeltaC = basis_map(
      C, tensor(C, C), "ΔC", r,
      [one, &r](const Label& l) {
        LinComb out;
        out.add(Label::pair(l, one), Value(1), r);
        if (l != one) out.add(Label::pair(one, l), Value(1), r);
        return out;
      },
      Shift::exact(0));

  // ι0(B) = (Point∅, B)
  auto iota0 = [](std::vector<Label> bag) { return Label::pair(Label::point({}), Label::bag(std::move(bag))); };
  auto make_f = [&](bool prime) {
    return basis_map(
        C, PD, prime ? "f'" : "f", r,
        [=, &r](const Label& l) {
          if (l == one) return LinComb::single(iota0({}));
          LinComb out;
          out.add(iota0({x}), Value(1), r);
          if (prime) out.add(iota0({x, x}), Value(1), r);
          return out;
        },
        Shift{0, 2});
  };
  Mor f = make_f(false), fp = make_f(true);

  std::vector<CheckReport> out;
  auto tag = [&](CheckReport rep) {
    rep.suite = "lemma27";
    rep.objects = "C=" + C->key() + ", X=" + X->key();
    rep.rig = r.name();
    rep.weight = d;
    out.push_back(rep);
  };
  for (const auto& [g, name] : {std::make_pair(f, std::string("f")), std::make_pair(fp, std::string("f'"))}) {
    tag(check_equal(name + " preserves Δ", compose(m.Delta(X), g), compose(tensor_mor(g, g), DeltaC), d));
    tag(check_equal(name + " preserves e", compose(m.e(X), g), eC, d));
  }
  tag(check_equal("f and f' agree after ε∂", compose(m.eps(X), f), compose(m.eps(X), fp), d));
  CheckReport differ = check_equal("f != f'", f, fp, d);
  differ.pass = !differ.pass && differ.error.empty();
  tag(differ);
  return out;
}

}  // namespace dm
