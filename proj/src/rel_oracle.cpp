// Closed-form relations for P∂ over bool, written directly on (set, bag)
// labels without going through the construction.
#include "diffmod/verifier.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace dm {

namespace {

using Set = std::set<Label>;

Label mk(const Set& u, const std::vector<Label>& b) {
  std::vector<std::pair<Label, Value>> es;
  for (const auto& x : u) es.emplace_back(x, Value(1));
  return Label::pair(Label::point(std::move(es)), Label::bag(b));
}

Set set_of(const Label& l) {
  const auto& ks = l.first().items();
  return Set(ks.begin(), ks.end());
}

const std::vector<Label>& bag_of(const Label& l) { return l.second().items(); }

LinComb as_comb(const Set& s) {
  LinComb out;
  const Rig& r = Rig::get(RigKind::Bool);
  for (const auto& l : s) out.add(l, Value(1), r);
  return out;
}

Mor oracle(const Obj& src, const Obj& tgt, const std::string& name, std::function<Set(const Label&)> f) {
  return basis_map(src, tgt, name, Rig::get(RigKind::Bool),
                   [f](const Label& l) { return as_comb(f(l)); }, Shift::none());
}

// All sub-multisets given as position subsets; returns (chosen, rest).
void for_each_split(const std::vector<Label>& b,
                    const std::function<void(const std::vector<Label>&, const std::vector<Label>&)>& f) {
  std::size_t n = b.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<Label> l, r;
    for (std::size_t i = 0; i < n; ++i) (mask >> i & 1 ? l : r).push_back(b[i]);
    f(l, r);
  }
}

// Decompositions of b into non-empty bags, by recursion on the block that
// contains the first remaining member.
void for_each_decomposition(std::vector<Label> rest, std::vector<Label>& blocks,
                            const std::function<void(const std::vector<Label>&)>& f) {
  if (rest.empty()) {
    f(blocks);
    return;
  }
  Label first = rest[0];
  std::vector<Label> others(rest.begin() + 1, rest.end());
  for_each_split(others, [&](const std::vector<Label>& with, const std::vector<Label>& without) {
    std::vector<Label> blk = with;
    blk.push_back(first);
    blocks.push_back(Label::bag(blk));
    for_each_decomposition(without, blocks, f);
    blocks.pop_back();
  });
}

CheckReport compare(const std::string& name, const Mor& generic, const Mor& closed, long d,
                    const std::string& objects) {
  CheckReport rep = check_equal(name, generic, closed, d);
  rep.suite = "rel-oracle";
  rep.objects = objects;
  return rep;
}

}  // namespace

std::vector<CheckReport> rel_oracle_compare(const std::vector<std::string>& xn,
                                            const std::vector<std::string>& yn, long d,
                                            long tensor_weight) {
  if (xn.size() > 3 || yn.size() > 3) throw std::invalid_argument("rel oracle: at most 3 atoms per object");
  if (xn.empty() || yn.empty()) throw std::invalid_argument("rel oracle: objects need atoms");
  const Rig& r = Rig::get(RigKind::Bool);
  FreeDiff fd = free_differential(points_modality(r));
  const Modality& m = fd.result;
  Obj X = atoms(xn), Y = atoms(yn), I = unit_object();
  Obj PX = m.obj(X), PY = m.obj(Y), PI = m.obj(I);
  std::string objs = "X=" + X->key() + ", Y=" + Y->key();
  std::vector<CheckReport> out;

  // R : X -> Y relating x_i to y_i and y_{i+1} (indices mod |Y|).
  auto xs = X->upto(0), ys = Y->upto(0);
  std::map<Label, Set> rel;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    rel[xs[i]].insert(ys[i % ys.size()]);
    rel[xs[i]].insert(ys[(i + 1) % ys.size()]);
  }
  Mor R = oracle(X, Y, "R", [rel](const Label& x) { return rel.at(x); });
  out.push_back(compare("functor", m.fmap(R), oracle(PX, PY, "P∂R", [rel](const Label& l) {
                          Set img;
                          for (const auto& x : set_of(l)) img.insert(rel.at(x).begin(), rel.at(x).end());
                          std::set<std::vector<Label>> bags{{}};
                          for (const auto& x : bag_of(l)) {
                            std::set<std::vector<Label>> next;
                            for (const auto& b : bags)
                              for (const auto& y : rel.at(x)) {
                                auto nb = b;
                                nb.push_back(y);
                                std::sort(nb.begin(), nb.end());
                                next.insert(nb);
                              }
                            bags = next;
                          }
                          Set res;
                          for (const auto& b : bags) res.insert(mk(img, b));
                          return res;
                        }),
                        d, objs));

  out.push_back(compare("epsilon", m.eps(X), oracle(PX, X, "ε∂", [](const Label& l) {
                          const auto& b = bag_of(l);
                          if (b.size() == 1) return Set{b[0]};
                          if (b.empty()) return set_of(l);
                          return Set{};
                        }),
                        d, objs));

  out.push_back(compare("delta", fd.delta_generic(X), oracle(PX, m.obj(PX), "δ∂", [](const Label& l) {
                          Set u = set_of(l);
                          Set top{mk(u, {})};
                          Set res;
                          std::vector<Label> blocks;
                          for_each_decomposition(bag_of(l), blocks, [&](const std::vector<Label>& bs) {
                            std::vector<Label> members;
                            for (const auto& b : bs) members.push_back(mk(u, b.items()));
                            res.insert(mk(top, members));
                          });
                          return res;
                        }),
                        d, objs));

  out.push_back(compare("Delta", m.Delta(X), oracle(PX, tensor(PX, PX), "Δ∂", [](const Label& l) {
                          Set u = set_of(l), res;
                          for_each_split(bag_of(l), [&](const std::vector<Label>& a, const std::vector<Label>& b) {
                            res.insert(Label::pair(mk(u, a), mk(u, b)));
                          });
                          return res;
                        }),
                        d, objs));

  out.push_back(compare("e", m.e(X), oracle(PX, I, "e∂", [](const Label& l) {
                          return bag_of(l).empty() ? Set{Label::unit()} : Set{};
                        }),
                        d, objs));

  out.push_back(compare("d", m.d(X), oracle(tensor(PX, X), PX, "d∂", [](const Label& l) {
                          auto b = bag_of(l.first());
                          b.push_back(l.second());
                          return Set{mk(set_of(l.first()), b)};
                        }),
                        d, objs));

  out.push_back(compare("nabla", m.nabla(X), oracle(tensor(PX, PX), PX, "∇∂", [](const Label& l) {
                          Set u = set_of(l.first()), v = set_of(l.second());
                          u.insert(v.begin(), v.end());
                          auto b = bag_of(l.first());
                          for (const auto& y : bag_of(l.second())) b.push_back(y);
                          return Set{mk(u, b)};
                        }),
                        d, objs));

  out.push_back(compare("u", m.u(X), oracle(I, PX, "u∂", [](const Label&) { return Set{mk({}, {})}; }),
                        d, objs));

  out.push_back(compare("eta", m.eta(X), oracle(X, PX, "η∂", [](const Label& x) { return Set{mk({}, {x})}; }),
                        d, objs));

  out.push_back(compare("m_I", m.m_unit(), oracle(I, PI, "m∂I", [](const Label&) {
                          return Set{mk({Label::unit()}, {})};
                        }),
                        d, objs));

  // Partial bijection between the two bags; unmatched b's pair with an
  // element of V, unmatched c's with an element of U.
  Mor closed_m = oracle(tensor(PX, PY), m.obj(tensor(X, Y)), "m∂⊗", [](const Label& l) {
    Set u = set_of(l.first()), v = set_of(l.second());
    const auto& bs = bag_of(l.first());
    const auto& cs = bag_of(l.second());
    Set uv;
    for (const auto& a : u)
      for (const auto& b : v) uv.insert(Label::pair(a, b));
    Set res;
    std::vector<Label> acc;
    std::vector<bool> used(cs.size(), false);
    std::function<void(std::size_t)> pick_b, pick_c;
    pick_c = [&](std::size_t j) {
      if (j == cs.size()) {
        res.insert(mk(uv, acc));
        return;
      }
      if (used[j]) return pick_c(j + 1);
      for (const auto& a : u) {
        acc.push_back(Label::pair(a, cs[j]));
        pick_c(j + 1);
        acc.pop_back();
      }
    };
    pick_b = [&](std::size_t i) {
      if (i == bs.size()) return pick_c(0);
      for (std::size_t j = 0; j < cs.size(); ++j) {
        if (used[j]) continue;
        used[j] = true;
        acc.push_back(Label::pair(bs[i], cs[j]));
        pick_b(i + 1);
        acc.pop_back();
        used[j] = false;
      }
      for (const auto& b : v) {
        acc.push_back(Label::pair(bs[i], b));
        pick_b(i + 1);
        acc.pop_back();
      }
    };
    pick_b(0);
    return res;
  });
  out.push_back(compare("m_tensor", m.m_tensor(X, Y), closed_m, std::min(d, tensor_weight), objs));
  return out;
}

}  // namespace dm
