#include "diffmod/actions.hpp"

#include <algorithm>
#include <map>

namespace dm {

namespace {

Value binom(long n, long k) {
  Value r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<Label> bag_with(const Label& b, const Label& x) {
  std::vector<Label> m = b.items();
  m.push_back(x);
  return m;
}

}  // namespace

Obj sym_object(const Obj& x) { return bag_object(x, "S"); }

LinComb bag_split(const Label& b, const Rig& rig) {
  // Group equal members (items are sorted, so equal ones are adjacent).
  std::vector<std::pair<Label, long>> groups;
  for (const auto& m : b.items()) {
    if (!groups.empty() && groups.back().first == m)
      ++groups.back().second;
    else
      groups.emplace_back(m, 1);
  }
  LinComb out;
  std::vector<long> k(groups.size(), 0);
  while (true) {
    std::vector<Label> left, right;
    Value c = 1;
    for (std::size_t i = 0; i < groups.size(); ++i) {
      for (long j = 0; j < k[i]; ++j) left.push_back(groups[i].first);
      for (long j = k[i]; j < groups[i].second; ++j) right.push_back(groups[i].first);
      c *= binom(groups[i].second, k[i]);
    }
    out.add(Label::pair(Label::bag(left), Label::bag(right)), c, rig);
    std::size_t i = 0;
    while (i < groups.size() && ++k[i] > groups[i].second) k[i++] = 0;
    if (i == groups.size()) break;
  }
  return out;
}

Mor bag_fmap(const Mor& f, const Obj& src, const Obj& tgt, const std::string& name) {
  const Rig& r = f->rig();
  auto lo = f->shift().lo;
  auto hi = f->shift().hi;
  Shift sh{(lo && *lo >= 0) ? std::optional<long>(0) : std::nullopt,
           (hi && *hi <= 0) ? std::optional<long>(0) : std::nullopt};
  if (lo && hi && *lo == 0 && *hi == 0) sh = Shift::exact(0);
  return make_mor(
      src, tgt, name, r,
      [f, &r](const Label& b, const Window& w) {
        LinComb acc;
        long n = static_cast<long>(b.size());
        if ((w.size && n > *w.size) || (w.weight && n > *w.weight)) return acc;
        Window fw = w.weight ? Window::upto(*w.weight - n) : Window::full();
        acc.add(Label::bag({}), Value(1), r);
        std::map<Label, LinComb> seen;
        long remaining = n;
        for (const auto& x : b.items()) {
          --remaining;
          auto it = seen.find(x);
          if (it == seen.end()) it = seen.emplace(x, f->apply(x, fw)).first;
          LinComb next;
          for (const auto& [part, c1] : acc)
            for (const auto& [y, c2] : it->second) {
              Label nb = Label::bag(bag_with(part, y));
              if (w.weight && nb.weight() + remaining > *w.weight) continue;
              next.add(nb, r.mul(c1, c2), r);
            }
          acc = std::move(next);
          if (acc.empty()) break;
        }
        return acc.filtered(w);
      },
      sh,
      [f, lo](const Window& w) {
        std::optional<long> nmax = w.size;
        if (w.weight) nmax = nmax ? std::min(*nmax, *w.weight) : *w.weight;
        if (!w.weight) return Window{std::nullopt, nmax};
        if (lo && *lo >= 0) return Window{w.weight, nmax};
        long best = 0;
        for (long n = 1; n <= *nmax; ++n) {
          Window inner = f->reflect(Window::upto(*w.weight - n));
          if (!inner.weight) return Window{std::nullopt, nmax};
          best = std::max(best, n + n * std::max(0L, *inner.weight));
        }
        return Window{best, nmax};
      },
      f->finite());
}

Mor sym_on_morphism(const Mor& f) {
  return bag_fmap(f, sym_object(f->src()), sym_object(f->tgt()), "S" + f->name());
}

Mor SymAlg::iota(long n) const {
  std::vector<Obj> fs(static_cast<std::size_t>(n), X);
  Obj src = tensor(fs);
  std::size_t k = static_cast<std::size_t>(n);
  return basis_map(
      src, S, "ι" + std::to_string(n), u->rig(),
      [k](const Label& l) { return LinComb::single(Label::bag(unpack(l, k))); },
      Shift::exact(n));
}

SymAlg symmetric_algebra(const Obj& x, const Rig& rig) {
  SymAlg s;
  s.X = x;
  s.S = sym_object(x);
  Obj I = unit_object();
  s.u = basis_map(I, s.S, "uS", rig, [](const Label&) { return LinComb::single(Label::bag({})); },
                  Shift::exact(0));
  s.d = basis_map(
      tensor(s.S, x), s.S, "dS", rig,
      [](const Label& l) { return LinComb::single(Label::bag(bag_with(l.first(), l.second()))); },
      Shift::exact(1));
  s.eta = basis_map(x, s.S, "ηS", rig,
                    [](const Label& l) { return LinComb::single(Label::bag({l})); },
                    Shift::exact(1));
  s.nabla = basis_map(
      tensor(s.S, s.S), s.S, "∇S", rig,
      [](const Label& l) {
        std::vector<Label> m = l.first().items();
        const auto& r = l.second().items();
        m.insert(m.end(), r.begin(), r.end());
        return LinComb::single(Label::bag(std::move(m)));
      },
      Shift::exact(0));
  s.e = basis_map(
      s.S, I, "eS", rig,
      [](const Label& l) { return l.size() == 0 ? LinComb::single(Label::unit()) : LinComb(); },
      Shift::exact(0));
  s.Delta = basis_map(
      s.S, tensor(s.S, s.S), "ΔS", rig, [&rig](const Label& l) { return bag_split(l, rig); },
      Shift::exact(0));
  s.eps = basis_map(
      s.S, x, "εS", rig,
      [](const Label& l) { return l.size() == 1 ? LinComb::single(l.items()[0]) : LinComb(); },
      Shift::exact(-1));
  return s;
}

Mor universal_extend(const Mor& f, const ActionData& beta, std::optional<long> max_weight) {
  require_same(f->tgt(), beta.carrier, "universal_extend target");
  const Rig& r = f->rig();
  Obj src = tensor(f->src(), sym_object(beta.base));
  std::size_t na = f->src()->arity();
  std::size_t nb = beta.carrier->arity();
  std::size_t nx = beta.base->arity();
  Mor act = beta.act;
  auto lo_f = f->shift().lo, hi_f = f->shift().hi;
  auto lo_b = act->shift().lo, hi_b = act->shift().hi;
  bool lo_ok = lo_f && lo_b && *lo_b >= 1;
  Shift sh{lo_ok ? lo_f : std::nullopt, (hi_f && hi_b && *hi_b <= 1) ? hi_f : std::nullopt};
  Reflect refl = [lo_ok, lo_f](const Window& w) {
    if (lo_ok && w.weight) return Window::upto(*w.weight - *lo_f);
    return Window::full();
  };
  return make_mor(
      src, f->tgt(), "ext(" + f->name() + ")", r,
      [f, act, na, nb, nx, max_weight, &r](const Label& l, const Window& w) {
        if (max_weight && l.weight() > *max_weight)
          throw TruncationExceeded("truncation exceeded: extension asked at " + l.str() +
                                   " beyond weight " + std::to_string(*max_weight));
        auto [a, bag] = split(l, na, 1);
        const auto& xs = bag.items();
        std::size_t n = xs.size();
        std::vector<Window> ws(n + 1);
        ws[n] = w;
        for (std::size_t i = n; i > 0; --i) {
          Window rw = act->reflect(ws[i]);
          ws[i - 1] = Window{rw.weight ? std::optional<long>(*rw.weight - xs[i - 1].weight())
                                       : std::nullopt,
                             rw.size};
        }
        LinComb cur = f->apply(a, ws[0]);
        for (std::size_t i = 0; i < n && !cur.empty(); ++i) {
          LinComb next;
          for (const auto& [b, c] : cur) next.add_scaled(act->apply(join(b, nb, xs[i], nx), ws[i + 1]), c, r);
          cur = std::move(next);
        }
        return cur;
      },
      sh, refl, f->finite() && act->finite());
}

ActionData unit_action(const Obj& x, const Rig& rig) {
  Obj I = unit_object();
  return {I, x, zero_morphism(tensor(I, x), I, rig)};
}

ActionData boxtimes(const ActionData& a, const ActionData& b) {
  require_same(a.base, b.base, "boxtimes base");
  const Rig& r = a.act->rig();
  Obj A = a.carrier, B = b.carrier, X = a.base;
  Mor left = tensor_mor(identity(A, r), b.act);
  Mor right = compose(tensor_mor(a.act, identity(B, r)),
                      tensor_mor(identity(A, r), symmetry(B, X, r)));
  return {tensor(A, B), X, renamed(add(left, right), "⊠")};
}

ActionData free_nilsquare(const Obj& x, const Rig& rig) {
  Obj I = unit_object();
  auto bp = biproduct_maps(I, x, rig);
  Mor act = compose(bp.in1, tensor_mor(bp.out0, identity(x, rig)));
  return {bp.obj, x, renamed(act, "nil")};
}

ActionData sym_action(const Obj& x, const Rig& rig) {
  SymAlg s = symmetric_algebra(x, rig);
  return {s.S, x, s.d};
}

CheckReport is_commuting(const ActionData& a, long d) {
  const Rig& r = a.act->rig();
  Mor twice = compose(a.act, tensor_mor(a.act, identity(a.base, r)));
  Mor swapped =
      compose(twice, tensor_mor(identity(a.carrier, r), symmetry(a.base, a.base, r)));
  CheckReport rep = check_equal("commuting", twice, swapped, d);
  rep.suite = "action";
  rep.objects = a.carrier->key() + " by " + a.base->key();
  return rep;
}

Mor coderive(const Modality& m, const Obj& x) {
  Mor Delta = m.need(m.Delta, "Δ", x);
  Mor eps = m.need(m.eps, "ε", x);
  return renamed(compose(tensor_mor(identity(m.obj(x), m.r()), eps), Delta), "b");
}

ActionData lift_modality(const Modality& m, const ActionData& a) {
  const Rig& r = m.r();
  Obj A = a.carrier, X = a.base;
  Mor d = m.need(m.d, "deriving transformation", A);
  Obj bangA = m.obj(A);
  Mor act = compose({d, tensor_mor(identity(bangA, r), a.act),
                     tensor_mor(coderive(m, A), identity(X, r))});
  return {bangA, X, renamed(act, "lift")};
}

}  // namespace dm
