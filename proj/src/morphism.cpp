#include "diffmod/morphism.hpp"

#include <algorithm>

namespace dm {

namespace {

std::optional<long> opt_add(std::optional<long> a, std::optional<long> b) {
  if (a && b) return *a + *b;
  return std::nullopt;
}

std::optional<long> opt_min(std::optional<long> a, std::optional<long> b) {
  if (a && b) return std::min(*a, *b);
  return std::nullopt;
}

std::optional<long> opt_max(std::optional<long> a, std::optional<long> b) {
  if (a && b) return std::max(*a, *b);
  return std::nullopt;
}

}  // namespace

void require_same(const Obj& a, const Obj& b, const std::string& what) {
  if (!a->same(*b)) throw ObjectMismatch(what + ": " + a->key() + " vs " + b->key());
}

Morphism::Morphism(Obj src, Obj tgt, std::string name, const Rig& rig, Column col, Shift shift,
                   Reflect reflect, bool finite)
    : src_(std::move(src)),
      tgt_(std::move(tgt)),
      name_(std::move(name)),
      rig_(&rig),
      col_(std::move(col)),
      shift_(shift),
      reflect_(reflect ? std::move(reflect) : reflect_from_shift(shift)),
      finite_(finite) {}

LinComb Morphism::apply(const Label& x, const Window& w) const {
  if (!finite_ && !w.bounded())
    throw TruncationExceeded("truncation exceeded: column of " + name_ + " at " + x.str() +
                             " is infinite and no window was given");
  LinComb out = col_(x, w);
  for (const auto& [y, v] : out) {
    long s = y.weight() - x.weight();
    if ((shift_.lo && s < *shift_.lo) || (shift_.hi && s > *shift_.hi))
      throw std::logic_error("weight shift bound violated by " + name_ + ": " + x.str() + " -> " +
                             y.str());
    if (!w.admits(y))
      throw std::logic_error("column of " + name_ + " left its window at " + x.str());
  }
  return out;
}

Window Morphism::reflect(const Window& w) const {
  Window out = reflect_(w);
  if (shift_.lo && w.weight) {
    long b = *w.weight - *shift_.lo;
    out.weight = out.weight ? std::min(*out.weight, b) : b;
  }
  return out;
}

Reflect reflect_from_shift(const Shift& s) {
  auto lo = s.lo;
  return [lo](const Window& w) {
    if (lo && w.weight) return Window::upto(*w.weight - *lo);
    return Window::full();
  };
}

Mor make_mor(Obj src, Obj tgt, std::string name, const Rig& rig, Column col, Shift shift,
             Reflect reflect, bool finite) {
  return std::make_shared<const Morphism>(std::move(src), std::move(tgt), std::move(name), rig,
                                          std::move(col), shift, std::move(reflect), finite);
}

Mor basis_map(Obj src, Obj tgt, std::string name, const Rig& rig,
              std::function<LinComb(const Label&)> f, Shift shift) {
  return make_mor(
      std::move(src), std::move(tgt), std::move(name), rig,
      [f = std::move(f)](const Label& x, const Window& w) { return f(x).filtered(w); }, shift);
}

Mor renamed(const Mor& f, std::string name) {
  return make_mor(
      f->src(), f->tgt(), std::move(name), f->rig(),
      [f](const Label& x, const Window& w) { return f->apply(x, w); }, f->shift(),
      [f](const Window& w) { return f->reflect(w); }, f->finite());
}

Mor identity(const Obj& a, const Rig& rig) {
  return basis_map(a, a, "id", rig, [](const Label& x) { return LinComb::single(x); },
                   Shift::exact(0));
}

Mor zero_morphism(const Obj& a, const Obj& b, const Rig& rig) {
  return make_mor(
      a, b, "0", rig, [](const Label&, const Window&) { return LinComb(); }, Shift::exact(0),
      [](const Window&) { return Window::upto(-1); });
}

Mor relabel(const Obj& a, const Obj& b, const Rig& rig) {
  return basis_map(a, b, "≅", rig, [](const Label& x) { return LinComb::single(x); },
                   Shift::exact(0));
}

Mor compose(const Mor& g, const Mor& f) {
  require_same(f->tgt(), g->src(), "compose " + g->name() + " after " + f->name());
  const Rig& r = f->rig();
  return make_mor(
      f->src(), g->tgt(), "(" + g->name() + "∘" + f->name() + ")", r,
      [f, g, &r](const Label& x, const Window& w) {
        LinComb mid = f->apply(x, g->reflect(w));
        LinComb out;
        for (const auto& [y, c] : mid) out.add_scaled(g->apply(y, w), c, r);
        return out;
      },
      Shift{opt_add(f->shift().lo, g->shift().lo), opt_add(f->shift().hi, g->shift().hi)},
      [f, g](const Window& w) { return f->reflect(g->reflect(w)); }, f->finite() && g->finite());
}

Mor compose(std::initializer_list<Mor> chain) {
  std::vector<Mor> v(chain);
  if (v.empty()) throw std::invalid_argument("empty composite");
  Mor acc = v.back();
  for (std::size_t i = v.size() - 1; i-- > 0;) acc = compose(v[i], acc);
  return acc;
}

Mor add(const Mor& f, const Mor& g) {
  require_same(f->src(), g->src(), "add (source)");
  require_same(f->tgt(), g->tgt(), "add (target)");
  const Rig& r = f->rig();
  return make_mor(
      f->src(), f->tgt(), "(" + f->name() + "+" + g->name() + ")", r,
      [f, g, &r](const Label& x, const Window& w) {
        LinComb out = f->apply(x, w);
        out.add_all(g->apply(x, w), r);
        return out;
      },
      Shift{opt_min(f->shift().lo, g->shift().lo), opt_max(f->shift().hi, g->shift().hi)},
      [f, g](const Window& w) {
        Window a = f->reflect(w), b = g->reflect(w);
        return Window{opt_max(a.weight, b.weight), opt_max(a.size, b.size)};
      },
      f->finite() && g->finite());
}

Mor scale(const Mor& f, const Value& c) {
  const Rig& r = f->rig();
  return make_mor(
      f->src(), f->tgt(), c.str() + "·" + f->name(), r,
      [f, c, &r](const Label& x, const Window& w) {
        LinComb out;
        out.add_scaled(f->apply(x, w), c, r);
        return out;
      },
      f->shift(), [f](const Window& w) { return f->reflect(w); }, f->finite());
}

Mor tensor_mor(const Mor& f, const Mor& g) {
  const Rig& r = f->rig();
  Obj src = tensor(f->src(), g->src());
  Obj tgt = tensor(f->tgt(), g->tgt());
  std::size_t na = f->src()->arity(), nc = g->src()->arity();
  std::size_t nb = f->tgt()->arity(), nd = g->tgt()->arity();
  return make_mor(
      src, tgt, "(" + f->name() + "⊗" + g->name() + ")", r,
      [f, g, na, nb, nc, nd, &r](const Label& x, const Window& w) {
        auto [x1, x2] = split(x, na, nc);
        Window cw = Window{w.weight, std::nullopt};
        LinComb a = f->apply(x1, cw);
        LinComb out;
        if (a.empty()) return out;
        LinComb b = g->apply(x2, cw);
        for (const auto& [y1, c1] : a)
          for (const auto& [y2, c2] : b) {
            if (w.weight && y1.weight() + y2.weight() > *w.weight) continue;
            out.add(join(y1, nb, y2, nd), r.mul(c1, c2), r);
          }
        return out;
      },
      Shift{opt_add(f->shift().lo, g->shift().lo), opt_add(f->shift().hi, g->shift().hi)},
      [f, g](const Window& w) {
        if (!w.weight) return Window::full();
        Window cw = Window::upto(*w.weight);
        return Window{opt_add(f->reflect(cw).weight, g->reflect(cw).weight), std::nullopt};
      },
      f->finite() && g->finite());
}

Mor tensor_mor(std::initializer_list<Mor> fs) {
  std::vector<Mor> v(fs);
  if (v.empty()) throw std::invalid_argument("empty tensor");
  Mor acc = v.back();
  for (std::size_t i = v.size() - 1; i-- > 0;) acc = tensor_mor(v[i], acc);
  return acc;
}

Mor symmetry(const Obj& a, const Obj& b, const Rig& rig) {
  std::size_t na = a->arity(), nb = b->arity();
  return basis_map(
      tensor(a, b), tensor(b, a), "σ", rig,
      [na, nb](const Label& x) {
        auto [l, r] = split(x, na, nb);
        return LinComb::single(join(r, nb, l, na));
      },
      Shift::exact(0));
}

Biproduct biproduct_maps(const Obj& a, const Obj& b, const Rig& rig) {
  Obj s = biproduct(a, b);
  Biproduct bp;
  bp.obj = s;
  bp.in0 = basis_map(a, s, "ι₀", rig, [](const Label& x) { return LinComb::single(Label::inl(x)); },
                     Shift::exact(0));
  bp.in1 = basis_map(b, s, "ι₁", rig, [](const Label& x) { return LinComb::single(Label::inr(x)); },
                     Shift::exact(0));
  bp.out0 = basis_map(
      s, a, "π₀", rig,
      [](const Label& x) { return x.kind() == Kind::Inl ? LinComb::single(x.inner()) : LinComb(); },
      Shift::exact(0));
  bp.out1 = basis_map(
      s, b, "π₁", rig,
      [](const Label& x) { return x.kind() == Kind::Inr ? LinComb::single(x.inner()) : LinComb(); },
      Shift::exact(0));
  return bp;
}

Mor pairing(const Mor& f, const Mor& g) {
  require_same(f->src(), g->src(), "pairing");
  auto bp = biproduct_maps(f->tgt(), g->tgt(), f->rig());
  return renamed(add(compose(bp.in0, f), compose(bp.in1, g)),
                 "⟨" + f->name() + "," + g->name() + "⟩");
}

Mor copairing(const Mor& f, const Mor& g) {
  require_same(f->tgt(), g->tgt(), "copairing");
  auto bp = biproduct_maps(f->src(), g->src(), f->rig());
  return renamed(add(compose(f, bp.out0), compose(g, bp.out1)),
                 "[" + f->name() + "," + g->name() + "]");
}

Mor point_map(const Obj& o, const LinComb& p, const Rig& rig, const std::string& name) {
  return basis_map(unit_object(), o, name, rig, [p](const Label&) { return p; }, Shift::none());
}

std::vector<Mor> points(const Obj& o, long max_weight, const Rig& rig) {
  if (!rig.finite()) throw std::domain_error("points not enumerable over rig " + rig.name());
  std::vector<Label> basis = o->upto(max_weight);
  std::vector<Mor> out;
  std::vector<Value> vals = rig.elements();
  std::size_t n = basis.size();
  if (n > 20) throw std::domain_error("points: basis too large to enumerate");
  std::vector<std::size_t> digit(n, 0);
  while (true) {
    LinComb p;
    for (std::size_t i = 0; i < n; ++i) p.add(basis[i], vals[digit[i]], rig);
    out.push_back(point_map(o, p, rig, "pt" + p.str()));
    std::size_t i = 0;
    while (i < n && ++digit[i] == vals.size()) digit[i++] = 0;
    if (i == n) break;
  }
  return out;
}

Comparison morphisms_equal_up_to(const Mor& f, const Mor& g, long d, long slack) {
  require_same(f->src(), g->src(), "compare (source)");
  require_same(f->tgt(), g->tgt(), "compare (target)");
  Comparison res;
  bool finite = f->finite() && g->finite();
  for (const auto& x : f->src()->upto(d)) {
    Window w = finite ? Window::full() : Window::upto(x.weight() + slack);
    LinComb a = f->apply(x, w);
    LinComb b = g->apply(x, w);
    ++res.labels_checked;
    for (const auto* side : {&a, &b})
      for (const auto& [y, v] : *side)
        if (!f->tgt()->member(y))
          throw std::logic_error("column output " + y.str() + " is not a member of " +
                                 f->tgt()->key());
    if (a != b) {
      res.equal = false;
      res.witness = x;
      res.lhs = std::move(a);
      res.rhs = std::move(b);
      res.window = w;
      return res;
    }
    res.window = w;
  }
  return res;
}

}  // namespace dm

#include <map>
#include <mutex>

namespace dm {

Mor memoize(const Mor& f) {
  struct Cache {
    std::mutex mu;
    std::map<std::pair<Label, std::string>, LinComb> cols;
  };
  auto cache = std::make_shared<Cache>();
  return make_mor(
      f->src(), f->tgt(), f->name(), f->rig(),
      [f, cache](const Label& x, const Window& w) {
        auto key = std::make_pair(x, w.str());
        {
          std::lock_guard<std::mutex> lock(cache->mu);
          auto it = cache->cols.find(key);
          if (it != cache->cols.end()) return it->second;
        }
        LinComb c = f->apply(x, w);
        std::lock_guard<std::mutex> lock(cache->mu);
        cache->cols.emplace(std::move(key), c);
        return c;
      },
      f->shift(), [f](const Window& w) { return f->reflect(w); }, f->finite());
}

}  // namespace dm
