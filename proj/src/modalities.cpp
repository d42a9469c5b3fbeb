#include "diffmod/modalities.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace dm {

std::function<Obj(const Obj&)> cached_object_map(std::function<Obj(const Obj&)> make) {
  struct Cache {
    std::mutex mu;
    std::map<std::string, Obj> objs;
  };
  auto cache = std::make_shared<Cache>();
  return [cache, make = std::move(make)](const Obj& x) {
    Obj fresh = make(x);
    std::lock_guard<std::mutex> lock(cache->mu);
    auto [it, inserted] = cache->objs.emplace(fresh->key(), fresh);
    return it->second;
  };
}

void for_each_set_partition(
    std::size_t n, const std::function<void(const std::vector<std::vector<std::size_t>>&)>& f) {
  std::vector<std::size_t> rgs(n, 0), mx(n, 0);  // mx[i] = max of rgs[0..i-1]
  while (true) {
    std::size_t blocks = n == 0 ? 0 : std::max(mx[n - 1], rgs[n - 1]) + 1;
    std::vector<std::vector<std::size_t>> parts(blocks);
    for (std::size_t i = 0; i < n; ++i) parts[rgs[i]].push_back(i);
    f(parts);
    // next restricted growth string: rgs[i] <= 1 + max(rgs[0..i-1])
    std::size_t i = n;
    while (i > 1 && rgs[i - 1] > mx[i - 1]) --i;
    if (i <= 1) return;
    ++rgs[i - 1];
    for (std::size_t j = i; j < n; ++j) {
      rgs[j] = 0;
      mx[j] = std::max(mx[j - 1], rgs[j - 1]);
    }
  }
}

namespace {

Label concat(const Label& a, const Label& b) {
  std::vector<Label> m = a.items();
  m.insert(m.end(), b.items().begin(), b.items().end());
  return Label::bag(std::move(m));
}

Mor bag_delta(const Obj& bx, const Obj& bbx, const Rig& r) {
  bool with_empty = r.idempotent();
  return make_mor(
      bx, bbx, "δ", r,
      [with_empty, &r](const Label& b, const Window& w) {
        LinComb out;
        const auto& xs = b.items();
        for_each_set_partition(xs.size(), [&](const std::vector<std::vector<std::size_t>>& parts) {
          std::vector<Label> blocks;
          for (const auto& p : parts) {
            std::vector<Label> m;
            for (auto i : p) m.push_back(xs[i]);
            blocks.push_back(Label::bag(std::move(m)));
          }
          if (!with_empty) {
            Label l = Label::bag(blocks);
            if (w.admits(l)) out.add(l, Value(1), r);
            return;
          }
          long k = static_cast<long>(blocks.size());
          std::optional<long> cap;
          if (w.weight) cap = *w.weight - b.weight();
          if (w.size) cap = cap ? std::min(*cap, *w.size) : *w.size;
          for (long total = k; total <= *cap; ++total) {
            out.add(Label::bag(blocks), Value(1), r);
            blocks.push_back(Label::bag({}));
          }
        });
        return out;
      },
      Shift{0, std::nullopt},
      [](const Window& w) {
        // Output weight = input weight + number of inner bags.
        if (w.weight) return Window::upto(*w.weight);
        return Window::full();
      },
      !with_empty);
}

}  // namespace

Modality bag_modality(const Rig& rig) {
  Modality m;
  m.name = "bag";
  m.rig = &rig;
  const Rig* r = &rig;
  auto obj = cached_object_map([](const Obj& x) { return bag_object(x, "!"); });
  m.obj = obj;
  m.fmap = [obj](const Mor& f) { return bag_fmap(f, obj(f->src()), obj(f->tgt()), "!" + f->name()); };
  m.eps = [obj, r](const Obj& x) {
    return basis_map(
        obj(x), x, "ε", *r,
        [](const Label& l) { return l.size() == 1 ? LinComb::single(l.items()[0]) : LinComb(); },
        Shift::exact(-1));
  };
  m.e = [obj, r](const Obj& x) {
    return basis_map(
        obj(x), unit_object(), "e", *r,
        [](const Label& l) { return l.size() == 0 ? LinComb::single(Label::unit()) : LinComb(); },
        Shift::exact(0));
  };
  m.Delta = [obj, r](const Obj& x) {
    Obj b = obj(x);
    return basis_map(b, tensor(b, b), "Δ", *r, [r](const Label& l) { return bag_split(l, *r); },
                     Shift::exact(0));
  };
  m.delta = [obj, r](const Obj& x) { return bag_delta(obj(x), obj(obj(x)), *r); };
  m.d = [obj, r](const Obj& x) {
    Obj b = obj(x);
    std::size_t nx = x->arity();
    // The size bound is passed back too, for extensions along d whose
    // windows have no weight (ρ).
    return make_mor(
        tensor(b, x), b, "d", *r,
        [nx](const Label& l, const Window& w) {
          auto [bag, el] = split(l, 1, nx);
          return LinComb::single(concat(bag, Label::bag({el}))).filtered(w);
        },
        Shift::exact(1),
        [](const Window& w) {
          return Window{w.weight ? std::optional<long>(*w.weight - 1) : std::nullopt,
                        w.size ? std::optional<long>(*w.size - 1) : std::nullopt};
        });
  };
  m.u = [obj, r](const Obj& x) {
    return basis_map(unit_object(), obj(x), "u", *r,
                     [](const Label&) { return LinComb::single(Label::bag({})); }, Shift::exact(0));
  };
  m.nabla = [obj, r](const Obj& x) {
    Obj b = obj(x);
    return basis_map(
        tensor(b, b), b, "∇", *r,
        [](const Label& l) { return LinComb::single(concat(l.first(), l.second())); },
        Shift::exact(0));
  };
  m.eta = [obj, r](const Obj& x) {
    return basis_map(x, obj(x), "η", *r,
                     [](const Label& l) { return LinComb::single(Label::bag({l})); },
                     Shift::exact(1));
  };
  if (rig.idempotent()) {
    m.m_unit = [obj, r]() {
      Obj I = unit_object();
      return make_mor(
          I, obj(I), "mI", *r,
          [r](const Label&, const Window& w) {
            LinComb out;
            std::optional<long> cap = w.weight;
            if (w.size) cap = cap ? std::min(*cap, *w.size) : *w.size;
            std::vector<Label> units;
            for (long n = 0; n <= *cap; ++n) {
              out.add(Label::bag(units), Value(1), *r);
              units.push_back(Label::unit());
            }
            return out;
          },
          Shift{0, std::nullopt}, [](const Window&) { return Window::full(); }, false);
    };
    m.m_tensor = [obj, r](const Obj& x, const Obj& y) {
      std::size_t nx = x->arity(), ny = y->arity();
      // n pairs of weight n + Σ come from two bags of weight 2n + Σ, so
      // inputs weigh at most twice the output.
      return make_mor(
          tensor(obj(x), obj(y)), obj(tensor(x, y)), "m⊗", *r,
          [nx, ny, r](const Label& l, const Window& w) {
            LinComb out;
            const auto& as = l.first().items();
            std::vector<Label> bs = l.second().items();
            if (as.size() != bs.size()) return out;
            std::sort(bs.begin(), bs.end());
            do {
              std::vector<Label> pairs;
              for (std::size_t i = 0; i < as.size(); ++i) pairs.push_back(join(as[i], nx, bs[i], ny));
              out.add(Label::bag(std::move(pairs)), Value(1), *r);
            } while (std::next_permutation(bs.begin(), bs.end()));
            return out.filtered(w);
          },
          Shift{std::nullopt, 0}, [](const Window& w) {
            return w.weight ? Window::upto(2 * *w.weight) : Window::full();
          });
    };
  }
  return m;
}

namespace {

Label point_of(const LinComb& c) {
  std::vector<std::pair<Label, Value>> es;
  for (const auto& [l, v] : c) es.emplace_back(l, v);
  return Label::point(std::move(es));
}

}  // namespace

Modality points_modality(const Rig& rig) {
  if (!rig.finite()) throw std::domain_error("points modality needs a finite rig, got " + rig.name());
  Modality m;
  m.name = "points";
  m.rig = &rig;
  const Rig* r = &rig;
  auto obj = cached_object_map([r](const Obj& x) { return point_object(x, *r, "P"); });
  m.obj = obj;
  auto as_comb = [r](const Label& p) {
    LinComb c;
    for (std::size_t i = 0; i < p.size(); ++i) c.add(p.items()[i], p.values()[i], *r);
    return c;
  };
  m.fmap = [obj, r, as_comb](const Mor& f) {
    if (!f->finite()) throw std::domain_error("P applied to a morphism with infinite columns");
    return basis_map(
        obj(f->src()), obj(f->tgt()), "P" + f->name(), *r,
        [f, r, as_comb](const Label& p) {
          LinComb img;
          for (const auto& [x, v] : as_comb(p)) img.add_scaled(f->apply(x), v, *r);
          return LinComb::single(point_of(img));
        },
        Shift::none());
  };
  m.eps = [obj, r, as_comb](const Obj& x) {
    return basis_map(obj(x), x, "ε", *r, as_comb, Shift{std::nullopt, -1});
  };
  m.e = [obj, r](const Obj& x) {
    return basis_map(obj(x), unit_object(), "e", *r,
                     [](const Label&) { return LinComb::single(Label::unit()); },
                     Shift{std::nullopt, 0});
  };
  m.Delta = [obj, r](const Obj& x) {
    Obj p = obj(x);
    return basis_map(p, tensor(p, p), "Δ", *r,
                     [](const Label& l) { return LinComb::single(Label::pair(l, l)); },
                     Shift{0, std::nullopt});
  };
  m.delta = [obj, r](const Obj& x) {
    return basis_map(obj(x), obj(obj(x)), "δ", *r,
                     [](const Label& l) { return LinComb::single(Label::point({{l, Value(1)}})); },
                     Shift::exact(1));
  };
  m.u = [obj, r](const Obj& x) {
    return basis_map(unit_object(), obj(x), "u", *r,
                     [](const Label&) { return LinComb::single(Label::point({})); },
                     Shift::exact(0));
  };
  m.nabla = [obj, r, as_comb](const Obj& x) {
    Obj p = obj(x);
    return basis_map(
        tensor(p, p), p, "∇", *r,
        [r, as_comb](const Label& l) {
          LinComb s = as_comb(l.first());
          s.add_all(as_comb(l.second()), *r);
          return LinComb::single(point_of(s));
        },
        Shift{std::nullopt, 0});
  };
  m.m_unit = [obj, r]() {
    Obj I = unit_object();
    return basis_map(I, obj(I), "mI", *r,
                     [](const Label&) {
                       return LinComb::single(Label::point({{Label::unit(), Value(1)}}));
                     },
                     Shift::exact(1));
  };
  m.m_tensor = [obj, r, as_comb](const Obj& x, const Obj& y) {
    std::size_t nx = x->arity(), ny = y->arity();
    return basis_map(
        tensor(obj(x), obj(y)), obj(tensor(x, y)), "m⊗", *r,
        [nx, ny, r, as_comb](const Label& l) {
          LinComb prod;
          for (const auto& [a, va] : as_comb(l.first()))
            for (const auto& [b, vb] : as_comb(l.second())) prod.add(join(a, nx, b, ny), r->mul(va, vb), *r);
          return LinComb::single(point_of(prod));
        },
        Shift::none());
  };
  return m;
}

SeelyMaps seely_maps(const Modality& m, const Obj& x, const Obj& y) {
  const Rig& r = m.r();
  Obj zero = zero_object();
  auto bp = biproduct_maps(x, y, r);
  SeelyMaps s;
  s.chi_top = m.need(m.e, "e", zero);
  s.chi = compose(tensor_mor(m.fmap(bp.out0), m.fmap(bp.out1)), m.need(m.Delta, "Δ", bp.obj));
  s.cochi_top = m.need(m.u, "u", zero);
  s.cochi = compose(m.need(m.nabla, "∇", bp.obj), tensor_mor(m.fmap(bp.in0), m.fmap(bp.in1)));
  return s;
}

Mor codereliction_of(const Modality& m, const Obj& x) {
  Mor d = m.need(m.d, "d", x);
  Mor u = m.need(m.u, "u", x);
  return renamed(compose(d, tensor_mor(u, identity(x, m.r()))), "η");
}

Mor deriving_of(const Modality& m, const Obj& x) {
  Mor nabla = m.need(m.nabla, "∇", x);
  Mor eta = m.need(m.eta, "η", x);
  return renamed(compose(nabla, tensor_mor(identity(m.obj(x), m.r()), eta)), "d");
}

}  // namespace dm
