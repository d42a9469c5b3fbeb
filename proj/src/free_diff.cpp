#include "diffmod/free_diff.hpp"

#include <map>
#include <mutex>

namespace dm {

namespace {

struct State {
  Modality base;
  std::string tag;
  const Rig* r = nullptr;
  std::function<Obj(const Obj&)> obj;

  std::mutex mu;
  std::map<std::string, Mor> memo;

  // Memoised morphism per (kind, object key).
  Mor cached(const std::string& key, const std::function<Mor()>& make) {
    {
      std::lock_guard<std::mutex> lock(mu);
      auto it = memo.find(key);
      if (it != memo.end()) return it->second;
    }
    Mor m = memoize(make());
    std::lock_guard<std::mutex> lock(mu);
    return memo.emplace(key, m).first->second;
  }

  Obj bang(const Obj& x) const { return base.obj(x); }
  Mor id(const Obj& x) const { return identity(x, *r); }
  Mor R(const Obj& x) const { return relabel(obj(x), tensor(bang(x), sym_object(x)), *r); }
  Mor Rinv(const Obj& x) const { return relabel(tensor(bang(x), sym_object(x)), obj(x), *r); }

  Mor fmap(const Mor& f) const {
    Mor inner = tensor_mor(base.fmap(f), sym_on_morphism(f));
    return renamed(compose({Rinv(f->tgt()), inner, R(f->src())}), tag + f->name());
  }
  Mor zeta(const Obj& x) const {
    SymAlg s = symmetric_algebra(x, *r);
    return renamed(compose(Rinv(x), tensor_mor(id(bang(x)), s.u)), "ζ");
  }
  Mor d(const Obj& x) const {
    SymAlg s = symmetric_algebra(x, *r);
    return renamed(compose({Rinv(x), tensor_mor(id(bang(x)), s.d), tensor_mor(R(x), id(x))}), "d∂");
  }
  Mor e(const Obj& x) const {
    SymAlg s = symmetric_algebra(x, *r);
    return renamed(compose(tensor_mor(base.e(x), s.e), R(x)), "e∂");
  }
  Mor Delta(const Obj& x) const {
    SymAlg s = symmetric_algebra(x, *r);
    Mor mid = tensor_mor({id(bang(x)), symmetry(bang(x), s.S, *r), id(s.S)});
    return renamed(compose({tensor_mor(Rinv(x), Rinv(x)), mid, tensor_mor(base.Delta(x), s.Delta), R(x)}),
                   "Δ∂");
  }
  Mor eps(const Obj& x) const {
    SymAlg s = symmetric_algebra(x, *r);
    Mor sum = add(tensor_mor(base.e(x), s.eps), tensor_mor(base.eps(x), s.e));
    return renamed(compose(sum, R(x)), "ε∂");
  }
  Mor u(const Obj& x) const {
    SymAlg s = symmetric_algebra(x, *r);
    return renamed(compose(Rinv(x), tensor_mor(base.need(base.u, "u", x), s.u)), "u∂");
  }
  Mor nabla(const Obj& x) const {
    SymAlg s = symmetric_algebra(x, *r);
    Mor mid = tensor_mor({id(bang(x)), symmetry(s.S, bang(x), *r), id(s.S)});
    return renamed(compose({Rinv(x), tensor_mor(base.need(base.nabla, "∇", x), s.nabla), mid,
                            tensor_mor(R(x), R(x))}),
                   "∇∂");
  }
  Mor eta(const Obj& x) const {
    SymAlg s = symmetric_algebra(x, *r);
    return renamed(compose(Rinv(x), tensor_mor(base.need(base.u, "u", x), s.eta)), "η∂");
  }
  Mor m_unit() const {
    Obj I = unit_object();
    SymAlg s = symmetric_algebra(I, *r);
    if (!base.m_unit) throw MissingComponent(base.name + " has no m_I");
    return renamed(compose(Rinv(I), tensor_mor(base.m_unit(), s.u)), "mI∂");
  }

  // b∂ = (1⊗ε∂)∘Δ∂ on !∂A
  Mor coderiving(const Obj& a) const {
    return compose(tensor_mor(id(obj(a)), eps(a)), Delta(a));
  }

  Mor delta_generic(const Obj& x) {
    return cached("generic:" + x->key(), [this, x] {
      Obj A = obj(x);
      // (ζζ)∘δ : !X -> !∂!∂X
      Mor zz = compose(zeta(A), base.fmap(zeta(x)));
      Mor f = compose(zz, base.delta(x));
      // lifted action on !∂A by X: d∂_A ∘ (1⊗d∂_X) ∘ (b∂_A⊗X)
      Mor act = compose({d(A), tensor_mor(id(obj(A)), d(x)), tensor_mor(coderiving(A), id(x))});
      Mor ext = universal_extend(f, ActionData{obj(A), x, act});
      return renamed(compose(ext, R(x)), "δ∂");
    });
  }

  Mor delta_prime(const Obj& x) {
    return cached("prime:" + x->key(), [this, x] {
      SymAlg s = symmetric_algebra(x, *r);
      SymAlg ss = symmetric_algebra(s.S, *r);
      Mor b = compose(tensor_mor(id(ss.S), ss.eps), ss.Delta);  // SSX -> SSX⊗SX
      Mor flat = compose({ss.d, tensor_mor(id(ss.S), s.d), tensor_mor(b, id(x))});
      Mor sharp = compose(ss.d, tensor_mor(id(ss.S), s.eta));
      return renamed(universal_extend(ss.u, ActionData{ss.S, x, add(flat, sharp)}), "δ′");
    });
  }

  Mor delta_factored(const Obj& x) {
    if (base.name != "points") throw std::invalid_argument("the δ′ route needs the points base");
    return cached("factored:" + x->key(), [this, x] {
      Mor dp = delta_prime(x);
      Obj A = obj(x);
      const Rig* rr = r;
      return basis_map(
          A, obj(A), "δ∂", *r,
          [dp, rr](const Label& l) {
            const Label& p = l.first();
            Label top = Label::point({{Label::pair(p, Label::bag({})), Value(1)}});
            LinComb out;
            for (const auto& [q, c] : dp->apply(l.second())) {
              std::vector<Label> members;
              for (const auto& blk : q.items()) members.push_back(Label::pair(p, blk));
              out.add(Label::pair(top, Label::bag(std::move(members))), c, *rr);
            }
            return out;
          },
          Shift{1, std::nullopt});
    });
  }
};

}  // namespace

LinComb bags_within(const std::vector<Label>& keys, const Window& w, const Rig& rig) {
  LinComb out;
  std::vector<Label> cur;
  std::function<void(std::size_t, std::optional<long>, std::optional<long>)> go =
      [&](std::size_t from, std::optional<long> wl, std::optional<long> sl) {
        out.add(Label::bag(cur), Value(1), rig);
        if (sl && *sl == 0) return;
        for (std::size_t i = from; i < keys.size(); ++i) {
          long c = 1 + keys[i].weight();
          if (wl && c > *wl) continue;
          cur.push_back(keys[i]);
          go(i, wl ? std::optional<long>(*wl - c) : std::nullopt,
             sl ? std::optional<long>(*sl - 1) : std::nullopt);
          cur.pop_back();
        }
      };
  if (!w.bounded()) throw TruncationExceeded("truncation exceeded: unbounded bag enumeration");
  if (w.weight && *w.weight < 0) return out;
  if (w.size && *w.size < 0) return out;
  go(0, w.weight, w.size);
  return out;
}

FreeDiff free_differential(const Modality& base, DeltaRoute route) {
  if (!base.has_coalgebra()) throw std::invalid_argument("free_differential: base is not coalgebra-capable");
  if (base.name != "points" && base.name != "bag")
    throw std::invalid_argument("free_differential: unsupported base " + base.name);
  auto st = std::make_shared<State>();
  st->base = base;
  st->base.caps = {};
  st->tag = base.name == "points" ? "P∂" : "!∂";
  st->r = base.rig;
  std::string tag = st->tag;
  auto bang = base.obj;
  st->obj = cached_object_map([tag, bang](const Obj& x) {
    return fused_object(tag + "(" + x->key() + ")", bang(x), sym_object(x));
  });

  if (route == DeltaRoute::Auto)
    route = base.name == "points" ? DeltaRoute::Factored : DeltaRoute::Generic;

  FreeDiff fd;
  fd.base = base;
  Modality& m = fd.result;
  m.name = "free-diff(" + base.name + ")";
  m.rig = base.rig;
  m.obj = st->obj;
  m.fmap = [st](const Mor& f) { return st->fmap(f); };
  m.eps = [st](const Obj& x) { return st->eps(x); };
  m.e = [st](const Obj& x) { return st->e(x); };
  m.Delta = [st](const Obj& x) { return st->Delta(x); };
  m.d = [st](const Obj& x) { return st->d(x); };
  if (base.u && base.nabla) {
    m.u = [st](const Obj& x) { return st->u(x); };
    m.nabla = [st](const Obj& x) { return st->nabla(x); };
    m.eta = [st](const Obj& x) { return st->eta(x); };
  }
  if (route == DeltaRoute::Factored)
    m.delta = [st](const Obj& x) { return st->delta_factored(x); };
  else
    m.delta = [st](const Obj& x) { return st->delta_generic(x); };

  fd.zeta = [st](const Obj& x) { return st->zeta(x); };
  fd.relabel = [st](const Obj& x) { return st->R(x); };
  fd.relabel_inv = [st](const Obj& x) { return st->Rinv(x); };
  fd.delta_generic = [st](const Obj& x) { return st->delta_generic(x); };
  if (base.name == "points") {
    fd.delta_factored = [st](const Obj& x) { return st->delta_factored(x); };
    fd.delta_prime = [st](const Obj& x) { return st->delta_prime(x); };
  }
  if (base.m_unit && base.m_tensor && m.u) {
    m.m_unit = [st]() { return st->m_unit(); };
    FreeDiff view = fd;  // monoidal_constraint only needs the structure maps
    m.m_tensor = [view](const Obj& x, const Obj& y) { return monoidal_constraint(view, x, y); };
  }
  return fd;
}

Mor delta_partial(const FreeDiff& fd, const Obj& x, DeltaRoute route) {
  switch (route) {
    case DeltaRoute::Generic: return fd.delta_generic(x);
    case DeltaRoute::Factored:
      if (!fd.delta_factored) throw std::invalid_argument("the δ′ route needs the points base");
      return fd.delta_factored(x);
    case DeltaRoute::Auto: break;
  }
  return fd.result.delta(x);
}

Mor aux_n(const FreeDiff& fd, const Obj& z) {
  const Modality& m = fd.result;
  Mor epsz = m.eps(z);
  Mor n = compose({m.fmap(tensor_mor(epsz, epsz)), m.fmap(m.Delta(z)), m.delta(z),
                   m.need(m.nabla, "∇", z)});
  return memoize(renamed(n, "n"));
}

Mor monoidal_constraint(const FreeDiff& fd, const Obj& x, const Obj& y) {
  const Modality& m = fd.result;
  auto bp = biproduct_maps(x, y, m.r());
  Mor pre = tensor_mor(m.fmap(bp.in0), m.fmap(bp.in1));
  Mor post = m.fmap(tensor_mor(bp.out0, bp.out1));
  return renamed(compose({post, aux_n(fd, bp.obj), pre}), "m⊗∂");
}

InitialMorphisms initial_morphisms(const Rig& rig) {
  if (!rig.idempotent()) throw std::domain_error("initial morphisms are built over bool only");
  InitialMorphisms im;
  im.points = points_modality(rig);
  im.bag = bag_modality(rig);
  im.points_diff = free_differential(im.points);
  im.bag_diff = free_differential(im.bag);
  const Rig* r = &rig;
  Modality P = im.points, B = im.bag;
  FreeDiff PD = im.points_diff, BD = im.bag_diff;

  im.rho = [P, B, r](const Obj& x) {
    return make_mor(
        P.obj(x), B.obj(x), "ρ", *r,
        [r](const Label& p, const Window& w) { return bags_within(p.items(), w, *r); },
        Shift::none(), nullptr, false);
  };
  im.rho_flat = [B](const Obj& x) {
    return renamed(universal_extend(B.u(x), ActionData{B.obj(x), x, B.d(x)}), "ρ♭");
  };
  auto rho = im.rho;
  im.rho_sharp = [rho, B, PD](const Obj& x) {
    Mor ext = universal_extend(rho(x), ActionData{B.obj(x), x, B.d(x)});
    return renamed(compose(ext, PD.relabel(x)), "ρ♯");
  };
  im.psi_sharp = [B, BD, r](const Obj& x) {
    Mor ext = universal_extend(identity(B.obj(x), *r), ActionData{B.obj(x), x, B.d(x)});
    return renamed(compose(ext, BD.relabel(x)), "ψ♯");
  };
  return im;
}

}  // namespace dm
