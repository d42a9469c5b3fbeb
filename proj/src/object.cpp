#include "diffmod/object.hpp"

#include <algorithm>
#include <set>

namespace dm {

Object::Object(std::string key, ObjKind kind, std::vector<Obj> parts, Member member, Gen gen)
    : key_(std::move(key)),
      kind_(kind),
      parts_(std::move(parts)),
      member_(std::move(member)),
      gen_(std::move(gen)) {}

std::size_t Object::arity() const { return kind_ == ObjKind::Tensor ? parts_.size() : 1; }

const std::vector<Label>& Object::exact(long w) const {
  if (!gen_) throw NotEnumerable("object " + key_ + " is not enumerable");
  static const std::vector<Label> none;
  if (w < 0) return none;
  std::lock_guard<std::mutex> lock(mu_);
  if (cache_.size() <= static_cast<std::size_t>(w)) cache_.resize(static_cast<std::size_t>(w) + 1);
  auto& slot = cache_[static_cast<std::size_t>(w)];
  if (!slot) {
    auto v = gen_(w);
    std::sort(v.begin(), v.end());
    slot = std::make_unique<std::vector<Label>>(std::move(v));
  }
  return *slot;
}

std::vector<Label> Object::upto(long w) const {
  std::vector<Label> out;
  for (long i = 0; i <= w; ++i) {
    const auto& e = exact(i);
    out.insert(out.end(), e.begin(), e.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Label> enumerate_basis(const Obj& o, long max_weight) { return o->upto(max_weight); }

namespace {

std::string factor_key(const Obj& o) {
  if (o->kind() == ObjKind::Sum) return "(" + o->key() + ")";
  return o->key();
}

std::vector<Obj> flat(const Obj& o) {
  if (o->kind() == ObjKind::Tensor) return o->parts();
  return {o};
}

// Every way of writing w as an ordered sum of parts.size() weights, with
// the labels of those weights.
void tensor_gen(const std::vector<Obj>& fs, std::size_t i, long w, std::vector<Label>& cur,
                std::vector<Label>& out) {
  if (i + 1 == fs.size()) {
    for (const auto& l : fs[i]->exact(w)) {
      cur.push_back(l);
      out.push_back(pack(cur));
      cur.pop_back();
    }
    return;
  }
  for (long k = 0; k <= w; ++k) {
    for (const auto& l : fs[i]->exact(k)) {
      cur.push_back(l);
      tensor_gen(fs, i + 1, w - k, cur, out);
      cur.pop_back();
    }
  }
}

bool all_enumerable(const std::vector<Obj>& fs) {
  return std::all_of(fs.begin(), fs.end(), [](const Obj& f) { return f->enumerable(); });
}

}  // namespace

Obj atoms(std::vector<std::string> names) {
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  std::string key = "{";
  for (std::size_t i = 0; i < names.size(); ++i) key += (i ? "," : "") + names[i];
  key += "}";
  std::set<std::string> set(names.begin(), names.end());
  std::vector<Label> ls;
  for (const auto& n : names) ls.push_back(Label::atom(n));
  return std::make_shared<Object>(
      key, ObjKind::Atoms, std::vector<Obj>{},
      [set](const Label& l) { return l.kind() == Kind::Atom && set.count(l.name()) > 0; },
      [ls](long w) { return w == 0 ? ls : std::vector<Label>{}; });
}

Obj zero_object() { return atoms({}); }

Obj unit_object() {
  static const Obj u = std::make_shared<Object>(
      "I", ObjKind::Tensor, std::vector<Obj>{},
      [](const Label& l) { return l.kind() == Kind::Unit; },
      [](long w) { return w == 0 ? std::vector<Label>{Label::unit()} : std::vector<Label>{}; });
  return u;
}

Obj tensor(const std::vector<Obj>& factors) {
  std::vector<Obj> fs;
  for (const auto& f : factors) {
    auto p = flat(f);
    fs.insert(fs.end(), p.begin(), p.end());
  }
  if (fs.empty()) return unit_object();
  if (fs.size() == 1) return fs[0];
  std::string key;
  for (std::size_t i = 0; i < fs.size(); ++i) key += (i ? "⊗" : "") + factor_key(fs[i]);
  Object::Gen gen;
  if (all_enumerable(fs)) {
    gen = [fs](long w) {
      std::vector<Label> out, cur;
      tensor_gen(fs, 0, w, cur, out);
      return out;
    };
  }
  return std::make_shared<Object>(
      key, ObjKind::Tensor, fs,
      [fs](const Label& l) {
        Label cur = l;
        for (std::size_t i = 0; i + 1 < fs.size(); ++i) {
          if (cur.kind() != Kind::Pair || !fs[i]->member(cur.first())) return false;
          cur = cur.second();
        }
        return fs.back()->member(cur);
      },
      gen);
}

Obj tensor(const Obj& a, const Obj& b) { return tensor(std::vector<Obj>{a, b}); }

Obj biproduct(const Obj& a, const Obj& b) {
  Object::Gen gen;
  if (a->enumerable() && b->enumerable()) {
    gen = [a, b](long w) {
      std::vector<Label> out;
      for (const auto& l : a->exact(w)) out.push_back(Label::inl(l));
      for (const auto& l : b->exact(w)) out.push_back(Label::inr(l));
      return out;
    };
  }
  return std::make_shared<Object>(
      factor_key(a) + "⊕" + factor_key(b), ObjKind::Sum, std::vector<Obj>{a, b},
      [a, b](const Label& l) {
        if (l.kind() == Kind::Inl) return a->member(l.inner());
        if (l.kind() == Kind::Inr) return b->member(l.inner());
        return false;
      },
      gen);
}

namespace {

// Multisets drawn from `cands` (canonically sorted, each with cost
// 1 + weight) of total cost exactly w; members chosen in non-decreasing
// index order so each multiset appears once.
void bag_gen(const std::vector<Label>& cands, std::size_t from, long w, std::vector<Label>& cur,
             std::vector<Label>& out) {
  if (w == 0) {
    out.push_back(Label::bag(cur));
    return;
  }
  for (std::size_t i = from; i < cands.size(); ++i) {
    long c = 1 + cands[i].weight();
    if (c > w) continue;
    cur.push_back(cands[i]);
    bag_gen(cands, i, w - c, cur, out);
    cur.pop_back();
  }
}

void point_gen(const std::vector<Label>& cands, std::size_t from, long w,
               const std::vector<Value>& vals, std::vector<std::pair<Label, Value>>& cur,
               std::vector<Label>& out) {
  if (w == 0) {
    out.push_back(Label::point(cur));
    return;
  }
  for (std::size_t i = from; i < cands.size(); ++i) {
    long c = 1 + cands[i].weight();
    if (c > w) continue;
    for (const auto& v : vals) {
      cur.emplace_back(cands[i], v);
      point_gen(cands, i + 1, w - c, vals, cur, out);
      cur.pop_back();
    }
  }
}

}  // namespace

Obj bag_object(const Obj& base, const std::string& tag) {
  Object::Gen gen;
  if (base->enumerable()) {
    gen = [base](long w) {
      std::vector<Label> cands = base->upto(w - 1), cur, out;
      bag_gen(cands, 0, w, cur, out);
      return out;
    };
  }
  return std::make_shared<Object>(
      tag + "(" + base->key() + ")", ObjKind::Bag, std::vector<Obj>{base},
      [base](const Label& l) {
        if (l.kind() != Kind::Bag) return false;
        for (const auto& m : l.items())
          if (!base->member(m)) return false;
        return true;
      },
      gen);
}

Obj point_object(const Obj& base, const Rig& rig, const std::string& tag) {
  Object::Gen gen;
  const Rig* r = &rig;
  if (base->enumerable() && rig.finite()) {
    gen = [base, r](long w) {
      std::vector<Label> cands = base->upto(w - 1), out;
      std::vector<std::pair<Label, Value>> cur;
      point_gen(cands, 0, w, r->nonzero_elements(), cur, out);
      return out;
    };
  }
  return std::make_shared<Object>(
      tag + "(" + base->key() + ")", ObjKind::Points, std::vector<Obj>{base},
      [base, r](const Label& l) {
        if (l.kind() != Kind::Point) return false;
        for (std::size_t i = 0; i < l.size(); ++i)
          if (!base->member(l.items()[i]) || l.values()[i] == 0 || !r->valid(l.values()[i]))
            return false;
        return true;
      },
      gen);
}

Obj fused_object(const std::string& key, const Obj& left, const Obj& right) {
  Object::Gen gen;
  if (left->enumerable() && right->enumerable()) {
    gen = [left, right](long w) {
      std::vector<Label> out;
      for (long k = 0; k <= w; ++k)
        for (const auto& a : left->exact(k))
          for (const auto& b : right->exact(w - k)) out.push_back(Label::pair(a, b));
      return out;
    };
  }
  return std::make_shared<Object>(
      key, ObjKind::Fused, std::vector<Obj>{left, right},
      [left, right](const Label& l) {
        return l.kind() == Kind::Pair && left->member(l.first()) && right->member(l.second());
      },
      gen);
}

}  // namespace dm
