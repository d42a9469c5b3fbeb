#pragma once

// Test-side references. Nothing here calls into the library's own
// combinatorics; they are brute force over positions, permutations and
// plain integer arithmetic.

#include "diffmod/morphism.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using dm::Label;
using dm::LinComb;
using dm::Obj;

inline std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Bell numbers from the Bell triangle.
inline std::uint64_t bell(std::size_t n) {
  std::vector<std::uint64_t> row{1};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto v : row) next.push_back(next.back() + v);
    row = next;
  }
  return row.front();
}

inline Label bag_of(std::vector<Label> v) { return Label::bag(std::move(v)); }

// Δ^S over nat by counting position subsets: each subset of positions is
// one term of (η⊗u + u⊗η)^n.
inline std::map<std::pair<Label, Label>, std::uint64_t> split_counts(const std::vector<Label>& members) {
  std::map<std::pair<Label, Label>, std::uint64_t> out;
  std::size_t n = members.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<Label> l, r;
    for (std::size_t i = 0; i < n; ++i) (mask >> i & 1 ? l : r).push_back(members[i]);
    ++out[{bag_of(l), bag_of(r)}];
  }
  return out;
}

// Deterministic pseudo-random bool relation between two enumerable
// objects: y is related to x when a seeded hash of both says so. Columns
// only reach target labels of weight <= maxw.
inline dm::Mor hashed_relation(const Obj& src, const Obj& tgt, std::uint64_t seed, long maxw,
                               const std::string& name, unsigned one_in = 3) {
  std::vector<Label> ys = tgt->upto(maxw);
  const dm::Rig& r = dm::Rig::get(dm::RigKind::Bool);
  return dm::basis_map(src, tgt, name, r,
                       [ys, seed, one_in, &r](const Label& x) {
                         LinComb c;
                         for (const auto& y : ys) {
                           std::seed_seq ss{seed, std::hash<std::string>{}(x.str()),
                                            std::hash<std::string>{}(y.str())};
                           std::uint32_t v;
                           ss.generate(&v, &v + 1);
                           if (v % one_in == 0) c.add(y, 1, r);
                         }
                         return c;
                       },
                       dm::Shift::none());
}

// Relation as a plain map, read off a finite morphism.
using Rel = std::map<Label, std::set<Label>>;

inline Rel table(const dm::Mor& f, long d) {
  Rel t;
  for (const auto& x : f->src()->upto(d))
    for (const auto& [y, v] : f->apply(x)) t[x].insert(y);
  return t;
}

inline Rel rel_compose(const Rel& g, const Rel& f) {
  Rel out;
  for (const auto& [x, ys] : f)
    for (const auto& y : ys) {
      auto it = g.find(y);
      if (it != g.end()) out[x].insert(it->second.begin(), it->second.end());
    }
  return out;
}

// Iterate β over the members of a bag in the given order, as sets.
inline std::set<Label> iterate_action(const Rel& f_at, const Label& a,
                                      const std::function<std::set<Label>(const Label&, const Label&)>& beta,
                                      const std::vector<Label>& order) {
  std::set<Label> cur;
  if (auto it = f_at.find(a); it != f_at.end()) cur = it->second;
  for (const auto& x : order) {
    std::set<Label> next;
    for (const auto& b : cur) {
      auto s = beta(b, x);
      next.insert(s.begin(), s.end());
    }
    cur = next;
  }
  return cur;
}

inline std::set<Label> support(const LinComb& c) {
  std::set<Label> s;
  for (const auto& [l, v] : c) s.insert(l);
  return s;
}

}  // namespace oracle
