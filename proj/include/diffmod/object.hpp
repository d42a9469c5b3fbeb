#pragma once

#include "diffmod/label.hpp"

#include <functional>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace dm {

class Object;
using Obj = std::shared_ptr<const Object>;

enum class ObjKind { Atoms, Tensor, Sum, Bag, Points, Fused };

struct NotEnumerable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A weighted label universe. Weight is intrinsic to labels (see
// Label::weight); an object decides membership and enumerates its
// members of each exact weight in canonical order.
class Object {
 public:
  using Gen = std::function<std::vector<Label>(long)>;
  using Member = std::function<bool(const Label&)>;

  Object(std::string key, ObjKind kind, std::vector<Obj> parts, Member member, Gen gen);

  const std::string& key() const { return key_; }
  ObjKind kind() const { return kind_; }
  const std::vector<Obj>& parts() const { return parts_; }
  // Tensor factors under the strict convention; the unit has none.
  std::size_t arity() const;
  bool enumerable() const { return static_cast<bool>(gen_); }
  bool member(const Label& l) const { return member_(l); }

  const std::vector<Label>& exact(long w) const;
  std::vector<Label> upto(long w) const;  // canonical order

  bool same(const Object& o) const { return key_ == o.key_; }

 private:
  std::string key_;
  ObjKind kind_;
  std::vector<Obj> parts_;
  Member member_;
  Gen gen_;
  mutable std::mutex mu_;
  mutable std::vector<std::unique_ptr<std::vector<Label>>> cache_;
};

Obj atoms(std::vector<std::string> names);
Obj unit_object();
Obj tensor(const Obj& a, const Obj& b);
Obj tensor(const std::vector<Obj>& factors);
Obj biproduct(const Obj& a, const Obj& b);
Obj zero_object();  // the empty object, terminal and initial

// Bags over a base; `tag` distinguishes e.g. the symmetric algebra "S"
// from a modality's "!" although the labels agree.
Obj bag_object(const Obj& base, const std::string& tag);
// Finite-support points of `base` with values in a finite rig.
Obj point_object(const Obj& base, const Rig& rig, const std::string& tag = "P");
// A single-factor object whose labels are Pair(a, b) with a in `left` and
// b in `right`.
Obj fused_object(const std::string& key, const Obj& left, const Obj& right);

std::vector<Label> enumerate_basis(const Obj& o, long max_weight);

}  // namespace dm
