#pragma once

#include "diffmod/rig.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dm {

// Order of the enumerators is the canonical order between kinds.
enum class Kind : std::uint8_t { Atom, Unit, Pair, Inl, Inr, Bag, Point };

// Immutable, structurally shared basis label.
class Label {
 public:
  Label();  // Unit

  static Label atom(std::string name);
  static Label unit();
  static Label pair(Label a, Label b);
  static Label inl(Label a);
  static Label inr(Label a);
  static Label bag(std::vector<Label> members);  // sorts
  // Entries must have distinct keys and nonzero values; sorts by key.
  static Label point(std::vector<std::pair<Label, Value>> entries);

  Kind kind() const;
  const std::string& name() const;
  const Label& first() const;
  const Label& second() const;
  const Label& inner() const;
  // Bag members, or Point keys.
  const std::vector<Label>& items() const;
  const std::vector<Value>& values() const;
  std::size_t size() const { return items().size(); }

  long weight() const;
  std::size_t hash() const;

  int compare(const Label& o) const;
  bool operator==(const Label& o) const;
  bool operator!=(const Label& o) const { return !(*this == o); }
  bool operator<(const Label& o) const { return compare(o) < 0; }

  std::string str() const;

  struct Node;

 private:
  explicit Label(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

struct LabelHash {
  std::size_t operator()(const Label& l) const { return l.hash(); }
};

// Which output labels a truncated evaluation must produce exactly.
// `weight` bounds the label weight; `size` bounds the number of members
// of Bag-kind labels (ignored for other kinds).
struct Window {
  std::optional<long> weight;
  std::optional<long> size;

  static Window full() { return {}; }
  static Window upto(long w) { return {w, std::nullopt}; }
  bool bounded() const { return weight.has_value() || size.has_value(); }
  bool admits(const Label& l) const;
  bool operator==(const Window& o) const { return weight == o.weight && size == o.size; }
  std::string str() const;
};

// Finite sparse rig-linear combination; never stores zero coefficients.
class LinComb {
 public:
  using Map = std::map<Label, Value>;

  LinComb() = default;
  static LinComb single(const Label& l, const Value& v = 1);

  void add(const Label& l, const Value& v, const Rig& r);
  void add_scaled(const LinComb& o, const Value& c, const Rig& r);
  void add_all(const LinComb& o, const Rig& r) { add_scaled(o, Value(1), r); }

  Value coeff(const Label& l) const;
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Map& terms() const { return terms_; }
  Map::const_iterator begin() const { return terms_.begin(); }
  Map::const_iterator end() const { return terms_.end(); }

  LinComb filtered(const Window& w) const;
  bool operator==(const LinComb& o) const { return terms_ == o.terms_; }
  bool operator!=(const LinComb& o) const { return !(*this == o); }
  std::string str() const;

 private:
  Map terms_;
};

// Strict tensor convention: a label of an n-fold tensor is the
// right-nested pairing of its n components (Unit for n = 0).
Label pack(const std::vector<Label>& parts);
std::vector<Label> unpack(const Label& l, std::size_t n);
std::pair<Label, Label> split(const Label& l, std::size_t na, std::size_t nb);
Label join(const Label& a, std::size_t na, const Label& b, std::size_t nb);

}  // namespace dm
