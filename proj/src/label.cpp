#include "diffmod/label.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace dm {

struct Label::Node {
  Kind kind = Kind::Unit;
  long weight = 0;
  std::size_t hash = 0;
  std::string name;
  std::vector<Label> kids;
  std::vector<Value> vals;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t value_hash(const Value& v) {
  if (v >= 0 && v < 1000000) return static_cast<std::size_t>(v.convert_to<long long>());
  return std::hash<std::string>{}(v.str());
}

const std::shared_ptr<const Label::Node>& unit_node() {
  static const std::shared_ptr<const Label::Node> n = [] {
    auto p = std::make_shared<Label::Node>();
    p->kind = Kind::Unit;
    p->hash = mix(17, 1);
    return std::shared_ptr<const Label::Node>(p);
  }();
  return n;
}
}  // namespace

Label::Label() : n_(unit_node()) {}

Label Label::unit() { return Label(); }

Label Label::atom(std::string name) {
  auto p = std::make_shared<Node>();
  p->kind = Kind::Atom;
  p->hash = mix(3, std::hash<std::string>{}(name));
  p->name = std::move(name);
  return Label(std::shared_ptr<const Node>(p));
}

Label Label::pair(Label a, Label b) {
  auto p = std::make_shared<Node>();
  p->kind = Kind::Pair;
  p->weight = a.weight() + b.weight();
  p->hash = mix(mix(5, a.hash()), b.hash());
  p->kids = {std::move(a), std::move(b)};
  return Label(std::shared_ptr<const Node>(p));
}

Label Label::inl(Label a) {
  auto p = std::make_shared<Node>();
  p->kind = Kind::Inl;
  p->weight = a.weight();
  p->hash = mix(7, a.hash());
  p->kids = {std::move(a)};
  return Label(std::shared_ptr<const Node>(p));
}

Label Label::inr(Label a) {
  auto p = std::make_shared<Node>();
  p->kind = Kind::Inr;
  p->weight = a.weight();
  p->hash = mix(11, a.hash());
  p->kids = {std::move(a)};
  return Label(std::shared_ptr<const Node>(p));
}

Label Label::bag(std::vector<Label> members) {
  std::sort(members.begin(), members.end());
  auto p = std::make_shared<Node>();
  p->kind = Kind::Bag;
  std::size_t h = 13;
  long w = 0;
  for (const auto& m : members) {
    h = mix(h, m.hash());
    w += 1 + m.weight();
  }
  p->weight = w;
  p->hash = mix(h, members.size());
  p->kids = std::move(members);
  return Label(std::shared_ptr<const Node>(p));
}

Label Label::point(std::vector<std::pair<Label, Value>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  auto p = std::make_shared<Node>();
  p->kind = Kind::Point;
  std::size_t h = 19;
  long w = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].second == 0) throw std::invalid_argument("point entry with zero value");
    if (i > 0 && entries[i].first == entries[i - 1].first)
      throw std::invalid_argument("point with repeated key");
    h = mix(mix(h, entries[i].first.hash()), value_hash(entries[i].second));
    w += 1 + entries[i].first.weight();
  }
  p->weight = w;
  p->hash = mix(h, entries.size());
  for (auto& e : entries) {
    p->kids.push_back(std::move(e.first));
    p->vals.push_back(std::move(e.second));
  }
  return Label(std::shared_ptr<const Node>(p));
}

Kind Label::kind() const { return n_->kind; }

const std::string& Label::name() const {
  if (n_->kind != Kind::Atom) throw std::logic_error("name() of non-atom label " + str());
  return n_->name;
}

const Label& Label::first() const {
  if (n_->kind != Kind::Pair) throw std::logic_error("first() of non-pair label " + str());
  return n_->kids[0];
}

const Label& Label::second() const {
  if (n_->kind != Kind::Pair) throw std::logic_error("second() of non-pair label " + str());
  return n_->kids[1];
}

const Label& Label::inner() const {
  if (n_->kind != Kind::Inl && n_->kind != Kind::Inr)
    throw std::logic_error("inner() of non-injection label " + str());
  return n_->kids[0];
}

const std::vector<Label>& Label::items() const {
  if (n_->kind != Kind::Bag && n_->kind != Kind::Point)
    throw std::logic_error("items() of label " + str());
  return n_->kids;
}

const std::vector<Value>& Label::values() const {
  if (n_->kind != Kind::Point) throw std::logic_error("values() of non-point label " + str());
  return n_->vals;
}

long Label::weight() const { return n_->weight; }
std::size_t Label::hash() const { return n_->hash; }

int Label::compare(const Label& o) const {
  if (n_ == o.n_) return 0;
  const Node& a = *n_;
  const Node& b = *o.n_;
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  switch (a.kind) {
    case Kind::Atom: {
      int c = a.name.compare(b.name);
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case Kind::Unit: return 0;
    case Kind::Pair: {
      int c = a.kids[0].compare(b.kids[0]);
      return c != 0 ? c : a.kids[1].compare(b.kids[1]);
    }
    case Kind::Inl:
    case Kind::Inr: return a.kids[0].compare(b.kids[0]);
    case Kind::Bag:
    case Kind::Point: {
      std::size_t n = std::min(a.kids.size(), b.kids.size());
      for (std::size_t i = 0; i < n; ++i) {
        int c = a.kids[i].compare(b.kids[i]);
        if (c != 0) return c;
        if (a.kind == Kind::Point && a.vals[i] != b.vals[i]) return a.vals[i] < b.vals[i] ? -1 : 1;
      }
      if (a.kids.size() != b.kids.size()) return a.kids.size() < b.kids.size() ? -1 : 1;
      return 0;
    }
  }
  return 0;
}

bool Label::operator==(const Label& o) const {
  if (n_ == o.n_) return true;
  if (n_->hash != o.n_->hash || n_->weight != o.n_->weight) return false;
  return compare(o) == 0;
}

std::string Label::str() const {
  const Node& a = *n_;
  switch (a.kind) {
    case Kind::Atom: return a.name;
    case Kind::Unit: return "*";
    case Kind::Pair: return "(" + a.kids[0].str() + "," + a.kids[1].str() + ")";
    case Kind::Inl: return "inl(" + a.kids[0].str() + ")";
    case Kind::Inr: return "inr(" + a.kids[0].str() + ")";
    case Kind::Bag: {
      std::string s = "[";
      for (std::size_t i = 0; i < a.kids.size(); ++i) s += (i ? "," : "") + a.kids[i].str();
      return s + "]";
    }
    case Kind::Point: {
      std::string s = "{";
      for (std::size_t i = 0; i < a.kids.size(); ++i)
        s += (i ? "," : "") + a.kids[i].str() + ":" + a.vals[i].str();
      return s + "}";
    }
  }
  return "?";
}

bool Window::admits(const Label& l) const {
  if (weight && l.weight() > *weight) return false;
  if (size && l.kind() == Kind::Bag && static_cast<long>(l.size()) > *size) return false;
  return true;
}

std::string Window::str() const {
  if (!bounded()) return "full";
  std::string s;
  if (weight) s += "weight<=" + std::to_string(*weight);
  if (size) s += std::string(s.empty() ? "" : ",") + "size<=" + std::to_string(*size);
  return s;
}

LinComb LinComb::single(const Label& l, const Value& v) {
  LinComb c;
  if (v != 0) c.terms_.emplace(l, v);
  return c;
}

void LinComb::add(const Label& l, const Value& v, const Rig& r) {
  if (v == 0) return;
  auto it = terms_.find(l);
  if (it == terms_.end()) {
    Value nv = r.normalize(v);
    if (nv != 0) terms_.emplace(l, std::move(nv));
    return;
  }
  Value s = r.add(it->second, v);
  if (s == 0)
    terms_.erase(it);
  else
    it->second = std::move(s);
}

void LinComb::add_scaled(const LinComb& o, const Value& c, const Rig& r) {
  if (c == 0) return;
  for (const auto& [l, v] : o.terms_) add(l, r.mul(v, c), r);
}

Value LinComb::coeff(const Label& l) const {
  auto it = terms_.find(l);
  return it == terms_.end() ? Value(0) : it->second;
}

LinComb LinComb::filtered(const Window& w) const {
  if (!w.bounded()) return *this;
  LinComb c;
  for (const auto& [l, v] : terms_)
    if (w.admits(l)) c.terms_.emplace_hint(c.terms_.end(), l, v);
  return c;
}

std::string LinComb::str() const {
  std::ostringstream os;
  os << "{";
  bool firstTerm = true;
  for (const auto& [l, v] : terms_) {
    os << (firstTerm ? "" : ", ") << l.str() << ":" << v;
    firstTerm = false;
  }
  os << "}";
  return os.str();
}

Label pack(const std::vector<Label>& parts) {
  if (parts.empty()) return Label::unit();
  Label acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = Label::pair(parts[i], acc);
  return acc;
}

std::vector<Label> unpack(const Label& l, std::size_t n) {
  std::vector<Label> out;
  if (n == 0) return out;
  out.reserve(n);
  Label cur = l;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    out.push_back(cur.first());
    cur = cur.second();
  }
  out.push_back(cur);
  return out;
}

std::pair<Label, Label> split(const Label& l, std::size_t na, std::size_t nb) {
  if (na == 0) return {Label::unit(), l};
  if (nb == 0) return {l, Label::unit()};
  if (na == 1) return {l.first(), l.second()};
  auto parts = unpack(l, na + nb);
  return {pack({parts.begin(), parts.begin() + static_cast<long>(na)}),
          pack({parts.begin() + static_cast<long>(na), parts.end()})};
}

Label join(const Label& a, std::size_t na, const Label& b, std::size_t nb) {
  if (na == 0) return b;
  if (nb == 0) return a;
  if (na == 1) return Label::pair(a, b);
  auto parts = unpack(a, na);
  parts.push_back(b);  // b is already the right-nested tail
  return pack(parts);
}

}  // namespace dm
