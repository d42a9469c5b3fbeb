#include "diffmod/rig.hpp"

#include <stdexcept>

namespace dm {

const Rig& Rig::get(RigKind k) {
  static const Rig b(RigKind::Bool, "bool");
  static const Rig n(RigKind::Nat, "nat");
  static const Rig z(RigKind::Z2, "z2");
  static const Rig i(RigKind::Int, "int");
  switch (k) {
    case RigKind::Bool: return b;
    case RigKind::Nat: return n;
    case RigKind::Z2: return z;
    case RigKind::Int: return i;
  }
  throw std::logic_error("bad rig kind");
}

const Rig& Rig::by_name(std::string_view name) {
  if (name == "bool") return get(RigKind::Bool);
  if (name == "nat") return get(RigKind::Nat);
  if (name == "z2") return get(RigKind::Z2);
  if (name == "int") return get(RigKind::Int);
  throw std::invalid_argument("unknown rig: " + std::string(name));
}

Value Rig::normalize(const Value& v) const {
  switch (kind_) {
    case RigKind::Bool: return v != 0 ? Value(1) : Value(0);
    case RigKind::Z2: {
      Value r = v % 2;
      return r < 0 ? r + 2 : r;
    }
    case RigKind::Nat:
      if (v < 0) throw std::domain_error("negative value in nat");
      return v;
    case RigKind::Int: return v;
  }
  return v;
}

Value Rig::add(const Value& a, const Value& b) const {
  switch (kind_) {
    case RigKind::Bool: return (a != 0 || b != 0) ? Value(1) : Value(0);
    case RigKind::Z2: return (a + b) % 2;
    default: return a + b;
  }
}

Value Rig::mul(const Value& a, const Value& b) const {
  switch (kind_) {
    case RigKind::Bool: return (a != 0 && b != 0) ? Value(1) : Value(0);
    case RigKind::Z2: return (a * b) % 2;
    default: return a * b;
  }
}

bool Rig::valid(const Value& v) const {
  switch (kind_) {
    case RigKind::Bool:
    case RigKind::Z2: return v == 0 || v == 1;
    case RigKind::Nat: return v >= 0;
    case RigKind::Int: return true;
  }
  return false;
}

std::vector<Value> Rig::elements() const {
  if (!finite()) throw std::domain_error("rig " + name_ + " has no element enumerator");
  return {Value(0), Value(1)};
}

std::vector<Value> Rig::nonzero_elements() const {
  if (!finite()) throw std::domain_error("rig " + name_ + " has no element enumerator");
  return {Value(1)};
}

std::string Rig::format(const Value& v) const { return v.str(); }

}  // namespace dm
