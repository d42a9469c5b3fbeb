#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace dm {

using Value = boost::multiprecision::cpp_int;

enum class RigKind { Bool, Nat, Z2, Int };

// Commutative rig of coefficients. Values of every rig live in one
// arbitrary-precision integer type; each rig keeps them normalised
// (bool and z2 in {0,1}, nat non-negative).
class Rig {
 public:
  static const Rig& get(RigKind k);
  static const Rig& by_name(std::string_view name);  // throws std::invalid_argument

  RigKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  bool finite() const { return kind_ == RigKind::Bool || kind_ == RigKind::Z2; }
  bool idempotent() const { return kind_ == RigKind::Bool; }

  Value add(const Value& a, const Value& b) const;
  Value mul(const Value& a, const Value& b) const;
  Value normalize(const Value& v) const;  // image of an integer count n as n*1
  bool valid(const Value& v) const;

  std::vector<Value> elements() const;  // throws for infinite rigs
  std::vector<Value> nonzero_elements() const;

  std::string format(const Value& v) const;

 private:
  Rig(RigKind k, std::string n) : kind_(k), name_(std::move(n)) {}
  RigKind kind_;
  std::string name_;
};

}  // namespace dm
