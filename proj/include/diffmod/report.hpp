#pragma once

#include "diffmod/morphism.hpp"

#include <optional>
#include <string>

namespace dm {

// Outcome of one equation at one instantiation and truncation weight.
struct CheckReport {
  std::string suite;
  std::string equation;
  std::string objects;
  std::string rig;
  long weight = 0;
  bool pass = true;
  std::optional<Label> witness;
  LinComb lhs, rhs;
  std::string window;
  std::string error;  // set when evaluation itself failed
  long millis = 0;
};

CheckReport check_equal(const std::string& equation, const Mor& lhs, const Mor& rhs, long d,
                        long slack = 3);

}  // namespace dm
