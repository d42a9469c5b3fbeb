#include "diffmod/report.hpp"

#include <chrono>

namespace dm {

CheckReport check_equal(const std::string& equation, const Mor& lhs, const Mor& rhs, long d,
                        long slack) {
  CheckReport rep;
  rep.equation = equation;
  rep.rig = lhs->rig().name();
  rep.weight = d;
  auto t0 = std::chrono::steady_clock::now();
  try {
    Comparison c = morphisms_equal_up_to(lhs, rhs, d, slack);
    rep.pass = c.equal;
    rep.witness = c.witness;
    rep.lhs = std::move(c.lhs);
    rep.rhs = std::move(c.rhs);
    rep.window = c.window.str();
  } catch (const std::exception& ex) {
    rep.pass = false;
    rep.error = ex.what();
  }
  auto t1 = std::chrono::steady_clock::now();
  rep.millis = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  return rep;
}

}  // namespace dm
