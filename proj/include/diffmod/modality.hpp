#pragma once

#include "diffmod/morphism.hpp"

#include <functional>
#include <string>

namespace dm {

struct MissingComponent : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Earned by running the corresponding suites (see verifier.hpp); never
// set by a constructor.
struct Capabilities {
  bool coalgebra = false;
  bool monoidal = false;
  bool bialgebra = false;
  bool differential = false;
};

// A modality as an object map, a morphism map and natural components
// indexed by objects. Copying a bundle and replacing one component is how
// the verifier builds mutants.
struct Modality {
  using Comp = std::function<Mor(const Obj&)>;

  std::string name;
  const Rig* rig = nullptr;
  std::function<Obj(const Obj&)> obj;
  std::function<Mor(const Mor&)> fmap;

  Comp eps, delta, e, Delta;        // required
  Comp d, u, nabla, eta;            // optional
  std::function<Mor()> m_unit;      // I -> !I
  std::function<Mor(const Obj&, const Obj&)> m_tensor;  // !X⊗!Y -> !(X⊗Y)

  Capabilities caps;

  const Rig& r() const { return *rig; }
  bool has_coalgebra() const { return eps && delta && e && Delta; }
  bool has_bialgebra() const { return has_coalgebra() && u && nabla; }
  bool has_monoidal() const { return has_coalgebra() && m_unit && m_tensor; }
  bool has_deriving() const { return has_coalgebra() && static_cast<bool>(d); }
  bool has_codereliction() const { return has_coalgebra() && static_cast<bool>(eta); }

  Mor need(const Comp& c, const char* what, const Obj& x) const {
    if (!c) throw MissingComponent(name + " has no " + what);
    return c(x);
  }
};

}  // namespace dm
