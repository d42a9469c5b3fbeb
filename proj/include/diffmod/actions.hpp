#pragma once

#include "diffmod/modality.hpp"
#include "diffmod/report.hpp"

#include <optional>

namespace dm {

// A commuting action act: carrier⊗base -> carrier (commutativity is a
// property checked by is_commuting, not enforced).
struct ActionData {
  Obj carrier;
  Obj base;
  Mor act;
};

struct SymAlg {
  Obj X, S;
  Mor u;      // I -> SX
  Mor d;      // SX⊗X -> SX
  Mor eta;    // X -> SX
  Mor nabla;  // SX⊗SX -> SX
  Mor e;      // SX -> I
  Mor Delta;  // SX -> SX⊗SX
  Mor eps;    // SX -> X
  Mor iota(long n) const;  // multisets of exactly n members
};

Obj sym_object(const Obj& x);
SymAlg symmetric_algebra(const Obj& x, const Rig& rig);

// Bag-level building blocks shared by S and the bag modality.
LinComb bag_split(const Label& b, const Rig& rig);  // Σ C(m,k) B1⊗B2
Mor bag_fmap(const Mor& f, const Obj& src, const Obj& tgt, const std::string& name);
Mor sym_on_morphism(const Mor& f);

// The unique action map (A⊗SX, A⊗d) -> (B, β) extending f. Columns are
// computed along the canonical ordering of the bag. If `max_weight` is
// set, asking for a column of a heavier source label throws
// TruncationExceeded.
Mor universal_extend(const Mor& f, const ActionData& beta,
                     std::optional<long> max_weight = std::nullopt);

ActionData unit_action(const Obj& x, const Rig& rig);
ActionData boxtimes(const ActionData& a, const ActionData& b);
ActionData free_nilsquare(const Obj& x, const Rig& rig);
ActionData sym_action(const Obj& x, const Rig& rig);  // (SX, d)

// act∘(act⊗X) against act∘(act⊗X)∘(A⊗σ) on carrier⊗X⊗X.
CheckReport is_commuting(const ActionData& a, long d);

Mor coderive(const Modality& m, const Obj& x);  // (1⊗ε)∘Δ
ActionData lift_modality(const Modality& m, const ActionData& a);

}  // namespace dm
