#pragma once

#include "diffmod/actions.hpp"
#include "diffmod/modality.hpp"

namespace dm {

// Memoising object map: repeated calls on the same key return the same
// object, so per-weight enumeration caches are shared.
std::function<Obj(const Obj&)> cached_object_map(std::function<Obj(const Obj&)> make);

// Finite bags. Over bool the comultiplication δ decomposes a bag into a
// bag of possibly empty bags, so its columns are infinite and are only
// evaluated inside a window; m_I and m⊗ are provided over bool only.
// Over other rigs δ sums labelled set partitions into non-empty blocks.
Modality bag_modality(const Rig& rig);

// Finite-support points of X over bool or z2.
Modality points_modality(const Rig& rig);

struct SeelyMaps {
  Mor chi_top;   // !0 -> I
  Mor chi;       // !(X⊕Y) -> !X⊗!Y
  Mor cochi_top; // I -> !0
  Mor cochi;     // !X⊗!Y -> !(X⊕Y)
};
SeelyMaps seely_maps(const Modality& m, const Obj& x, const Obj& y);

Mor codereliction_of(const Modality& m, const Obj& x);  // d∘(u⊗1)
Mor deriving_of(const Modality& m, const Obj& x);       // ∇∘(1⊗η)

// Set partitions of positions 0..n-1 into non-empty blocks, by
// restricted growth strings.
void for_each_set_partition(std::size_t n,
                            const std::function<void(const std::vector<std::vector<std::size_t>>&)>& f);

}  // namespace dm
