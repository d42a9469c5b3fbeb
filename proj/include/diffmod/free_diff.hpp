#pragma once

#include "diffmod/modalities.hpp"

namespace dm {

enum class DeltaRoute { Auto, Generic, Factored };

// The free differential modality !∂X = !X⊗SX on a coalgebra modality,
// realised on a single fused object with labels Pair(!X label, bag).
struct FreeDiff {
  Modality base;
  Modality result;
  Modality::Comp zeta;         // !X -> !∂X
  Modality::Comp relabel;      // !∂X -> !X⊗SX
  Modality::Comp relabel_inv;  // !X⊗SX -> !∂X
  Modality::Comp delta_generic;
  Modality::Comp delta_factored;  // points base only
  Modality::Comp delta_prime;   // SX -> SSX, points base only
};

FreeDiff free_differential(const Modality& base, DeltaRoute route = DeltaRoute::Auto);
Mor delta_partial(const FreeDiff& fd, const Obj& x, DeltaRoute route);

// !∂(π0⊗π1) ∘ n_{X⊕Y} ∘ (!∂ι0⊗!∂ι1) with n = !∂(ε∂⊗ε∂)∘!∂Δ∂∘δ∂∘∇∂.
Mor monoidal_constraint(const FreeDiff& fd, const Obj& x, const Obj& y);
Mor aux_n(const FreeDiff& fd, const Obj& z);

// Over bool: ρ: PX -> !X, ρ♯: P∂X -> !X, and ψ♯: !∂X -> !X for ψ = id.
struct InitialMorphisms {
  Modality points, bag;
  FreeDiff points_diff, bag_diff;
  Modality::Comp rho, rho_sharp, psi_sharp;
  // The x-independent map C ↦ ρ♭(C) = ext(u, d)(C) on SX.
  Modality::Comp rho_flat;
};
InitialMorphisms initial_morphisms(const Rig& rig);

// Bags with members from `keys`, each costing 1 + weight, within the window.
LinComb bags_within(const std::vector<Label>& keys, const Window& w, const Rig& rig);

}  // namespace dm
