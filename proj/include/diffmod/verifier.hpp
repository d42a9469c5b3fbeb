#pragma once

#include "diffmod/free_diff.hpp"
#include "diffmod/report.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dm {

// Objects an equation is instantiated at. Y and Z are primed copies of X
// so that tensors of them never collide with tensors of X.
struct Instance {
  Obj X, Y, Z;
  std::string describe(const std::string& suite) const;
};
Instance make_instance(const std::vector<std::string>& atom_names);

// Components phi_X : M X -> N X.
struct ModalityMorphism {
  std::string name;
  Modality from, to;
  Modality::Comp phi;
};

// What a suite is run on: a modality, or a morphism of modalities (in
// which case `m` is unused).
struct Subject {
  Modality m;
  std::optional<ModalityMorphism> phi;
};

struct Equation {
  std::string id;
  std::function<std::pair<Mor, Mor>(const Subject&)> sides;
  // Documented mutation: replacing one generator must make this equation
  // fail.
  std::string mutation;
  std::function<Subject(const Subject&)> mutate;
  long slack = 3;
};

const std::vector<std::string>& suite_names();
bool is_morphism_suite(const std::string& suite);

// Throws std::invalid_argument for an unknown suite and MissingComponent
// when the subject lacks a generator the suite needs.
std::vector<Equation> suite_equations(const std::string& suite, const Subject& s,
                                      const Instance& inst);
void require_components(const std::string& suite, const Subject& s);

CheckReport check_equation(const Equation& eq, const Subject& s, const std::string& suite,
                           const Instance& inst, long d);

// One report per equation, in declaration order whatever `jobs` is.
std::vector<CheckReport> run_suite(const std::string& suite, const Subject& s,
                                   const Instance& inst, long d, int jobs = 1);

// One report per equation: pass means the mutant was caught, i.e. the
// equation failed with a witness once its documented mutation is applied.
std::vector<CheckReport> run_mutants(const std::string& suite, const Subject& s,
                                     const Instance& inst, long d, int jobs = 1);

// Sets m.caps from passing suites (comonad+coalgebra, bialgebra, monoidal,
// differential).
Capabilities earn_capabilities(Modality& m, const Instance& inst, long d, int jobs = 1);

bool all_pass(const std::vector<CheckReport>& rs);

// Deriving transformations d : PX⊗X -> PX over bool, as relations.
using Relation = std::vector<std::pair<Label, Label>>;

struct Refutation {
  std::uint64_t candidates_tested = 0;
  std::uint64_t pass_constant = 0;  // survivors of the constant rule
  std::uint64_t pass_linear = 0;    // ... and then the linear rule
  std::vector<Relation> survivors;  // pass all five rules
  std::string method;               // "exhaustive" or "columnwise"
};

// Objects of the search: PX⊗X and PX for X of `xsize` atoms.
std::pair<Obj, Obj> deriving_search_space(int xsize);
// Constant, then linear, then the other three rules; stops at the first
// failure.
std::vector<CheckReport> check_deriving_candidate(const Relation& rel, int xsize, long d);
// |X| = 1 enumerates all 16 relations. |X| = 2 uses that the constant and
// linear rules are columnwise, so the 2^32 candidates factor per column.
// Larger X throws std::invalid_argument("search space too large").
Refutation refute_deriving(int xsize, long d);

// Over z2: the coalgebra C = span{1, d} and the two maps f, f' : C -> P∂X.
std::vector<CheckReport> lemma27_witness(long d);

// Closed-form relational oracles for the eleven structure maps of P∂ over
// bool against the construction. m∂⊗ is checked at min(d, tensor_weight).
std::vector<CheckReport> rel_oracle_compare(const std::vector<std::string>& x,
                                            const std::vector<std::string>& y, long d,
                                            long tensor_weight = 2);

}  // namespace dm
