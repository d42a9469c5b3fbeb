#include "diffmod/cli.hpp"

#include "diffmod/json_io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>

namespace dm {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Common {
  std::string rig = "bool";
  std::string object = R"({"atoms":["a"]})";
  long weight = 3;
  int jobs = 1;
  std::string out_file;
  bool no_timing = false;
};

void add_common(CLI::App* sub, Common& c, bool objects) {
  if (objects) {
    sub->add_option("--rig", c.rig, "bool, nat, z2 or int")->capture_default_str();
    sub->add_option("--object", c.object, "object spec, e.g. {\"atoms\":[\"a\",\"b\"]}")->capture_default_str();
  }
  sub->add_option("--weight", c.weight, "truncation weight D")->capture_default_str()->check(CLI::NonNegativeNumber);
  sub->add_option("--jobs", c.jobs, "parallel checks")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--out", c.out_file, "also write the JSON here (relative to $DIFFMOD_OUT_DIR if set)");
  sub->add_flag("--no-timing", c.no_timing, "report millis as 0");
}

const Rig& rig_of(const std::string& name) {
  try {
    return Rig::by_name(name);
  } catch (const std::invalid_argument&) {
    throw UsageError("unknown rig " + name);
  }
}

// The modality selector also accepts the free differential modalities
// over either base.
Modality modality_of(const std::string& name, const Rig& r) {
  try {
    if (name == "bag") return bag_modality(r);
    if (name == "points") return points_modality(r);
    if (name == "free-diff(points)") return free_differential(points_modality(r)).result;
    if (name == "free-diff(bag)") return free_differential(bag_modality(r)).result;
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown modality " + name);
}

ModalityMorphism morphism_of(const std::string& name, const Rig& r) {
  if (name == "zeta(points)") {
    FreeDiff fd = free_differential(points_modality(r));
    return {"ζ", fd.base, fd.result, fd.zeta};
  }
  if (name == "zeta(bag)") {
    FreeDiff fd = free_differential(bag_modality(r));
    return {"ζ", fd.base, fd.result, fd.zeta};
  }
  if (name == "rho" || name == "rho-sharp" || name == "psi-sharp") {
    if (!r.idempotent()) throw UsageError(name + " is only built over bool");
    InitialMorphisms im = initial_morphisms(r);
    if (name == "rho") return {"ρ", im.points, im.bag, im.rho};
    if (name == "rho-sharp") return {"ρ♯", im.points_diff.result, im.bag, im.rho_sharp};
    return {"ψ♯", im.bag_diff.result, im.bag, im.psi_sharp};
  }
  throw UsageError("unknown modality morphism " + name);
}

std::vector<std::string> atoms_arg(const std::string& spec) {
  try {
    return atoms_from_spec(spec);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void emit(const json& j, const Common& c, std::ostream& out) {
  std::string text = j.dump(2) + "\n";
  out << text;
  if (c.out_file.empty()) return;
  std::filesystem::path p(c.out_file);
  if (p.is_relative())
    if (const char* dir = std::getenv("DIFFMOD_OUT_DIR")) p = std::filesystem::path(dir) / p;
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << text;
}

// Map names; a "-partial" suffix (as in epsilon-partial) is accepted.
Mor component_of(const std::string& name0, const std::string& modality, const Rig& r, const Obj& x) {
  std::string name = name0;
  const std::string suffix = "-partial";
  if (name.size() > suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
    name.erase(name.size() - suffix.size());

  if (name == "rho" || name == "rho-sharp" || name == "psi-sharp" || name == "zeta")
    return morphism_of(name == "zeta" ? "zeta(" + (modality == "free-diff(bag)" ? std::string("bag") : std::string("points")) + ")"
                                      : name,
                       r)
        .phi(x);

  if (name == "delta-generic" || name == "delta-factored") {
    if (modality != "free-diff(points)" && modality != "free-diff(bag)")
      throw UsageError(name + " needs a free-diff modality");
    FreeDiff fd = free_differential(modality == "free-diff(points)" ? points_modality(r) : bag_modality(r));
    return delta_partial(fd, x, name == "delta-generic" ? DeltaRoute::Generic : DeltaRoute::Factored);
  }

  Modality m = modality_of(modality, r);
  auto get = [&](const Modality::Comp& c, const char* what) {
    if (!c) throw UsageError(m.name + " has no " + what);
    return c(x);
  };
  if (name == "epsilon") return get(m.eps, "ε");
  if (name == "delta") return get(m.delta, "δ");
  if (name == "e") return get(m.e, "e");
  if (name == "Delta") return get(m.Delta, "Δ");
  if (name == "d") return get(m.d, "d");
  if (name == "u") return get(m.u, "u");
  if (name == "nabla") return get(m.nabla, "∇");
  if (name == "eta") return get(m.eta, "η");
  if (name == "m_I") {
    if (!m.m_unit) throw UsageError(m.name + " has no m_I");
    return m.m_unit();
  }
  if (name == "m_tensor") {
    if (!m.m_tensor) throw UsageError(m.name + " has no m⊗");
    return m.m_tensor(x, x);
  }
  throw UsageError("unknown map " + name0);
}

int exit_for(const std::vector<CheckReport>& reps) { return all_pass(reps) ? 0 : 1; }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Checks the equations of differential modalities on finite bases.", "diffmod"};
  app.require_subcommand(1);

  Common c;
  std::string suite, modality, name, apply, target, oracle = "rel", xs = R"({"atoms":["a"]})",
                                                       ys = R"({"atoms":["a"]})";
  bool mutants = false;
  int object_size = 1;
  long tensor_weight = 2;

  auto* check = app.add_subcommand("check", "run an equation suite");
  check->add_option("--suite", suite, "suite name")->required();
  check->add_option("--modality", modality,
                    "bag, points, free-diff(points), free-diff(bag); for morphism suites zeta(points), "
                    "zeta(bag), rho, rho-sharp, psi-sharp")
      ->required();
  check->add_flag("--mutants", mutants, "apply each equation's documented mutation; pass = caught");
  add_common(check, c, true);

  auto* map = app.add_subcommand("map", "print one column of a structure map");
  map->add_option("--name", name, "epsilon, delta, e, Delta, d, u, nabla, eta, m_I, m_tensor, zeta, "
                                  "delta-generic, delta-factored, rho, rho-sharp, psi-sharp")
      ->required();
  map->add_option("--modality", modality, "modality")->required();
  map->add_option("--apply", apply, "source label as JSON")->required();
  add_common(map, c, true);

  auto* refute = app.add_subcommand("refute", "search for deriving transformations on P");
  refute->add_option("--target", target, "points-deriving")->required();
  refute->add_option("--object-size", object_size, "number of atoms")->capture_default_str();
  add_common(refute, c, false);

  auto* compare = app.add_subcommand("compare", "closed-form relational oracle for P∂ over bool");
  compare->add_option("--oracle", oracle, "rel")->capture_default_str();
  compare->add_option("--x", xs, "object spec for X")->capture_default_str();
  compare->add_option("--y", ys, "object spec for Y")->capture_default_str();
  compare->add_option("--tensor-weight", tensor_weight, "weight cap for m∂⊗")->capture_default_str();
  add_common(compare, c, false);

  auto* lemma = app.add_subcommand("lemma27", "two coalgebra maps into P∂ over z2 with the same ε∂ image");
  add_common(lemma, c, false);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    bool timing = !c.no_timing;
    if (check->parsed()) {
      const Rig& r = rig_of(c.rig);
      Instance inst = make_instance(atoms_arg(c.object));
      if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
        throw UsageError("unknown suite " + suite);
      Subject s;
      if (is_morphism_suite(suite)) {
        ModalityMorphism mm = morphism_of(modality, r);
        s = Subject{mm.to, mm};
      } else {
        s = Subject{modality_of(modality, r), std::nullopt};
      }
      std::vector<CheckReport> reps;
      try {
        reps = mutants ? run_mutants(suite, s, inst, c.weight, c.jobs)
                       : run_suite(suite, s, inst, c.weight, c.jobs);
      } catch (const MissingComponent& e) {
        throw UsageError(e.what());
      }
      emit(reports_to_json(reps, timing), c, out);
      return exit_for(reps);
    }
    if (map->parsed()) {
      const Rig& r = rig_of(c.rig);
      Obj x = atoms(atoms_arg(c.object));
      Label l;
      try {
        l = label_from_json(json::parse(apply));
      } catch (const json::parse_error& e) {
        throw UsageError(std::string("--apply is not JSON: ") + e.what());
      }
      Mor f = component_of(name, modality, r, x);
      if (!f->src()->member(l)) throw UsageError(l.str() + " is not a label of " + f->src()->key());
      Window w = f->finite() ? Window::full() : Window::upto(l.weight() + c.weight);
      json j = comb_to_json(f->apply(l, w), r);
      emit(j, c, out);
      return 0;
    }
    if (refute->parsed()) {
      if (target != "points-deriving") throw UsageError("unknown refutation target " + target);
      Refutation res = refute_deriving(object_size, c.weight);
      emit(refutation_to_json(res), c, out);
      return res.survivors.empty() ? 0 : 1;
    }
    if (compare->parsed()) {
      if (oracle != "rel") throw UsageError("unknown oracle " + oracle);
      auto reps = rel_oracle_compare(atoms_arg(xs), atoms_arg(ys), c.weight, tensor_weight);
      emit(reports_to_json(reps, timing), c, out);
      return exit_for(reps);
    }
    if (lemma->parsed()) {
      auto reps = lemma27_witness(c.weight);
      emit(reports_to_json(reps, timing), c, out);
      return exit_for(reps);
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace dm
