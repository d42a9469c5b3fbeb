#pragma once

#include "diffmod/object.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dm {

struct ObjectMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct TruncationExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Declared bound on weight(output) - weight(input); nullopt = unbounded.
struct Shift {
  std::optional<long> lo, hi;
  static Shift exact(long s) { return {s, s}; }
  static Shift none() { return {}; }
};

class Morphism;
using Mor = std::shared_ptr<const Morphism>;

// Column(x, w) returns exactly those terms of the column at x that the
// window w admits. Reflect(w) is a window on inputs outside of which no
// column has a term admitted by w.
using Column = std::function<LinComb(const Label&, const Window&)>;
using Reflect = std::function<Window(const Window&)>;

class Morphism {
 public:
  Morphism(Obj src, Obj tgt, std::string name, const Rig& rig, Column col, Shift shift,
           Reflect reflect, bool finite);

  const Obj& src() const { return src_; }
  const Obj& tgt() const { return tgt_; }
  const std::string& name() const { return name_; }
  const Rig& rig() const { return *rig_; }
  const Shift& shift() const { return shift_; }
  bool finite() const { return finite_; }

  // Throws TruncationExceeded for an unbounded window on an infinite
  // column; asserts the declared shift on every returned term.
  LinComb apply(const Label& x, const Window& w = Window::full()) const;
  // Intersection of the supplied reflection with the one implied by the
  // lower shift bound.
  Window reflect(const Window& w) const;

 private:
  Obj src_, tgt_;
  std::string name_;
  const Rig* rig_;
  Column col_;
  Shift shift_;
  Reflect reflect_;
  bool finite_;
};

Reflect reflect_from_shift(const Shift& s);

// Generic constructor; if `reflect` is empty it is derived from the shift.
Mor make_mor(Obj src, Obj tgt, std::string name, const Rig& rig, Column col, Shift shift,
             Reflect reflect = nullptr, bool finite = true);
// Finite column given as a plain function; the window is applied afterwards.
Mor basis_map(Obj src, Obj tgt, std::string name, const Rig& rig,
              std::function<LinComb(const Label&)> f, Shift shift);
Mor renamed(const Mor& f, std::string name);

Mor identity(const Obj& a, const Rig& rig);
Mor zero_morphism(const Obj& a, const Obj& b, const Rig& rig);
// Same labels, different object identity (e.g. a fused object and the
// tensor it realises).
Mor relabel(const Obj& a, const Obj& b, const Rig& rig);

Mor compose(const Mor& g, const Mor& f);
Mor compose(std::initializer_list<Mor> chain);  // leftmost applied last
Mor add(const Mor& f, const Mor& g);
Mor scale(const Mor& f, const Value& c);
Mor tensor_mor(const Mor& f, const Mor& g);
Mor tensor_mor(std::initializer_list<Mor> fs);
Mor symmetry(const Obj& a, const Obj& b, const Rig& rig);

struct Biproduct {
  Obj obj;
  Mor in0, in1, out0, out1;
};
Biproduct biproduct_maps(const Obj& a, const Obj& b, const Rig& rig);
Mor pairing(const Mor& f, const Mor& g);    // C -> A⊕B
Mor copairing(const Mor& f, const Mor& g);  // A⊕B -> C

// Points of `o` supported on labels of weight <= max_weight, as maps I -> o.
std::vector<Mor> points(const Obj& o, long max_weight, const Rig& rig);
// The point I -> o picking out a finite combination.
Mor point_map(const Obj& o, const LinComb& p, const Rig& rig, const std::string& name = "pt");

struct Comparison {
  bool equal = true;
  std::optional<Label> witness;
  LinComb lhs, rhs;
  Window window;
  std::size_t labels_checked = 0;
};

// Exact columnwise comparison on every source label of weight <= d.
// Finite sides are compared in full; if either side may have infinite
// columns the comparison inspects output weight <= weight(x) + slack.
Comparison morphisms_equal_up_to(const Mor& f, const Mor& g, long d, long slack = 3);
void require_same(const Obj& a, const Obj& b, const std::string& what);

}  // namespace dm

namespace dm {

// Same morphism, with columns cached per (label, window). Internally
// synchronised.
Mor memoize(const Mor& f);

}  // namespace dm
