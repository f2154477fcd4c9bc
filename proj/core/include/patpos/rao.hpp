#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "patpos/poset.hpp"

namespace patpos {

/// Atom order for a rooted interval [alpha, 1̂]_chain. `chain` is the
/// saturated chain 0̂ = c_0 ⋖ ... ⋖ c_r = alpha; `atoms` are the upper covers
/// of alpha. Must return a permutation of `atoms`.
using AtomOrderFn = std::function<std::vector<ElementId>(
    const FinitePoset&, std::span<const ElementId> chain, std::span<const ElementId> atoms)>;

/// Either one linear order on all elements (inducing every atom order) or a
/// per-rooted-interval provider.
class AtomOrdering {
 public:
  static AtomOrdering linear(std::vector<ElementId> order);
  static AtomOrdering provider(AtomOrderFn fn);

  bool is_linear() const { return !order_.empty(); }
  const std::vector<ElementId>& order() const { return order_; }
  std::vector<ElementId> atoms_for(const FinitePoset& p, std::span<const ElementId> chain,
                                   std::span<const ElementId> atoms) const;

 private:
  std::vector<ElementId> order_;
  std::vector<int> pos_;  // order index per id, linear case
  AtomOrderFn fn_;
};

struct RaoViolation {
  enum class Kind { r1, r2, bad_ordering };
  Kind kind = Kind::r2;
  std::vector<ElementId> chain;  // root chain up to and including alpha
  ElementId alpha = -1;
  ElementId atom_i = -1, atom_j = -1, y = -1;  // R2 witness
  std::string detail;
};

struct RaoCheck {
  bool pass = false;
  std::optional<RaoViolation> violation;
  long long rooted_intervals = 0;
};

struct RaoOptions {
  // Bound on saturated chains visited when a per-interval provider forces the
  // full rooted-interval walk; linear orders use the polynomial path.
  long long max_rooted_intervals = 5'000'000;
};

/// Exhaustive check of conditions R1 and R2 over every rooted interval.
/// Pre: bounded and pure.
RaoCheck check_rao(const FinitePoset& p, const AtomOrdering& ordering, const RaoOptions& opts = {});

/// The (a_k, z) pair witnessing R2 for the pair (·, ordered_atoms[j]) under
/// upper bound y, if any: k < j, z an atom of [a_j, 1̂], y ≥ z > a_k.
std::optional<std::pair<ElementId, ElementId>> r2_witness(const FinitePoset& p,
                                                          std::span<const ElementId> ordered_atoms,
                                                          std::size_t j, ElementId y);

/// Condition R2 alone for one ordered atom list of a bounded poset (used by
/// the satcond2 analysis on the bottom rooted interval).
std::optional<RaoViolation> r2_check(const FinitePoset& p, std::span<const ElementId> ordered_atoms);

/// Backtracking search for any recursive atom ordering. Interior size is
/// guarded (default 14) since the search is exponential.
bool rao_exists(const FinitePoset& p, std::size_t interior_guard = 14);

}  // namespace patpos
