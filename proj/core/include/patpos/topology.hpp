#pragma once

#include <optional>
#include <string>
#include <vector>

#include "patpos/embedding.hpp"
#include "patpos/fibration.hpp"
#include "patpos/rao.hpp"
#include "patpos/report.hpp"

namespace patpos {

enum class ZeroSplitMode { plain, representative, strong };

ZeroSplitMode parse_zero_split_mode(const std::string& text);

struct ZeroSplitPartition {
  ZeroSplitMode mode = ZeroSplitMode::plain;
  std::vector<Embedding> part_one, part_two;
};

/// A zero split partition of the (representative) embedding set, found via the
/// zero-set intersection graph; strong mode additionally avoids forbidden
/// single-undash collisions across the parts. Intervals of rank ≤ 1 are never
/// zero split. Returns nullopt when no such partition exists.
std::optional<ZeroSplitPartition> find_zero_split(const PatternSystem& sys, const Word& a,
                                                  const Word& b, ZeroSplitMode mode);

struct DisconnectionReport {
  bool strongly_zero_split = false;
  bool interior_disconnected = false;
  bool biconditional_holds = false;
  bool components_match = false;  // true also when not split (vacuous)
  std::vector<std::vector<Word>> predicted_components;
  std::vector<std::vector<Word>> actual_components;
};

/// Both sides of "disconnected ⇔ strongly zero split", computed independently,
/// plus the explicit component prediction when split. Pre: fully closed,
/// rank ≥ 3.
DisconnectionReport disconnection_check(const PatternSystem& sys, const Word& a, const Word& b);

struct EquivalenceReport {
  bool zero_split = false;
  bool a_star_disconnected = false;
  bool rep_zero_split = false;
  bool r_star_disconnected = false;
  std::optional<bool> a_disconnected;  // rank ≥ 3 only
  std::optional<bool> r_disconnected;
  bool equivalent = false;
  std::string to_text() const;
};

/// The §-"the following conditions are equivalent" suite on one interval.
/// Pre: fully closed, rank ≥ 2.
EquivalenceReport equivalence_suite(const PatternSystem& sys, const Word& a, const Word& b);

struct SatCond2Report {
  bool r2_holds = false;
  std::optional<RaoViolation> r2_violation;
  bool rao_constructed = false;
  RaoCheck rao_check;                       // meaningful when constructed
  std::vector<Embedding> v_set;             // atoms with at(η) = Ω(η)
  long long mu_r_star_recursive = 0;
  std::optional<long long> mu_formula;      // fully-closed systems only
  bool mu_match = true;
};

/// Checks the supplied order of the atoms of R̂*(σ,π) against condition R2;
/// when it holds, builds the recursive atom ordering of the lemma (rank 0 by
/// the given order, rank 1 with Ω first by filling position, higher ranks by
/// the first atom's adjacency priorities), verifies it, and computes V(σ,π)
/// with the fully-closed Möbius cross-check. Empty `order` means the
/// position-word lexicographic default. Pre: closed system, a < b.
SatCond2Report satcond2_analysis(const PatternSystem& sys, const Word& a, const Word& b,
                                 std::vector<int> order = {});

/// Björner's subword Möbius value (−1)^{|w|−|u|}·NE(u,w); 0 when u ≰ w.
long long bjorner_mobius(const PatternSystem& subword_sys, const Word& u, const Word& w);

}  // namespace patpos
