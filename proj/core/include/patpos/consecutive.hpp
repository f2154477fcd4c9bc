#pragma once

#include <vector>

#include "patpos/embedding.hpp"
#include "patpos/pattern_system.hpp"

namespace patpos {

/// Prefix/suffix pattern data of a permutation under consecutive containment.
struct BifixInfo {
  Word exterior;                // longest proper bifix x(π)
  Word interior;                // red(π₂…π_{n−1}); empty word for n = 2
  bool is_monotone = false;     // 12…n or n…21
  std::vector<Word> all_bifixes;  // ascending length, reduced
};

/// Pre: |p| ≥ 2.
BifixInfo bifix_info(const Word& p);

/// The closed-form Möbius function of the consecutive pattern poset,
/// recursing through the exterior in the first case. Returns 0 when a ≰ b.
long long sw_mobius_formula(const PatternSystem& consecutive_sys, const Word& a, const Word& b);

bool is_prefix_embedding(const Embedding& e);
bool is_suffix_embedding(const Embedding& e);

/// μ(η, π) inside Â*(σ,π) by the prefix/suffix case analysis: 0 when the gap
/// exceeds 2, 0 for prefix/suffix embeddings at gap 2, (−1)^gap otherwise.
long long mu_embedding_to_top(const PatternSystem& consecutive_sys, const Embedding& e,
                              const Word& b);

/// μ(Â*(a,b)): 1 when a = x(b) and a ≰ i(b), else 0. Pre: a < b.
long long mu_a_star_consecutive(const PatternSystem& consecutive_sys, const Word& a, const Word& b);

}  // namespace patpos
