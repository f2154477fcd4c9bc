#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "patpos/embedding.hpp"
#include "patpos/pattern_system.hpp"
#include "patpos/poset.hpp"

namespace patpos {

/// A built embedding space Â*(λ,π) or R̂*(λ,π) together with the Möbius data
/// the decomposition formulas consume.
struct HattedSpace {
  FinitePoset poset;                 // embeddings plus 0̂ and π
  std::vector<Embedding> embeddings; // ids 0..m-1
  ElementId bottom_id = -1, top_id = -1;
  long long mobius = 0;                 // μ(0̂, π)
  std::vector<long long> mobius_to_top; // μ(id, π) per id
};

/// Everything the sweep machinery needs about the elements below one fixed
/// top element π: the pattern sub-poset, embedding sets, and memoized Möbius
/// numbers of the hatted spaces. Build once per π, share across all σ.
class PatternContext {
 public:
  PatternContext(const PatternSystem& sys, const Word& pi);

  const PatternSystem& system() const { return sys_; }
  const Word& top() const { return pi_; }
  int top_index() const { return top_index_; }

  const std::vector<Word>& elements() const { return elements_; }  // all λ ≤ π
  int index_of(const Word& w) const;                               // -1 when absent
  bool leq(int a, int b) const;
  long long rank_gap_from(int a) const { return sys_.rank_gap(elements_[static_cast<std::size_t>(a)], pi_); }

  const std::vector<Embedding>& embeddings_of(int lambda) const;  // E^{λ,π}
  const std::vector<Embedding>& representative_embeddings_of(int lambda) const;

  /// μ(a,b) in the pattern poset, memoized per base.
  long long pattern_mobius(int a, int b) const;

  const HattedSpace& a_star_hat(int lambda) const;
  const HattedSpace& r_star_hat(int lambda) const;  // closed systems only

  /// The interval [a, π] (or [a,b]) as a FinitePoset; ids index into the
  /// returned element list.
  Interval interval(int a) const;
  Interval interval(int a, int b) const;

 private:
  PatternSystem sys_;
  Word pi_;
  std::vector<Word> elements_;
  std::map<Word, int> index_;
  int top_index_ = -1;
  std::vector<std::uint64_t> leq_bits_;
  std::size_t row_words_ = 0;

  mutable std::vector<std::optional<std::vector<Embedding>>> embs_;
  mutable std::vector<std::optional<std::vector<Embedding>>> rep_embs_;
  mutable std::map<int, std::vector<long long>> mobius_memo_;
  mutable std::vector<std::unique_ptr<HattedSpace>> a_star_;
  mutable std::vector<std::unique_ptr<HattedSpace>> r_star_;

  HattedSpace build_hatted(int lambda, bool representative) const;
};

}  // namespace patpos
