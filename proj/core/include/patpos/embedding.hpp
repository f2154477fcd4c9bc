#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "patpos/pattern_system.hpp"

namespace patpos {

/// One occurrence of a pattern in `base`, written as a length-|base| slot
/// sequence with kDash at the empty positions. Permutation kinds carry the
/// base's letters in the slots; word kinds carry the pattern's letters.
struct Embedding {
  Word base;
  std::vector<int> slots;

  int size() const { return static_cast<int>(slots.size()); }
  bool empty_at(int pos1) const { return slots[static_cast<std::size_t>(pos1 - 1)] == kDash; }
  int slot(int pos1) const { return slots[static_cast<std::size_t>(pos1 - 1)]; }

  Word pattern() const;                 // slots with dashes removed
  std::vector<int> zero_set() const;    // 1-based dash positions
  std::vector<int> support() const;     // 1-based non-dash positions
  std::uint64_t zero_mask() const;      // bit pos-1
  std::string to_string() const;

  bool operator==(const Embedding& o) const { return base == o.base && slots == o.slots; }
};

/// Non-empty positions in increasing order; the §6.1 shelling orders
/// embeddings lexicographically by this.
std::vector<int> position_word(const Embedding& e);

std::vector<Embedding> embeddings(const PatternSystem& sys, const Word& a, const Word& b);
long long embedding_count(const PatternSystem& sys, const Word& a, const Word& b);

struct AdjacencyBlock {
  int first = 0, last = 0;  // 1-based inclusive positions
  bool trivial() const { return first == last; }
  std::vector<int> tail() const;  // all but the first position
};

struct AdjacencyDecomposition {
  std::vector<AdjacencyBlock> blocks;
  std::vector<int> tail_positions() const;
  int block_of(int pos1) const;
};

/// Maximal runs of positions whose single-letter decreases all give the same
/// element, computed from the definition. Pre: closed system.
AdjacencyDecomposition adjacency_decomposition(const PatternSystem& sys, const Word& p);

enum class SlotKind { full, fillable, other };

struct PositionClass {
  SlotKind kind = SlotKind::other;
  bool empty = false;
};

/// Pre: closed system.
std::vector<PositionClass> classify_positions(const PatternSystem& sys, const Embedding& e);

enum class NormalPolicy {
  // Tail positions full, every other position full or fillable. Matches the
  // paper's worked examples and Björner's subword definition.
  tails_full_rest_full_or_fillable,
  // Tail positions full, every other position fillable (the definition read
  // literally). Kept selectable for experimentation.
  literal,
};

bool is_normal(const PatternSystem& sys, const Embedding& e,
               NormalPolicy policy = NormalPolicy::tails_full_rest_full_or_fillable);
std::vector<Embedding> normal_embeddings(const PatternSystem& sys, const Word& a, const Word& b,
                                         NormalPolicy policy = NormalPolicy::tails_full_rest_full_or_fillable);
long long normal_embedding_count(const PatternSystem& sys, const Word& a, const Word& b,
                                 NormalPolicy policy = NormalPolicy::tails_full_rest_full_or_fillable);

/// Within every adjacency: empties left, fulls right, at most one non-full
/// non-empty slot between. Pre: closed system.
bool is_representative(const PatternSystem& sys, const Embedding& e);
std::vector<Embedding> representative_embeddings(const PatternSystem& sys, const Word& a,
                                                 const Word& b);

/// Canonical representative of an embedding: block-sort each adjacency. The
/// result is re-validated as an occurrence of the same pattern.
Embedding rp(const PatternSystem& sys, const Embedding& e);

/// Order of the total spaces. Componentwise in Σ̄ for closed systems;
/// zero-set containment plus pattern containment otherwise. Same base
/// required.
bool embedding_leq(const PatternSystem& sys, const Embedding& e, const Embedding& f);

/// Join in a fully-closed system: the embedding with zero set Z(e) ∩ Z(f).
Embedding join_fully_closed(const PatternSystem& sys, const Embedding& e, const Embedding& f);

}  // namespace patpos
