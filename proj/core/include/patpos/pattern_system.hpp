#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "patpos/poset.hpp"

namespace patpos {

inline constexpr int kDash = -1;

/// A word over a positive-integer alphabet (0 and 1 for Dyck words).
/// Positions are 1-based in every public interface.
struct Word {
  std::vector<int> letters;

  Word() = default;
  explicit Word(std::vector<int> ls) : letters(std::move(ls)) {}

  int size() const { return static_cast<int>(letters.size()); }
  bool empty() const { return letters.empty(); }
  int at(int pos1) const { return letters[static_cast<std::size_t>(pos1 - 1)]; }
  auto operator<=>(const Word&) const = default;
};

/// Order-isomorphic copy on {1..n}. Errors on repeated letters.
Word reduce(const Word& permutation);
bool is_permutation_word(const Word& w);

/// The tree Σ̄ rooted at the dash: an antichain (subword, classical), the
/// chain of naturals (composition), or an arbitrary finite rooted tree
/// (generalized subword order).
class AlphabetTree {
 public:
  static AlphabetTree antichain(int max_letter = 0);  // 0: any positive letter
  static AlphabetTree chain(int max_letter);
  static AlphabetTree explicit_tree(std::map<int, int> parent_of);  // kDash = root

  bool is_antichain() const { return shape_ == Shape::antichain; }
  bool is_chain() const { return shape_ == Shape::chain; }
  int max_letter() const { return max_letter_; }
  bool valid_letter(int x) const;
  int parent(int letter) const;                  // kDash when the parent is the root
  std::vector<int> children(int letter_or_dash) const;
  /// Next letter on the unique path from `from` (a strict ancestor or dash)
  /// up toward `target`.
  int child_toward(int from, int target) const;
  int depth(int letter_or_dash) const;           // dash ↦ 0
  bool anc_leq(int a, int b) const;              // a on the root path of b (dash ≤ all)

 private:
  enum class Shape { antichain, chain, tree };
  Shape shape_ = Shape::antichain;
  int max_letter_ = 0;
  std::map<int, int> parent_;
  std::map<int, int> depth_;
};

enum class PatternKind {
  subword,
  generalized_subword,
  composition,
  classical_perm,
  consecutive_perm,
  vincular,
  dyck,
};

enum class Closure { not_closed, closed, fully_closed };

std::string to_string(PatternKind k);

struct AxiomViolation {
  std::string kind;  // "reflexivity" | "antisymmetry" | "transitivity"
  std::vector<Word> witness;
};

struct AxiomReport {
  bool pass = false;
  long long elements = 0, pairs = 0, triples = 0;
  std::vector<AxiomViolation> violations;
};

/// Interval [a,b] of a pattern poset realized as a FinitePoset; `elements[id]`
/// is the pattern element carried by poset id `id`.
struct Interval {
  FinitePoset poset;
  std::vector<Word> elements;
  ElementId bottom_id = -1, top_id = -1;
};

/// One of the concrete pattern posets: ground set membership, occurrence
/// enumeration, containment, interval construction and the Σ̄ step maps.
class PatternSystem {
 public:
  static PatternSystem subword(int alphabet_size);
  static PatternSystem generalized_subword(AlphabetTree tree);
  static PatternSystem composition(int max_letter);
  static PatternSystem classical();
  static PatternSystem consecutive();
  static PatternSystem vincular(int alphabet_size, std::vector<bool> mask);
  static PatternSystem dyck();

  PatternKind kind() const { return kind_; }
  Closure closure() const;
  bool is_closed() const { return closure() != Closure::not_closed; }
  bool is_fully_closed() const { return closure() == Closure::fully_closed; }
  const AlphabetTree& tree() const;  // unsupported_error when not closed
  bool is_permutation_kind() const {
    return kind_ == PatternKind::classical_perm || kind_ == PatternKind::consecutive_perm;
  }
  std::string name() const { return to_string(kind_); }

  bool in_ground_set(const Word& w) const;
  void require_element(const Word& w) const;  // input_error when outside
  /// Reduced form for permutation kinds, identity otherwise.
  Word canonical(const Word& w) const;
  bool equal_elements(const Word& a, const Word& b) const;

  /// All occurrence position sets of `a` in `b`, 1-based ascending, in
  /// position-lexicographic order.
  std::vector<std::vector<int>> occurrences(const Word& a, const Word& b) const;
  bool leq(const Word& a, const Word& b) const;

  /// Rank difference of a ≤ b in the pattern poset (Σ̄ depth sums for word
  /// kinds, length difference for permutations, semilength for Dyck).
  long long rank_gap(const Word& a, const Word& b) const;

  /// All λ with a ≤ λ ≤ b, discovered top-down, with covers by transitive
  /// reduction. Pre: leq(a,b).
  Interval build_interval(const Word& a, const Word& b) const;
  std::vector<Word> interval_elements(const Word& a, const Word& b) const;
  /// Every λ ≤ b (b included), sorted by length then lexicographically.
  std::vector<Word> elements_below(const Word& b) const;

  AxiomReport verify_poset_axioms(int size_bound, std::size_t element_guard = 4000) const;

  int step_down(int letter) const;                    // parent; error on dash
  std::vector<int> step_up(int letter_or_dash) const; // children (may be empty)
  int step_up_toward(int letter_or_dash, int target) const;

  /// Ground set elements with at most `max_len` letters, sorted by length then
  /// lexicographically (used by sweeps; deterministic).
  std::vector<Word> enumerate_ground(int max_len) const;

  std::string format(const Word& w) const;
  Word parse(const std::string& text) const;

 private:
  PatternKind kind_;
  AlphabetTree tree_;
  std::vector<bool> mask_;  // vincular gap mask; X_j constrains occurrence gap j

  explicit PatternSystem(PatternKind k) : kind_(k) {}
  bool relation_holds(const Word& a, const std::vector<int>& positions, const Word& b) const;
  bool kappa_holds(const std::vector<int>& positions) const;
};

bool is_dyck_word(const Word& w);

}  // namespace patpos
