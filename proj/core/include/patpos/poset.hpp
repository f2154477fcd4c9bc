#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace patpos {

using ElementId = int;

/// Bad caller input (unknown ids, malformed elements, flag misuse).
class input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operation not defined for the given system (e.g. R-space on a non-closed poset).
class unsupported_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Exponential computation refused; pass a larger guard to override.
class size_guard_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structural invariant the library maintains was observed broken.
class internal_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct RankInfo {
  std::vector<int> rank_of;  // indexed by element id
  int poset_rank = 0;
  bool is_pure = false;
};

struct StructureReport {
  RankInfo ranks;
  bool disconnected = false;
  // interior components (each a set of ids), filled when disconnected
  std::vector<std::vector<ElementId>> components;
};

inline constexpr std::size_t kDefaultEulerGuard = 20;
inline constexpr std::size_t kDefaultCrosscutGuard = 20;

/// Finite poset given by its Hasse diagram. Immutable after construction;
/// every query is const and safe to call concurrently (the Möbius memo is
/// mutex-protected).
class FinitePoset {
 public:
  FinitePoset() = default;

  /// Build from an explicit cover relation. Validates acyclicity, Hasse
  /// minimality (no cover implied by the others) and the declared bounds.
  static FinitePoset from_covers(std::vector<std::string> labels,
                                 std::vector<std::pair<ElementId, ElementId>> covers,
                                 std::optional<ElementId> bottom = std::nullopt,
                                 std::optional<ElementId> top = std::nullopt);

  /// Build from a comparability oracle; the transitive reduction is computed
  /// here. `leq` must be a partial order on 0..n-1 (validated).
  static FinitePoset from_relations(std::vector<std::string> labels,
                                    const std::function<bool(ElementId, ElementId)>& leq,
                                    std::optional<ElementId> bottom = std::nullopt,
                                    std::optional<ElementId> top = std::nullopt);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(ElementId a) const;
  ElementId id_of_label(const std::string& label) const;  // input_error if absent

  bool leq(ElementId a, ElementId b) const;
  bool less(ElementId a, ElementId b) const { return a != b && leq(a, b); }
  const std::vector<std::pair<ElementId, ElementId>>& covers() const { return covers_; }
  const std::vector<ElementId>& upper_covers(ElementId a) const;
  const std::vector<ElementId>& lower_covers(ElementId a) const;

  std::optional<ElementId> bottom() const { return bottom_; }
  std::optional<ElementId> top() const { return top_; }
  bool bounded() const { return bottom_.has_value() && top_.has_value(); }
  std::vector<ElementId> atoms() const;     // upper covers of the bottom
  std::vector<ElementId> coatoms() const;   // lower covers of the top
  std::vector<ElementId> interior() const;  // bounded pre
  std::vector<ElementId> minimal_elements() const;
  std::vector<ElementId> maximal_elements() const;

  /// Adjoin fresh bounds unconditionally (the hat operation of the Möbius
  /// number). Labels "0^" / "1^" are used for the new elements.
  FinitePoset with_fresh_bounds() const;
  /// Adjoin a bottom and/or top only where missing.
  FinitePoset ensure_bounds() const;
  /// Induced subposet on the given ids (labels kept, ids renumbered densely in
  /// the given order). Unique minimum/maximum of the result become its bounds.
  FinitePoset induced(std::span<const ElementId> ids) const;

  /// μ(a,b) by the defining recursion, memoized per base element.
  long long mobius(ElementId a, ElementId b) const;
  /// All values μ(a, x); zero where a ≰ x.
  std::vector<long long> mobius_row(ElementId a) const;
  /// All values μ(x, b); zero where x ≰ b.
  std::vector<long long> mobius_to(ElementId b) const;
  /// μ(0̂,1̂) of a bounded poset.
  long long bounded_mobius() const;
  /// Möbius number μ̂ = μ of the poset with fresh bounds adjoined; −1 for the
  /// empty poset (its hat is a 2-chain).
  long long mobius_number() const;

  RankInfo rank_info() const;
  StructureReport structure_report() const;  // bounded pre

  /// χ̃ of the order complex of the interior, the empty chain counting −1, so
  /// that the value equals bounded_mobius().
  long long reduced_euler_characteristic(std::size_t interior_guard = kDefaultEulerGuard) const;

  /// μ(0̂,1̂) via the Crosscut Theorem over the atom set: Σ (−1)^|S| over atom
  /// subsets S whose join is 1̂. For the one-element poset the empty subset
  /// joins to 0̂ = 1̂ and the value is 1. Errors with "crosscut inapplicable"
  /// when some atom subset has several minimal upper bounds.
  long long crosscut_mobius(std::size_t atom_guard = kDefaultCrosscutGuard) const;

  /// Connected components of the comparability graph of the whole poset.
  std::vector<std::vector<ElementId>> components() const;

  std::string to_json() const;
  static FinitePoset from_json(const std::string& text);
  std::string to_dot() const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::pair<ElementId, ElementId>> covers_;
  std::vector<std::vector<ElementId>> up_adj_, down_adj_;
  std::optional<ElementId> bottom_, top_;
  std::vector<ElementId> topo_;          // a linear extension
  std::vector<int> topo_pos_;
  std::vector<std::uint64_t> above_;     // closure bitmatrix, row-major
  std::size_t row_words_ = 0;

  bool bit(ElementId a, ElementId b) const {
    return (above_[static_cast<std::size_t>(a) * row_words_ + static_cast<std::size_t>(b) / 64] >>
            (b % 64)) & 1u;
  }
  void finish_construction();  // adjacency, topo, closure, bound checks

  mutable std::mutex memo_mutex_;
  mutable std::map<ElementId, std::vector<long long>> mobius_memo_;

 public:
  FinitePoset(const FinitePoset& o);
  FinitePoset& operator=(const FinitePoset& o);
  FinitePoset(FinitePoset&&) noexcept;
  FinitePoset& operator=(FinitePoset&&) noexcept;
  ~FinitePoset() = default;
};

}  // namespace patpos
