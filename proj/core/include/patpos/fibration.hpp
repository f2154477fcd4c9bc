#pragma once

#include <optional>
#include <string>
#include <vector>

#include "patpos/context.hpp"
#include "patpos/embedding.hpp"
#include "patpos/rao.hpp"
#include "patpos/report.hpp"

namespace patpos {

enum class SpaceVariant { A, A_star, R, R_star };

std::string to_string(SpaceVariant v);
SpaceVariant parse_space_variant(const std::string& text);

/// A total space over the interval [sigma,pi]: the chosen embedding set with
/// the embedding order, plus the projection onto base elements.
struct TotalSpace {
  SpaceVariant variant = SpaceVariant::A;
  bool hatted = false;
  Word sigma, pi;
  std::vector<Embedding> embeddings;  // poset ids 0..m-1
  FinitePoset poset;                  // + 0̂/π ids when hatted
  ElementId bottom_id = -1, top_id = -1;  // -1 when unhatted
  std::vector<Word> fiber;            // canonical pattern per embedding id
  std::vector<int> base_rank;         // rank of the pattern in [sigma,pi]
};

/// Pre: leq(a,b), a ≠ b; R variants need a closed system.
TotalSpace build_space(const PatternSystem& sys, const Word& a, const Word& b, SpaceVariant variant,
                       bool hatted);

struct FibrationCheck {
  bool pass = false;
  std::string detail;  // first violation
};

/// Surjectivity onto the open (A/R) or half-open (A*/R*) base interval, order
/// preservation, and rank preservation of the projection. Pre: unhatted.
FibrationCheck verify_fibration(const PatternSystem& sys, const TotalSpace& space);

/// μ̂(Q) = μ̂(P) + Σ_q μ̂(Q_{<q})·μ̂(f⁻¹(Q_{≥q})) for the fibration carried by
/// an unhatted A- or R-space, every μ̂ computed recursively.
VerificationReport walker_identity_check(const PatternSystem& sys, const TotalSpace& space);

enum class Equation { eq1, eq2, eq3, eq4 };
std::string to_string(Equation e);
Equation parse_equation(const std::string& text);

struct MobiusDecomposition {
  Equation equation = Equation::eq1;
  Word sigma, pi;
  long long lhs = 0, rhs = 0;
  std::vector<TermEntry> terms;
  bool pass = false;
  VerificationReport report(const PatternSystem& sys) const;
};

/// Evaluate one of the four decomposition identities on [a,b]. eq3 requires a
/// fully-closed system, eq4 a closed one. The left side is always the
/// recursive Möbius value of the built interval.
MobiusDecomposition mobius_decomposition(const PatternSystem& sys, const Word& a, const Word& b,
                                         Equation eq);
MobiusDecomposition mobius_decomposition(const PatternContext& ctx, const Word& a, Equation eq);

/// f(A(σ,π)_{<ℓ}) = (σ,λ) for every λ and ℓ ∈ f⁻¹(λ); also the R-space form
/// on closed systems.
VerificationReport lower_ideal_check(const PatternSystem& sys, const Word& a, const Word& b);

struct FiberRao {
  std::string base_label;
  RaoCheck check;
};

struct ShellingTransferReport {
  bool hypotheses_pass = false;  // RAO on the total space and on every fiber
  bool conclusion_pass = false;  // induced order is an RAO on the base
  bool refutation_candidate = false;  // hypotheses hold, conclusion fails
  RaoCheck total_rao;
  std::vector<FiberRao> fiber_raos;
  RaoCheck base_rao;
  std::vector<ElementId> induced_order;  // ≺_f on the base
  std::string detail;
};

/// Generic form: total and base are bounded posets, `projection[p]` the base
/// id of total id p, `order` a linear order on the total's ids.
ShellingTransferReport shelling_transfer_check(const FinitePoset& total, const FinitePoset& base,
                                               const std::vector<ElementId>& projection,
                                               const std::vector<ElementId>& order);

/// Pattern-poset form over the hatted A or R space; `order` lists space ids
/// (defaults to position-word lexicographic on the embeddings).
ShellingTransferReport shelling_transfer_check(const PatternSystem& sys, const Word& a,
                                               const Word& b, SpaceVariant variant,
                                               const std::vector<ElementId>& order = {});

/// Position-word lexicographic linear order on a hatted space (bounds first
/// and last).
std::vector<ElementId> position_lex_order(const TotalSpace& space);

}  // namespace patpos
