#include "patpos/rao.hpp"

#include <algorithm>

namespace patpos {

AtomOrdering AtomOrdering::linear(std::vector<ElementId> order) {
  AtomOrdering a;
  a.order_ = std::move(order);
  int n = 0;
  for (ElementId v : a.order_) n = std::max(n, v + 1);
  a.pos_.assign(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < a.order_.size(); ++i) {
    if (a.order_[i] < 0) throw input_error("negative id in linear order");
    if (a.pos_[static_cast<std::size_t>(a.order_[i])] != -1)
      throw input_error("duplicate id in linear order");
    a.pos_[static_cast<std::size_t>(a.order_[i])] = static_cast<int>(i);
  }
  return a;
}

AtomOrdering AtomOrdering::provider(AtomOrderFn fn) {
  AtomOrdering a;
  a.fn_ = std::move(fn);
  return a;
}

std::vector<ElementId> AtomOrdering::atoms_for(const FinitePoset& p,
                                               std::span<const ElementId> chain,
                                               std::span<const ElementId> atoms) const {
  if (is_linear()) {
    std::vector<ElementId> out(atoms.begin(), atoms.end());
    for (ElementId v : out) {
      if (v >= static_cast<ElementId>(pos_.size()) || pos_[static_cast<std::size_t>(v)] == -1)
        throw input_error("linear order does not cover element '" + p.label(v) + "'");
    }
    std::sort(out.begin(), out.end(), [&](ElementId a, ElementId b) {
      return pos_[static_cast<std::size_t>(a)] < pos_[static_cast<std::size_t>(b)];
    });
    return out;
  }
  return fn_(p, chain, atoms);
}

namespace {

bool is_permutation_of(std::span<const ElementId> got, std::span<const ElementId> expect) {
  if (got.size() != expect.size()) return false;
  std::vector<ElementId> a(got.begin(), got.end()), b(expect.begin(), expect.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace

std::optional<std::pair<ElementId, ElementId>> r2_witness(const FinitePoset& p,
                                                          std::span<const ElementId> ordered_atoms,
                                                          std::size_t j, ElementId y) {
  ElementId aj = ordered_atoms[j];
  for (ElementId z : p.upper_covers(aj)) {
    if (!p.leq(z, y)) continue;
    for (std::size_t k = 0; k < j; ++k) {
      if (p.less(ordered_atoms[k], z)) return std::make_pair(ordered_atoms[k], z);
    }
  }
  return std::nullopt;
}

std::optional<RaoViolation> r2_check(const FinitePoset& p, std::span<const ElementId> ordered_atoms) {
  for (std::size_t j = 1; j < ordered_atoms.size(); ++j) {
    ElementId aj = ordered_atoms[j];
    for (ElementId y = 0; y < p.size(); ++y) {
      if (!p.less(aj, y)) continue;
      ElementId earlier = -1;
      for (std::size_t i = 0; i < j; ++i) {
        if (p.less(ordered_atoms[i], y)) { earlier = ordered_atoms[i]; break; }
      }
      if (earlier == -1) continue;
      if (!r2_witness(p, ordered_atoms, j, y)) {
        RaoViolation v;
        v.kind = RaoViolation::Kind::r2;
        v.atom_i = earlier;
        v.atom_j = aj;
        v.y = y;
        v.detail = "no k<j and z covering " + p.label(aj) + " with y >= z > a_k for y = " + p.label(y);
        return v;
      }
    }
  }
  return std::nullopt;
}

namespace {

struct RaoWalker {
  const FinitePoset& p;
  const AtomOrdering& ordering;
  const RaoOptions& opts;
  long long visited = 0;
  std::optional<RaoViolation> violation;

  // chain: 0̂ = c_0 ⋖ ... ⋖ c_r = alpha; parent_order: the ordering chosen for
  // the atoms of [c_{r-1}, 1̂]_{c_{<r}} (empty at the root).
  bool walk(std::vector<ElementId>& chain, const std::vector<ElementId>& parent_order) {
    ElementId alpha = chain.back();
    if (alpha == *p.top()) return true;
    if (++visited > opts.max_rooted_intervals)
      throw size_guard_error("rooted-interval walk exceeded the configured bound");
    const auto& atoms = p.upper_covers(alpha);
    std::vector<ElementId> ord = ordering.atoms_for(p, chain, atoms);
    if (!is_permutation_of(ord, atoms)) {
      RaoViolation v;
      v.kind = RaoViolation::Kind::bad_ordering;
      v.chain = chain;
      v.alpha = alpha;
      v.detail = "ordering is not a permutation of the atoms of [" + p.label(alpha) + ", 1]";
      violation = v;
      return false;
    }
    if (chain.size() >= 2) {
      // R1: atoms covering an element ordered before alpha come first.
      ElementId before_alpha_end = -1;
      std::vector<ElementId> earlier;
      for (ElementId b : parent_order) {
        if (b == alpha) { before_alpha_end = b; break; }
        earlier.push_back(b);
      }
      if (before_alpha_end == -1)
        throw internal_error("alpha missing from its parent ordering");
      std::vector<bool> in_omega(ord.size(), false);
      for (std::size_t idx = 0; idx < ord.size(); ++idx) {
        for (ElementId b : earlier) {
          bool covers = false;
          for (ElementId lc : p.lower_covers(ord[idx]))
            if (lc == b) { covers = true; break; }
          if (covers) { in_omega[idx] = true; break; }
        }
      }
      bool seen_non_omega = false;
      for (std::size_t idx = 0; idx < ord.size(); ++idx) {
        if (!in_omega[idx]) seen_non_omega = true;
        else if (seen_non_omega) {
          RaoViolation v;
          v.kind = RaoViolation::Kind::r1;
          v.chain = chain;
          v.alpha = alpha;
          v.atom_j = ord[idx];
          v.detail = "atom " + p.label(ord[idx]) + " of [" + p.label(alpha) +
                     ", 1] covers an earlier-ordered element but is not ordered first";
          violation = v;
          return false;
        }
      }
    }
    for (std::size_t j = 1; j < ord.size(); ++j) {
      for (ElementId y = 0; y < p.size(); ++y) {
        if (!p.less(ord[j], y)) continue;
        ElementId earlier = -1;
        for (std::size_t i = 0; i < j; ++i)
          if (p.less(ord[i], y)) { earlier = ord[i]; break; }
        if (earlier == -1) continue;
        if (!r2_witness(p, ord, j, y)) {
          RaoViolation v;
          v.kind = RaoViolation::Kind::r2;
          v.chain = chain;
          v.alpha = alpha;
          v.atom_i = earlier;
          v.atom_j = ord[j];
          v.y = y;
          v.detail = "R2 fails in [" + p.label(alpha) + ", 1] for atoms (" + p.label(earlier) +
                     ", " + p.label(ord[j]) + ") under y = " + p.label(y);
          violation = v;
          return false;
        }
      }
    }
    for (ElementId a : ord) {
      chain.push_back(a);
      bool ok = walk(chain, ord);
      chain.pop_back();
      if (!ok) return false;
    }
    return true;
  }
};

// For a linear order, R1 depends on the rooted chain only through the parent
// and R2 not at all, so one pass over (element, parent) pairs is exhaustive.
RaoCheck check_rao_linear(const FinitePoset& p, const AtomOrdering& ordering) {
  RaoCheck result;
  std::vector<ElementId> empty_chain;
  for (ElementId alpha = 0; alpha < p.size(); ++alpha) {
    if (alpha == *p.top()) continue;
    ++result.rooted_intervals;
    const auto& atoms = p.upper_covers(alpha);
    std::vector<ElementId> ord = ordering.atoms_for(p, empty_chain, atoms);
    if (auto v = r2_check(p, ord)) {
      v->chain = {alpha};
      v->alpha = alpha;
      result.violation = v;
      return result;
    }
    if (alpha == *p.bottom()) continue;
    for (ElementId parent : p.lower_covers(alpha)) {
      std::vector<ElementId> parent_ord = ordering.atoms_for(p, empty_chain, p.upper_covers(parent));
      std::vector<ElementId> earlier;
      for (ElementId b : parent_ord) {
        if (b == alpha) break;
        earlier.push_back(b);
      }
      bool seen_non_omega = false;
      for (ElementId a : ord) {
        bool omega = false;
        for (ElementId b : earlier) {
          for (ElementId lc : p.lower_covers(a))
            if (lc == b) { omega = true; break; }
          if (omega) break;
        }
        if (!omega) seen_non_omega = true;
        else if (seen_non_omega) {
          RaoViolation v;
          v.kind = RaoViolation::Kind::r1;
          v.chain = {parent, alpha};
          v.alpha = alpha;
          v.atom_j = a;
          v.detail = "atom " + p.label(a) + " of [" + p.label(alpha) +
                     ", 1] covers an earlier-ordered element but is not ordered first";
          result.violation = v;
          return result;
        }
      }
    }
  }
  result.pass = true;
  return result;
}

}  // namespace

RaoCheck check_rao(const FinitePoset& p, const AtomOrdering& ordering, const RaoOptions& opts) {
  if (!p.bounded()) throw input_error("check_rao requires a bounded poset");
  if (!p.rank_info().is_pure) throw input_error("check_rao requires a pure poset");
  if (ordering.is_linear()) return check_rao_linear(p, ordering);
  RaoWalker walker{p, ordering, opts};
  std::vector<ElementId> chain{*p.bottom()};
  RaoCheck result;
  result.pass = walker.walk(chain, {});
  result.violation = walker.violation;
  result.rooted_intervals = walker.visited;
  return result;
}

namespace {

struct RaoSearch {
  const FinitePoset& p;

  bool search(std::vector<ElementId>& chain, const std::vector<ElementId>& parent_order) {
    ElementId alpha = chain.back();
    if (alpha == *p.top()) return true;
    const auto& atoms = p.upper_covers(alpha);
    std::vector<ElementId> omega, rest;
    if (chain.size() >= 2) {
      std::vector<ElementId> earlier;
      for (ElementId b : parent_order) {
        if (b == alpha) break;
        earlier.push_back(b);
      }
      for (ElementId a : atoms) {
        bool in_omega = false;
        for (ElementId b : earlier) {
          for (ElementId lc : p.lower_covers(a))
            if (lc == b) { in_omega = true; break; }
          if (in_omega) break;
        }
        (in_omega ? omega : rest).push_back(a);
      }
    } else {
      rest.assign(atoms.begin(), atoms.end());
    }
    // Try every ordering with the omega prefix fixed as a set.
    std::sort(omega.begin(), omega.end());
    std::sort(rest.begin(), rest.end());
    do {
      do {
        std::vector<ElementId> ord = omega;
        ord.insert(ord.end(), rest.begin(), rest.end());
        if (r2_check(p, ord)) continue;
        bool ok = true;
        for (ElementId a : ord) {
          chain.push_back(a);
          ok = search(chain, ord);
          chain.pop_back();
          if (!ok) break;
        }
        if (ok) return true;
      } while (std::next_permutation(rest.begin(), rest.end()));
    } while (std::next_permutation(omega.begin(), omega.end()));
    return false;
  }
};

}  // namespace

bool rao_exists(const FinitePoset& p, std::size_t interior_guard) {
  if (!p.bounded()) throw input_error("rao_exists requires a bounded poset");
  if (!p.rank_info().is_pure) throw input_error("rao_exists requires a pure poset");
  if (p.interior().size() > interior_guard)
    throw size_guard_error("interior of " + std::to_string(p.interior().size()) +
                           " elements exceeds the exhaustive RAO search guard of " +
                           std::to_string(interior_guard));
  RaoSearch search{p};
  std::vector<ElementId> chain{*p.bottom()};
  return search.search(chain, {});
}

}  // namespace patpos
