#include "patpos/context.hpp"

#include <algorithm>

namespace patpos {

PatternContext::PatternContext(const PatternSystem& sys, const Word& pi)
    : sys_(sys), pi_(sys.canonical(pi)) {
  sys_.require_element(pi_);
  elements_ = sys_.elements_below(pi_);
  for (std::size_t i = 0; i < elements_.size(); ++i) index_[elements_[i]] = static_cast<int>(i);
  top_index_ = index_.at(pi_);
  const int m = static_cast<int>(elements_.size());
  row_words_ = (static_cast<std::size_t>(m) + 63) / 64;
  leq_bits_.assign(static_cast<std::size_t>(m) * row_words_, 0);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      if (elements_[static_cast<std::size_t>(a)].size() > elements_[static_cast<std::size_t>(b)].size())
        continue;
      if (sys_.leq(elements_[static_cast<std::size_t>(a)], elements_[static_cast<std::size_t>(b)]))
        leq_bits_[static_cast<std::size_t>(a) * row_words_ + static_cast<std::size_t>(b) / 64] |=
            1ull << (b % 64);
    }
  }
  embs_.resize(elements_.size());
  rep_embs_.resize(elements_.size());
  a_star_.resize(elements_.size());
  r_star_.resize(elements_.size());
}

int PatternContext::index_of(const Word& w) const {
  auto it = index_.find(sys_.canonical(w));
  return it == index_.end() ? -1 : it->second;
}

bool PatternContext::leq(int a, int b) const {
  return (leq_bits_[static_cast<std::size_t>(a) * row_words_ + static_cast<std::size_t>(b) / 64] >>
          (b % 64)) & 1u;
}

const std::vector<Embedding>& PatternContext::embeddings_of(int lambda) const {
  auto& slot = embs_[static_cast<std::size_t>(lambda)];
  if (!slot) slot = embeddings(sys_, elements_[static_cast<std::size_t>(lambda)], pi_);
  return *slot;
}

const std::vector<Embedding>& PatternContext::representative_embeddings_of(int lambda) const {
  auto& slot = rep_embs_[static_cast<std::size_t>(lambda)];
  if (!slot) {
    std::vector<Embedding> reps;
    for (const auto& e : embeddings_of(lambda))
      if (is_representative(sys_, e)) reps.push_back(e);
    slot = std::move(reps);
  }
  return *slot;
}

long long PatternContext::pattern_mobius(int a, int b) const {
  auto it = mobius_memo_.find(a);
  if (it == mobius_memo_.end()) {
    // Elements are sorted by length, a valid linear extension.
    const int m = static_cast<int>(elements_.size());
    std::vector<long long> mu(static_cast<std::size_t>(m), 0);
    mu[static_cast<std::size_t>(a)] = 1;
    for (int x = 0; x < m; ++x) {
      if (x == a || !leq(a, x)) continue;
      long long s = 0;
      for (int c = 0; c < x; ++c)
        if (leq(a, c) && leq(c, x) && c != x) s += mu[static_cast<std::size_t>(c)];
      if (leq(a, a) && a < x) { /* a already included above when a < x */ }
      mu[static_cast<std::size_t>(x)] = -s;
    }
    it = mobius_memo_.emplace(a, std::move(mu)).first;
  }
  return it->second[static_cast<std::size_t>(b)];
}

HattedSpace PatternContext::build_hatted(int lambda, bool representative) const {
  if (representative && !sys_.is_closed())
    throw unsupported_error("R-spaces need a closed pattern poset");
  HattedSpace space;
  const int m = static_cast<int>(elements_.size());
  for (int mu = 0; mu < m; ++mu) {
    if (mu == top_index_ || !leq(lambda, mu)) continue;
    const auto& embs = representative ? representative_embeddings_of(mu) : embeddings_of(mu);
    space.embeddings.insert(space.embeddings.end(), embs.begin(), embs.end());
  }
  const int k = static_cast<int>(space.embeddings.size());
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(k) + 2);
  for (const auto& e : space.embeddings) labels.push_back(e.to_string());
  labels.push_back("0^");
  labels.push_back(sys_.format(pi_));
  space.bottom_id = k;
  space.top_id = k + 1;
  auto order = [&](ElementId x, ElementId y) {
    if (x == y) return true;
    if (x == space.bottom_id || y == space.top_id) return true;
    if (y == space.bottom_id || x == space.top_id) return false;
    return embedding_leq(sys_, space.embeddings[static_cast<std::size_t>(x)],
                         space.embeddings[static_cast<std::size_t>(y)]);
  };
  space.poset = FinitePoset::from_relations(std::move(labels), order, space.bottom_id, space.top_id);
  space.mobius = space.poset.bounded_mobius();
  space.mobius_to_top = space.poset.mobius_to(space.top_id);
  return space;
}

const HattedSpace& PatternContext::a_star_hat(int lambda) const {
  auto& slot = a_star_[static_cast<std::size_t>(lambda)];
  if (!slot) slot = std::make_unique<HattedSpace>(build_hatted(lambda, false));
  return *slot;
}

const HattedSpace& PatternContext::r_star_hat(int lambda) const {
  auto& slot = r_star_[static_cast<std::size_t>(lambda)];
  if (!slot) slot = std::make_unique<HattedSpace>(build_hatted(lambda, true));
  return *slot;
}

Interval PatternContext::interval(int a) const { return interval(a, top_index_); }

Interval PatternContext::interval(int a, int b) const {
  Interval out;
  std::vector<int> ids;
  for (int x = 0; x < static_cast<int>(elements_.size()); ++x)
    if (leq(a, x) && leq(x, b)) ids.push_back(x);
  std::vector<std::string> labels;
  for (int x : ids) {
    out.elements.push_back(elements_[static_cast<std::size_t>(x)]);
    labels.push_back(sys_.format(elements_[static_cast<std::size_t>(x)]));
  }
  auto cmp = [&](ElementId u, ElementId v) {
    return leq(ids[static_cast<std::size_t>(u)], ids[static_cast<std::size_t>(v)]);
  };
  ElementId bottom = -1, top = -1;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] == a) bottom = static_cast<ElementId>(i);
    if (ids[i] == b) top = static_cast<ElementId>(i);
  }
  out.poset = FinitePoset::from_relations(std::move(labels), cmp, bottom, top);
  out.bottom_id = bottom;
  out.top_id = top;
  return out;
}

}  // namespace patpos
