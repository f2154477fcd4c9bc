#include "patpos/poset.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include <nlohmann/json.hpp>

namespace patpos {

namespace {

std::size_t words_for(int n) { return (static_cast<std::size_t>(n) + 63) / 64; }

}  // namespace

FinitePoset::FinitePoset(const FinitePoset& o)
    : labels_(o.labels_),
      covers_(o.covers_),
      up_adj_(o.up_adj_),
      down_adj_(o.down_adj_),
      bottom_(o.bottom_),
      top_(o.top_),
      topo_(o.topo_),
      topo_pos_(o.topo_pos_),
      above_(o.above_),
      row_words_(o.row_words_) {}

FinitePoset& FinitePoset::operator=(const FinitePoset& o) {
  if (this == &o) return *this;
  labels_ = o.labels_;
  covers_ = o.covers_;
  up_adj_ = o.up_adj_;
  down_adj_ = o.down_adj_;
  bottom_ = o.bottom_;
  top_ = o.top_;
  topo_ = o.topo_;
  topo_pos_ = o.topo_pos_;
  above_ = o.above_;
  row_words_ = o.row_words_;
  std::lock_guard<std::mutex> lock(memo_mutex_);
  mobius_memo_.clear();
  return *this;
}

FinitePoset::FinitePoset(FinitePoset&& o) noexcept
    : labels_(std::move(o.labels_)),
      covers_(std::move(o.covers_)),
      up_adj_(std::move(o.up_adj_)),
      down_adj_(std::move(o.down_adj_)),
      bottom_(o.bottom_),
      top_(o.top_),
      topo_(std::move(o.topo_)),
      topo_pos_(std::move(o.topo_pos_)),
      above_(std::move(o.above_)),
      row_words_(o.row_words_) {}

FinitePoset& FinitePoset::operator=(FinitePoset&& o) noexcept {
  labels_ = std::move(o.labels_);
  covers_ = std::move(o.covers_);
  up_adj_ = std::move(o.up_adj_);
  down_adj_ = std::move(o.down_adj_);
  bottom_ = o.bottom_;
  top_ = o.top_;
  topo_ = std::move(o.topo_);
  topo_pos_ = std::move(o.topo_pos_);
  above_ = std::move(o.above_);
  row_words_ = o.row_words_;
  mobius_memo_.clear();
  return *this;
}

void FinitePoset::finish_construction() {
  const int n = size();
  up_adj_.assign(static_cast<std::size_t>(n), {});
  down_adj_.assign(static_cast<std::size_t>(n), {});
  for (auto& [lo, hi] : covers_) {
    if (lo < 0 || lo >= n || hi < 0 || hi >= n) throw input_error("cover id out of range");
    if (lo == hi) throw input_error("reflexive cover pair");
    up_adj_[static_cast<std::size_t>(lo)].push_back(hi);
    down_adj_[static_cast<std::size_t>(hi)].push_back(lo);
  }
  for (auto& v : up_adj_) std::sort(v.begin(), v.end());
  for (auto& v : down_adj_) std::sort(v.begin(), v.end());

  // Kahn topological sort; a cycle means the covers are not a DAG.
  std::vector<int> indeg(static_cast<std::size_t>(n), 0);
  for (auto& [lo, hi] : covers_) indeg[static_cast<std::size_t>(hi)]++;
  std::deque<ElementId> queue;
  for (int v = 0; v < n; ++v)
    if (indeg[static_cast<std::size_t>(v)] == 0) queue.push_back(v);
  topo_.clear();
  while (!queue.empty()) {
    ElementId v = queue.front();
    queue.pop_front();
    topo_.push_back(v);
    for (ElementId w : up_adj_[static_cast<std::size_t>(v)])
      if (--indeg[static_cast<std::size_t>(w)] == 0) queue.push_back(w);
  }
  if (static_cast<int>(topo_.size()) != n) throw input_error("cover relation contains a cycle");
  topo_pos_.assign(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) topo_pos_[static_cast<std::size_t>(topo_[static_cast<std::size_t>(i)])] = i;

  // Reflexive transitive closure, reverse topological order.
  row_words_ = words_for(n);
  above_.assign(static_cast<std::size_t>(n) * row_words_, 0);
  for (int i = n - 1; i >= 0; --i) {
    ElementId v = topo_[static_cast<std::size_t>(i)];
    auto* row = &above_[static_cast<std::size_t>(v) * row_words_];
    row[static_cast<std::size_t>(v) / 64] |= 1ull << (v % 64);
    for (ElementId w : up_adj_[static_cast<std::size_t>(v)]) {
      const auto* wrow = &above_[static_cast<std::size_t>(w) * row_words_];
      for (std::size_t k = 0; k < row_words_; ++k) row[k] |= wrow[k];
    }
  }

  if (bottom_) {
    for (int v = 0; v < n; ++v)
      if (!leq(*bottom_, v)) throw input_error("declared bottom is not below every element");
  }
  if (top_) {
    for (int v = 0; v < n; ++v)
      if (!leq(v, *top_)) throw input_error("declared top is not above every element");
  }
}

FinitePoset FinitePoset::from_covers(std::vector<std::string> labels,
                                     std::vector<std::pair<ElementId, ElementId>> covers,
                                     std::optional<ElementId> bottom,
                                     std::optional<ElementId> top) {
  FinitePoset p;
  p.labels_ = std::move(labels);
  std::sort(covers.begin(), covers.end());
  covers.erase(std::unique(covers.begin(), covers.end()), covers.end());
  p.covers_ = std::move(covers);
  p.bottom_ = bottom;
  p.top_ = top;
  p.finish_construction();
  // Hasse minimality: a cover implied by a longer path is rejected.
  for (auto& [lo, hi] : p.covers_) {
    for (ElementId mid : p.up_adj_[static_cast<std::size_t>(lo)]) {
      if (mid != hi && p.leq(mid, hi))
        throw input_error("cover pair (" + p.labels_[static_cast<std::size_t>(lo)] + "," +
                          p.labels_[static_cast<std::size_t>(hi)] +
                          ") is implied by the transitive closure");
    }
  }
  return p;
}

FinitePoset FinitePoset::from_relations(std::vector<std::string> labels,
                                        const std::function<bool(ElementId, ElementId)>& leq,
                                        std::optional<ElementId> bottom,
                                        std::optional<ElementId> top) {
  const int n = static_cast<int>(labels.size());
  const std::size_t rw = words_for(n);
  std::vector<std::uint64_t> rel(static_cast<std::size_t>(n) * rw, 0);
  auto get = [&](int a, int b) {
    return (rel[static_cast<std::size_t>(a) * rw + static_cast<std::size_t>(b) / 64] >> (b % 64)) & 1u;
  };
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (leq(a, b)) rel[static_cast<std::size_t>(a) * rw + static_cast<std::size_t>(b) / 64] |= 1ull << (b % 64);
    }
  }
  for (int a = 0; a < n; ++a) {
    if (!get(a, a)) throw input_error("relation is not reflexive");
    for (int b = 0; b < n; ++b) {
      if (a != b && get(a, b) && get(b, a)) throw input_error("relation is not antisymmetric");
    }
  }
  // Transitivity: the row of any b above a must be contained in a's row.
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (!get(a, b)) continue;
      for (std::size_t k = 0; k < rw; ++k) {
        if (rel[static_cast<std::size_t>(b) * rw + k] & ~rel[static_cast<std::size_t>(a) * rw + k])
          throw input_error("relation is not transitive");
      }
    }
  }
  // Covers = transitive reduction.
  std::vector<std::pair<ElementId, ElementId>> covers;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b || !get(a, b)) continue;
      bool direct = true;
      for (int c = 0; direct && c < n; ++c) {
        if (c != a && c != b && get(a, c) && get(c, b)) direct = false;
      }
      if (direct) covers.emplace_back(a, b);
    }
  }
  FinitePoset p;
  p.labels_ = std::move(labels);
  p.covers_ = std::move(covers);
  p.bottom_ = bottom;
  p.top_ = top;
  p.finish_construction();
  return p;
}

const std::string& FinitePoset::label(ElementId a) const {
  if (a < 0 || a >= size()) throw input_error("unknown element id");
  return labels_[static_cast<std::size_t>(a)];
}

ElementId FinitePoset::id_of_label(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (labels_[static_cast<std::size_t>(i)] == label) return i;
  throw input_error("no element labelled '" + label + "'");
}

bool FinitePoset::leq(ElementId a, ElementId b) const {
  if (a < 0 || a >= size() || b < 0 || b >= size()) throw input_error("unknown element id");
  return bit(a, b);
}

const std::vector<ElementId>& FinitePoset::upper_covers(ElementId a) const {
  if (a < 0 || a >= size()) throw input_error("unknown element id");
  return up_adj_[static_cast<std::size_t>(a)];
}

const std::vector<ElementId>& FinitePoset::lower_covers(ElementId a) const {
  if (a < 0 || a >= size()) throw input_error("unknown element id");
  return down_adj_[static_cast<std::size_t>(a)];
}

std::vector<ElementId> FinitePoset::atoms() const {
  if (!bottom_) throw input_error("poset has no bottom");
  return up_adj_[static_cast<std::size_t>(*bottom_)];
}

std::vector<ElementId> FinitePoset::coatoms() const {
  if (!top_) throw input_error("poset has no top");
  return down_adj_[static_cast<std::size_t>(*top_)];
}

std::vector<ElementId> FinitePoset::interior() const {
  if (!bounded()) throw input_error("interior requires a bounded poset");
  std::vector<ElementId> out;
  for (int v = 0; v < size(); ++v)
    if (v != *bottom_ && v != *top_) out.push_back(v);
  return out;
}

std::vector<ElementId> FinitePoset::minimal_elements() const {
  std::vector<ElementId> out;
  for (int v = 0; v < size(); ++v)
    if (down_adj_[static_cast<std::size_t>(v)].empty()) out.push_back(v);
  return out;
}

std::vector<ElementId> FinitePoset::maximal_elements() const {
  std::vector<ElementId> out;
  for (int v = 0; v < size(); ++v)
    if (up_adj_[static_cast<std::size_t>(v)].empty()) out.push_back(v);
  return out;
}

FinitePoset FinitePoset::with_fresh_bounds() const {
  const int n = size();
  std::vector<std::string> labels = labels_;
  labels.push_back("0^");
  labels.push_back("1^");
  auto covers = covers_;
  for (ElementId v : minimal_elements()) covers.emplace_back(n, v);
  for (ElementId v : maximal_elements()) covers.emplace_back(v, n + 1);
  if (n == 0) covers.emplace_back(n, n + 1);
  return from_covers(std::move(labels), std::move(covers), n, n + 1);
}

FinitePoset FinitePoset::ensure_bounds() const {
  if (bounded()) return *this;
  const int n = size();
  std::vector<std::string> labels = labels_;
  auto covers = covers_;
  std::optional<ElementId> bottom = bottom_, top = top_;
  auto minimals = minimal_elements();
  auto maximals = maximal_elements();
  if (!bottom) {
    if (n > 0 && minimals.size() == 1) {
      bottom = minimals[0];
    } else {
      ElementId b = static_cast<ElementId>(labels.size());
      labels.push_back("0^");
      for (ElementId v : minimals) covers.emplace_back(b, v);
      bottom = b;
    }
  }
  if (!top) {
    if (n > 0 && maximals.size() == 1) {
      top = maximals[0];
    } else {
      ElementId t = static_cast<ElementId>(labels.size());
      labels.push_back("1^");
      for (ElementId v : maximals) covers.emplace_back(v, t);
      top = t;
    }
  }
  if (n == 0) covers.emplace_back(*bottom, *top);
  return from_covers(std::move(labels), std::move(covers), bottom, top);
}

FinitePoset FinitePoset::induced(std::span<const ElementId> ids) const {
  std::vector<std::string> labels;
  labels.reserve(ids.size());
  for (ElementId v : ids) labels.push_back(label(v));
  std::vector<ElementId> keep(ids.begin(), ids.end());
  auto restricted = [&](ElementId a, ElementId b) { return leq(keep[static_cast<std::size_t>(a)], keep[static_cast<std::size_t>(b)]); };
  FinitePoset p = from_relations(std::move(labels), restricted);
  auto minimals = p.minimal_elements();
  auto maximals = p.maximal_elements();
  if (p.size() > 0 && minimals.size() == 1) p.bottom_ = minimals[0];
  if (p.size() > 0 && maximals.size() == 1) p.top_ = maximals[0];
  return p;
}

std::vector<long long> FinitePoset::mobius_row(ElementId a) const {
  if (a < 0 || a >= size()) throw input_error("unknown element id");
  {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    auto it = mobius_memo_.find(a);
    if (it != mobius_memo_.end()) return it->second;
  }
  std::vector<long long> mu(static_cast<std::size_t>(size()), 0);
  mu[static_cast<std::size_t>(a)] = 1;
  for (ElementId b : topo_) {
    if (b == a || !bit(a, b)) continue;
    long long s = 0;
    for (ElementId c : topo_) {
      if (c == b) break;
      if (bit(a, c) && bit(c, b) && c != b) s += mu[static_cast<std::size_t>(c)];
    }
    mu[static_cast<std::size_t>(b)] = -s;
  }
  std::lock_guard<std::mutex> lock(memo_mutex_);
  return mobius_memo_.emplace(a, std::move(mu)).first->second;
}

long long FinitePoset::mobius(ElementId a, ElementId b) const {
  if (b < 0 || b >= size()) throw input_error("unknown element id");
  return mobius_row(a)[static_cast<std::size_t>(b)];
}

std::vector<long long> FinitePoset::mobius_to(ElementId b) const {
  if (b < 0 || b >= size()) throw input_error("unknown element id");
  std::vector<long long> mu(static_cast<std::size_t>(size()), 0);
  mu[static_cast<std::size_t>(b)] = 1;
  for (auto it = topo_.rbegin(); it != topo_.rend(); ++it) {
    ElementId x = *it;
    if (x == b || !bit(x, b)) continue;
    long long s = 0;
    for (ElementId c : topo_) {
      if (bit(x, c) && bit(c, b) && c != x) s += mu[static_cast<std::size_t>(c)];
    }
    mu[static_cast<std::size_t>(x)] = -s;
  }
  return mu;
}

long long FinitePoset::bounded_mobius() const {
  if (!bounded()) throw input_error("bounded_mobius requires a bounded poset");
  return mobius(*bottom_, *top_);
}

long long FinitePoset::mobius_number() const {
  FinitePoset hat = with_fresh_bounds();
  return hat.bounded_mobius();
}

RankInfo FinitePoset::rank_info() const {
  RankInfo info;
  info.rank_of.assign(static_cast<std::size_t>(size()), 0);
  for (ElementId v : topo_) {
    int r = 0;
    for (ElementId w : down_adj_[static_cast<std::size_t>(v)])
      r = std::max(r, info.rank_of[static_cast<std::size_t>(w)] + 1);
    info.rank_of[static_cast<std::size_t>(v)] = r;
  }
  info.poset_rank = 0;
  for (int v = 0; v < size(); ++v) info.poset_rank = std::max(info.poset_rank, info.rank_of[static_cast<std::size_t>(v)]);
  info.is_pure = true;
  for (auto& [lo, hi] : covers_) {
    if (info.rank_of[static_cast<std::size_t>(hi)] != info.rank_of[static_cast<std::size_t>(lo)] + 1)
      info.is_pure = false;
  }
  // All maximal chains share a length iff in addition every maximal element
  // sits at the top rank and every minimal one at rank 0.
  for (ElementId v : maximal_elements())
    if (info.rank_of[static_cast<std::size_t>(v)] != info.poset_rank) info.is_pure = false;
  if (size() == 0) info.is_pure = true;
  return info;
}

std::vector<std::vector<ElementId>> FinitePoset::components() const {
  std::vector<int> comp(static_cast<std::size_t>(size()), -1);
  int next = 0;
  for (int s = 0; s < size(); ++s) {
    if (comp[static_cast<std::size_t>(s)] != -1) continue;
    std::deque<ElementId> queue{s};
    comp[static_cast<std::size_t>(s)] = next;
    while (!queue.empty()) {
      ElementId v = queue.front();
      queue.pop_front();
      for (auto& adj : {std::cref(up_adj_[static_cast<std::size_t>(v)]), std::cref(down_adj_[static_cast<std::size_t>(v)])}) {
        for (ElementId w : adj.get()) {
          if (comp[static_cast<std::size_t>(w)] == -1) {
            comp[static_cast<std::size_t>(w)] = next;
            queue.push_back(w);
          }
        }
      }
    }
    ++next;
  }
  std::vector<std::vector<ElementId>> out(static_cast<std::size_t>(next));
  for (int v = 0; v < size(); ++v) out[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])].push_back(v);
  return out;
}

StructureReport FinitePoset::structure_report() const {
  if (!bounded()) throw input_error("structure_report requires a bounded poset");
  StructureReport report;
  report.ranks = rank_info();
  auto inner = interior();
  if (inner.empty()) {
    report.disconnected = false;  // empty interior convention
    return report;
  }
  FinitePoset sub = induced(inner);
  auto comps = sub.components();
  report.disconnected = comps.size() > 1;
  if (report.disconnected) {
    for (auto& c : comps) {
      std::vector<ElementId> orig;
      for (ElementId v : c) orig.push_back(inner[static_cast<std::size_t>(v)]);
      std::sort(orig.begin(), orig.end());
      report.components.push_back(std::move(orig));
    }
    std::sort(report.components.begin(), report.components.end());
  }
  return report;
}

long long FinitePoset::reduced_euler_characteristic(std::size_t interior_guard) const {
  if (!bounded()) throw input_error("reduced_euler_characteristic requires a bounded poset");
  auto inner = interior();
  if (inner.size() > interior_guard)
    throw size_guard_error("interior has " + std::to_string(inner.size()) +
                           " elements, above the chain-enumeration guard of " +
                           std::to_string(interior_guard));
  // Sort by topo position so chains extend forward only.
  std::sort(inner.begin(), inner.end(), [&](ElementId a, ElementId b) {
    return topo_pos_[static_cast<std::size_t>(a)] < topo_pos_[static_cast<std::size_t>(b)];
  });
  long long total = -1;  // empty chain
  // Chains with k elements contribute (−1)^{k+1}.
  std::vector<std::pair<ElementId, int>> stack;  // (last element, sign of its chain)
  for (std::size_t i = 0; i < inner.size(); ++i) stack.emplace_back(inner[i], +1);
  while (!stack.empty()) {
    auto [v, sign] = stack.back();
    stack.pop_back();
    total += sign;
    for (ElementId w : inner) {
      if (topo_pos_[static_cast<std::size_t>(w)] > topo_pos_[static_cast<std::size_t>(v)] && less(v, w))
        stack.emplace_back(w, -sign);
    }
  }
  return total;
}

long long FinitePoset::crosscut_mobius(std::size_t atom_guard) const {
  if (!bounded()) throw input_error("crosscut_mobius requires a bounded poset");
  if (*bottom_ == *top_) return 1;  // the empty atom set joins to 0̂ = 1̂
  auto as = atoms();
  if (as.size() > atom_guard)
    throw size_guard_error("atom set of " + std::to_string(as.size()) +
                           " exceeds the crosscut guard of " + std::to_string(atom_guard));
  const std::size_t n = as.size();
  long long total = 0;
  std::vector<std::uint64_t> meet(row_words_);
  for (std::uint64_t s = 1; s < (1ull << n); ++s) {
    for (std::size_t k = 0; k < row_words_; ++k) meet[k] = ~0ull;
    int popcount = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!((s >> i) & 1)) continue;
      ++popcount;
      const auto* row = &above_[static_cast<std::size_t>(as[i]) * row_words_];
      for (std::size_t k = 0; k < row_words_; ++k) meet[k] &= row[k];
    }
    // Minimal elements of the common upper bound set.
    std::vector<ElementId> ubs;
    for (int v = 0; v < size(); ++v)
      if ((meet[static_cast<std::size_t>(v) / 64] >> (v % 64)) & 1) ubs.push_back(v);
    std::vector<ElementId> mins;
    for (ElementId v : ubs) {
      bool minimal = true;
      for (ElementId w : ubs)
        if (w != v && leq(w, v)) { minimal = false; break; }
      if (minimal) mins.push_back(v);
    }
    if (mins.size() != 1)
      throw unsupported_error("crosscut inapplicable: an atom subset has " +
                              std::to_string(mins.size()) + " minimal upper bounds");
    if (mins[0] == *top_) total += (popcount % 2 == 0) ? 1 : -1;
  }
  return total;
}

std::string FinitePoset::to_json() const {
  nlohmann::json j;
  j["elements"] = nlohmann::json::array();
  for (int i = 0; i < size(); ++i)
    j["elements"].push_back({{"id", i}, {"label", labels_[static_cast<std::size_t>(i)]}});
  j["covers"] = nlohmann::json::array();
  for (auto& [lo, hi] : covers_) j["covers"].push_back({lo, hi});
  if (bottom_) j["bottom"] = *bottom_;
  if (top_) j["top"] = *top_;
  return j.dump(2);
}

FinitePoset FinitePoset::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw input_error(std::string("poset JSON parse failure: ") + e.what());
  }
  if (!j.contains("elements") || !j["elements"].is_array())
    throw input_error("poset JSON requires an \"elements\" array");
  std::map<long long, ElementId> remap;
  std::vector<std::string> labels;
  for (auto& e : j["elements"]) {
    long long id = e.at("id").get<long long>();
    if (remap.count(id)) throw input_error("duplicate element id in poset JSON");
    remap[id] = static_cast<ElementId>(labels.size());
    labels.push_back(e.at("label").get<std::string>());
  }
  std::vector<std::pair<ElementId, ElementId>> covers;
  for (auto& c : j.value("covers", nlohmann::json::array())) {
    long long lo = c.at(0).get<long long>(), hi = c.at(1).get<long long>();
    if (!remap.count(lo) || !remap.count(hi)) throw input_error("cover names an unknown id");
    covers.emplace_back(remap[lo], remap[hi]);
  }
  std::optional<ElementId> bottom, top;
  if (j.contains("bottom") && !j["bottom"].is_null()) {
    long long b = j["bottom"].get<long long>();
    if (!remap.count(b)) throw input_error("bottom names an unknown id");
    bottom = remap[b];
  }
  if (j.contains("top") && !j["top"].is_null()) {
    long long t = j["top"].get<long long>();
    if (!remap.count(t)) throw input_error("top names an unknown id");
    top = remap[t];
  }
  return from_covers(std::move(labels), std::move(covers), bottom, top);
}

std::string FinitePoset::to_dot() const {
  auto info = rank_info();
  std::ostringstream out;
  out << "digraph poset {\n  rankdir=BT;\n  node [shape=ellipse];\n";
  auto escape = [](const std::string& s) {
    std::string r;
    for (char c : s) {
      if (c == '"' || c == '\\') r += '\\';
      r += c;
    }
    return r;
  };
  for (int i = 0; i < size(); ++i)
    out << "  n" << i << " [label=\"" << escape(labels_[static_cast<std::size_t>(i)]) << "\"];\n";
  for (int r = 0; r <= info.poset_rank; ++r) {
    std::vector<int> level;
    for (int i = 0; i < size(); ++i)
      if (info.rank_of[static_cast<std::size_t>(i)] == r) level.push_back(i);
    if (level.empty()) continue;
    out << "  { rank=same;";
    for (int i : level) out << " n" << i << ";";
    out << " }\n";
  }
  for (auto& [lo, hi] : covers_) out << "  n" << lo << " -> n" << hi << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace patpos
