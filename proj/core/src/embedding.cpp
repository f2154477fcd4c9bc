#include "patpos/embedding.hpp"

#include <algorithm>
#include <sstream>

namespace patpos {

Word Embedding::pattern() const {
  Word w;
  for (int s : slots)
    if (s != kDash) w.letters.push_back(s);
  return w;
}

std::vector<int> Embedding::zero_set() const {
  std::vector<int> out;
  for (int i = 1; i <= size(); ++i)
    if (empty_at(i)) out.push_back(i);
  return out;
}

std::vector<int> Embedding::support() const {
  std::vector<int> out;
  for (int i = 1; i <= size(); ++i)
    if (!empty_at(i)) out.push_back(i);
  return out;
}

std::uint64_t Embedding::zero_mask() const {
  std::uint64_t m = 0;
  for (int i = 1; i <= size(); ++i)
    if (empty_at(i)) m |= 1ull << (i - 1);
  return m;
}

std::string Embedding::to_string() const {
  bool single_digit = true;
  for (int s : slots)
    if (s > 9) single_digit = false;
  std::ostringstream out;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!single_digit && i > 0) out << ',';
    if (slots[i] == kDash)
      out << '-';
    else
      out << slots[i];
  }
  return out.str();
}

std::vector<int> position_word(const Embedding& e) { return e.support(); }

std::vector<Embedding> embeddings(const PatternSystem& sys, const Word& a, const Word& b) {
  if (!sys.in_ground_set(a) || !sys.in_ground_set(b)) {
    sys.require_element(a);
    sys.require_element(b);
  }
  const Word ca = sys.canonical(a);
  std::vector<Embedding> out;
  for (const auto& occ : sys.occurrences(ca, b)) {
    Embedding e;
    e.base = b;
    e.slots.assign(static_cast<std::size_t>(b.size()), kDash);
    for (std::size_t j = 0; j < occ.size(); ++j) {
      int pos = occ[j];
      // Permutation kinds carry the base's letters, word kinds the pattern's.
      e.slots[static_cast<std::size_t>(pos - 1)] =
          sys.is_permutation_kind() ? b.at(pos) : ca.at(static_cast<int>(j) + 1);
    }
    out.push_back(std::move(e));
  }
  return out;
}

long long embedding_count(const PatternSystem& sys, const Word& a, const Word& b) {
  return static_cast<long long>(sys.occurrences(sys.canonical(a), b).size());
}

std::vector<int> AdjacencyBlock::tail() const {
  std::vector<int> out;
  for (int p = first + 1; p <= last; ++p) out.push_back(p);
  return out;
}

std::vector<int> AdjacencyDecomposition::tail_positions() const {
  std::vector<int> out;
  for (const auto& b : blocks)
    for (int p : b.tail()) out.push_back(p);
  return out;
}

int AdjacencyDecomposition::block_of(int pos1) const {
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (blocks[i].first <= pos1 && pos1 <= blocks[i].last) return static_cast<int>(i);
  throw input_error("position outside the decomposed element");
}

AdjacencyDecomposition adjacency_decomposition(const PatternSystem& sys, const Word& p) {
  if (!sys.is_closed())
    throw unsupported_error("adjacencies need a closed pattern poset; " + sys.name() + " is not closed");
  sys.require_element(p);
  const Word cp = sys.canonical(p);
  // The element obtained by decreasing position i once.
  std::vector<Word> dec(static_cast<std::size_t>(cp.size()));
  for (int i = 1; i <= cp.size(); ++i) {
    int par = sys.tree().parent(cp.at(i));
    Word w = cp;
    if (par == kDash)
      w.letters.erase(w.letters.begin() + (i - 1));
    else
      w.letters[static_cast<std::size_t>(i - 1)] = par;
    dec[static_cast<std::size_t>(i - 1)] = w.empty() ? w : sys.canonical(w);
  }
  AdjacencyDecomposition decomp;
  int start = 1;
  for (int i = 2; i <= cp.size() + 1; ++i) {
    if (i > cp.size() || dec[static_cast<std::size_t>(i - 1)] != dec[static_cast<std::size_t>(start - 1)]) {
      decomp.blocks.push_back({start, i - 1});
      start = i;
    }
  }
  return decomp;
}

std::vector<PositionClass> classify_positions(const PatternSystem& sys, const Embedding& e) {
  if (!sys.is_closed())
    throw unsupported_error("position classes need a closed pattern poset");
  std::vector<PositionClass> out(static_cast<std::size_t>(e.size()));
  for (int i = 1; i <= e.size(); ++i) {
    PositionClass c;
    c.empty = e.empty_at(i);
    int base_letter = e.base.at(i);
    int slot = e.slot(i);
    if (slot == base_letter)
      c.kind = SlotKind::full;
    else if (slot == sys.tree().parent(base_letter))
      c.kind = SlotKind::fillable;  // one increase reaches the base letter
    else
      c.kind = SlotKind::other;
    out[static_cast<std::size_t>(i - 1)] = c;
  }
  return out;
}

bool is_normal(const PatternSystem& sys, const Embedding& e, NormalPolicy policy) {
  auto classes = classify_positions(sys, e);
  auto decomp = adjacency_decomposition(sys, e.base);
  std::vector<bool> in_tail(static_cast<std::size_t>(e.size()) + 1, false);
  for (int p : decomp.tail_positions()) in_tail[static_cast<std::size_t>(p)] = true;
  for (int i = 1; i <= e.size(); ++i) {
    const auto& c = classes[static_cast<std::size_t>(i - 1)];
    if (in_tail[static_cast<std::size_t>(i)]) {
      if (c.kind != SlotKind::full) return false;
    } else if (policy == NormalPolicy::literal) {
      if (c.kind != SlotKind::fillable) return false;
    } else {
      if (c.kind == SlotKind::other) return false;
    }
  }
  return true;
}

std::vector<Embedding> normal_embeddings(const PatternSystem& sys, const Word& a, const Word& b,
                                         NormalPolicy policy) {
  std::vector<Embedding> out;
  for (auto& e : embeddings(sys, a, b))
    if (is_normal(sys, e, policy)) out.push_back(e);
  return out;
}

long long normal_embedding_count(const PatternSystem& sys, const Word& a, const Word& b,
                                 NormalPolicy policy) {
  return static_cast<long long>(normal_embeddings(sys, a, b, policy).size());
}

bool is_representative(const PatternSystem& sys, const Embedding& e) {
  auto classes = classify_positions(sys, e);
  auto decomp = adjacency_decomposition(sys, e.base);
  for (const auto& block : decomp.blocks) {
    // empties, then at most one non-full non-empty, then fulls
    int phase = 0;
    for (int i = block.first; i <= block.last; ++i) {
      const auto& c = classes[static_cast<std::size_t>(i - 1)];
      if (c.empty) {
        if (phase > 0) return false;
      } else if (c.kind == SlotKind::full) {
        phase = 2;
      } else {
        if (phase >= 1) return false;
        phase = 1;
      }
    }
  }
  return true;
}

std::vector<Embedding> representative_embeddings(const PatternSystem& sys, const Word& a,
                                                 const Word& b) {
  std::vector<Embedding> out;
  for (auto& e : embeddings(sys, a, b))
    if (is_representative(sys, e)) out.push_back(e);
  return out;
}

Embedding rp(const PatternSystem& sys, const Embedding& e) {
  auto classes = classify_positions(sys, e);
  auto decomp = adjacency_decomposition(sys, e.base);
  Embedding r;
  r.base = e.base;
  r.slots.assign(e.slots.size(), kDash);
  for (const auto& block : decomp.blocks) {
    std::vector<int> middle;
    int empties = 0;
    for (int i = block.first; i <= block.last; ++i) {
      const auto& c = classes[static_cast<std::size_t>(i - 1)];
      if (c.empty)
        ++empties;
      else if (c.kind != SlotKind::full)
        middle.push_back(e.slot(i));
    }
    int pos = block.first + empties;
    for (int s : middle) r.slots[static_cast<std::size_t>(pos++ - 1)] = s;
    // Fulls land on the rightmost positions and take their base letters.
    while (pos <= block.last) {
      r.slots[static_cast<std::size_t>(pos - 1)] = r.base.at(pos);
      ++pos;
    }
  }
  // For permutation kinds every slot carries the base letter of its position.
  if (sys.is_permutation_kind()) {
    for (int i = 1; i <= r.size(); ++i)
      if (!r.empty_at(i)) r.slots[static_cast<std::size_t>(i - 1)] = r.base.at(i);
  }
  if (!sys.equal_elements(r.pattern(), e.pattern()))
    throw internal_error("rp changed the embedded element");
  bool found = false;
  for (const auto& candidate : embeddings(sys, e.pattern(), e.base))
    if (candidate.slots == r.slots) { found = true; break; }
  if (!found) throw internal_error("rp produced a slot sequence that is not an occurrence");
  return r;
}

bool embedding_leq(const PatternSystem& sys, const Embedding& e, const Embedding& f) {
  if (e.base != f.base) throw input_error("embedding comparison requires a common base");
  if (sys.is_closed()) {
    const auto& tree = sys.tree();
    for (int i = 1; i <= e.size(); ++i) {
      int a = e.slot(i), b = f.slot(i);
      if (a == kDash) continue;
      if (b == kDash || !tree.anc_leq(a, b)) return false;
    }
    return true;
  }
  std::uint64_t ze = e.zero_mask(), zf = f.zero_mask();
  if ((ze | zf) != ze) return false;  // Z(e) ⊇ Z(f)
  return sys.leq(sys.canonical(e.pattern()), sys.canonical(f.pattern()));
}

Embedding join_fully_closed(const PatternSystem& sys, const Embedding& e, const Embedding& f) {
  if (!sys.is_fully_closed())
    throw unsupported_error("embedding joins need a fully-closed pattern poset");
  if (e.base != f.base) throw input_error("embedding join requires a common base");
  Embedding j;
  j.base = e.base;
  j.slots.assign(e.slots.size(), kDash);
  for (int i = 1; i <= e.size(); ++i)
    if (!e.empty_at(i) || !f.empty_at(i)) j.slots[static_cast<std::size_t>(i - 1)] = j.base.at(i);
  return j;
}

}  // namespace patpos
