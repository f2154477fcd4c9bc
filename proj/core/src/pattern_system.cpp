#include "patpos/pattern_system.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace patpos {

Word reduce(const Word& p) {
  std::vector<int> sorted = p.letters;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw input_error("reduce requires distinct letters");
  Word out;
  out.letters.reserve(p.letters.size());
  for (int x : p.letters) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
    out.letters.push_back(static_cast<int>(it - sorted.begin()) + 1);
  }
  return out;
}

bool is_permutation_word(const Word& w) {
  std::set<int> seen;
  for (int x : w.letters) {
    if (x <= 0 || !seen.insert(x).second) return false;
  }
  return true;
}

bool is_dyck_word(const Word& w) {
  int height = 0;
  for (int x : w.letters) {
    if (x == 0) ++height;        // up-step
    else if (x == 1) --height;   // down-step
    else return false;
    if (height < 0) return false;
  }
  return height == 0;
}

// ---------------------------------------------------------------------------
// AlphabetTree

AlphabetTree AlphabetTree::antichain(int max_letter) {
  AlphabetTree t;
  t.shape_ = Shape::antichain;
  t.max_letter_ = max_letter;
  return t;
}

AlphabetTree AlphabetTree::chain(int max_letter) {
  if (max_letter < 1) throw input_error("chain alphabet needs a positive bound");
  AlphabetTree t;
  t.shape_ = Shape::chain;
  t.max_letter_ = max_letter;
  return t;
}

AlphabetTree AlphabetTree::explicit_tree(std::map<int, int> parent_of) {
  AlphabetTree t;
  t.shape_ = Shape::tree;
  t.parent_ = std::move(parent_of);
  for (auto& [letter, par] : t.parent_) {
    if (letter <= 0) throw input_error("tree letters must be positive");
    if (par != kDash && !t.parent_.count(par)) throw input_error("tree parent is not a letter");
    t.max_letter_ = std::max(t.max_letter_, letter);
  }
  // Depths; a walk that leaves the letter set or loops is rejected.
  for (auto& [letter, par] : t.parent_) {
    int d = 0, x = letter;
    while (x != kDash) {
      ++d;
      if (d > static_cast<int>(t.parent_.size())) throw input_error("tree parent map has a cycle");
      x = t.parent_.at(x);
    }
    t.depth_[letter] = d;
  }
  return t;
}

bool AlphabetTree::valid_letter(int x) const {
  if (x <= 0) return false;
  switch (shape_) {
    case Shape::antichain: return max_letter_ == 0 || x <= max_letter_;
    case Shape::chain: return x <= max_letter_;
    case Shape::tree: return parent_.count(x) > 0;
  }
  return false;
}

int AlphabetTree::parent(int letter) const {
  if (letter == kDash) throw input_error("the root has no parent");
  if (!valid_letter(letter)) throw input_error("letter outside the alphabet");
  switch (shape_) {
    case Shape::antichain: return kDash;
    case Shape::chain: return letter == 1 ? kDash : letter - 1;
    case Shape::tree: return parent_.at(letter);
  }
  return kDash;
}

std::vector<int> AlphabetTree::children(int x) const {
  if (x != kDash && !valid_letter(x)) throw input_error("letter outside the alphabet");
  switch (shape_) {
    case Shape::antichain: {
      if (x != kDash) return {};
      if (max_letter_ == 0) throw unsupported_error("antichain over an unbounded alphabet");
      std::vector<int> out;
      for (int v = 1; v <= max_letter_; ++v) out.push_back(v);
      return out;
    }
    case Shape::chain: {
      if (x == kDash) return {1};
      return x < max_letter_ ? std::vector<int>{x + 1} : std::vector<int>{};
    }
    case Shape::tree: {
      std::vector<int> out;
      for (auto& [letter, par] : parent_)
        if (par == x) out.push_back(letter);
      return out;
    }
  }
  return {};
}

int AlphabetTree::child_toward(int from, int target) const {
  if (!valid_letter(target)) throw input_error("letter outside the alphabet");
  int x = target, prev = target;
  while (x != from) {
    prev = x;
    if (x == kDash) throw input_error("target is not above the starting letter");
    x = parent(x);
  }
  if (prev == from) throw input_error("target equals the starting letter");
  return prev;
}

int AlphabetTree::depth(int x) const {
  if (x == kDash) return 0;
  if (!valid_letter(x)) throw input_error("letter outside the alphabet");
  switch (shape_) {
    case Shape::antichain: return 1;
    case Shape::chain: return x;
    case Shape::tree: return depth_.at(x);
  }
  return 0;
}

bool AlphabetTree::anc_leq(int a, int b) const {
  if (a == kDash) return true;
  if (b == kDash) return false;
  switch (shape_) {
    case Shape::antichain: return a == b;
    case Shape::chain: return a <= b;
    case Shape::tree: {
      int x = b;
      while (x != kDash) {
        if (x == a) return true;
        x = parent_.at(x);
      }
      return false;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// PatternSystem

std::string to_string(PatternKind k) {
  switch (k) {
    case PatternKind::subword: return "subword";
    case PatternKind::generalized_subword: return "generalized-subword";
    case PatternKind::composition: return "composition";
    case PatternKind::classical_perm: return "classical";
    case PatternKind::consecutive_perm: return "consecutive";
    case PatternKind::vincular: return "vincular";
    case PatternKind::dyck: return "dyck";
  }
  return "?";
}

PatternSystem PatternSystem::subword(int alphabet_size) {
  if (alphabet_size < 1) throw input_error("subword alphabet needs a positive size");
  PatternSystem s(PatternKind::subword);
  s.tree_ = AlphabetTree::antichain(alphabet_size);
  return s;
}

PatternSystem PatternSystem::generalized_subword(AlphabetTree tree) {
  PatternSystem s(PatternKind::generalized_subword);
  s.tree_ = std::move(tree);
  return s;
}

PatternSystem PatternSystem::composition(int max_letter) {
  PatternSystem s(PatternKind::composition);
  s.tree_ = AlphabetTree::chain(max_letter);
  return s;
}

PatternSystem PatternSystem::classical() {
  PatternSystem s(PatternKind::classical_perm);
  s.tree_ = AlphabetTree::antichain(0);
  return s;
}

PatternSystem PatternSystem::consecutive() { return PatternSystem(PatternKind::consecutive_perm); }

PatternSystem PatternSystem::vincular(int alphabet_size, std::vector<bool> mask) {
  if (alphabet_size < 1) throw input_error("vincular alphabet needs a positive size");
  PatternSystem s(PatternKind::vincular);
  s.tree_ = AlphabetTree::antichain(alphabet_size);
  s.mask_ = std::move(mask);
  return s;
}

PatternSystem PatternSystem::dyck() { return PatternSystem(PatternKind::dyck); }

Closure PatternSystem::closure() const {
  switch (kind_) {
    case PatternKind::subword:
    case PatternKind::classical_perm:
      return Closure::fully_closed;
    case PatternKind::generalized_subword: {
      bool flat = true;
      for (int v = 1; v <= tree_.max_letter(); ++v)
        if (tree_.valid_letter(v) && tree_.parent(v) != kDash) flat = false;
      return flat ? Closure::fully_closed : Closure::closed;
    }
    case PatternKind::composition:
      return Closure::closed;
    case PatternKind::consecutive_perm:
    case PatternKind::vincular:
    case PatternKind::dyck:
      return Closure::not_closed;
  }
  return Closure::not_closed;
}

const AlphabetTree& PatternSystem::tree() const {
  if (!is_closed()) throw unsupported_error(name() + " order has no alphabet tree");
  return tree_;
}

bool PatternSystem::in_ground_set(const Word& w) const {
  switch (kind_) {
    case PatternKind::classical_perm:
    case PatternKind::consecutive_perm:
      return !w.empty() && is_permutation_word(w);
    case PatternKind::dyck:
      return !w.empty() && is_dyck_word(w);
    default:
      if (w.empty()) return false;
      for (int x : w.letters)
        if (!tree_.valid_letter(x)) return false;
      return true;
  }
}

void PatternSystem::require_element(const Word& w) const {
  if (!in_ground_set(w))
    throw input_error("'" + format(w) + "' is not an element of the " + name() + " poset");
}

Word PatternSystem::canonical(const Word& w) const {
  return is_permutation_kind() ? reduce(w) : w;
}

bool PatternSystem::equal_elements(const Word& a, const Word& b) const {
  return canonical(a) == canonical(b);
}

bool PatternSystem::kappa_holds(const std::vector<int>& positions) const {
  if (kind_ == PatternKind::consecutive_perm) {
    for (std::size_t j = 1; j < positions.size(); ++j)
      if (positions[j] != positions[j - 1] + 1) return false;
    return true;
  }
  if (kind_ == PatternKind::vincular) {
    for (std::size_t j = 1; j < positions.size(); ++j) {
      bool constrained = j - 1 < mask_.size() && mask_[j - 1];
      if (constrained && positions[j] != positions[j - 1] + 1) return false;
    }
  }
  return true;
}

namespace {

// Letter test at one occurrence position; perm kinds need the whole prefix
// to stay order-isomorphic instead.
bool occurrence_extends(const PatternSystem& sys, const AlphabetTree& tree, const Word& a,
                        const Word& b, const std::vector<int>& chosen, int j, int pos) {
  switch (sys.kind()) {
    case PatternKind::subword:
    case PatternKind::vincular:
    case PatternKind::dyck:
      return b.at(pos) == a.at(j);
    case PatternKind::generalized_subword:
    case PatternKind::composition:
      return tree.anc_leq(a.at(j), b.at(pos));
    case PatternKind::classical_perm:
    case PatternKind::consecutive_perm: {
      for (int i = 1; i < j; ++i) {
        bool pa = a.at(i) < a.at(j);
        bool pb = b.at(chosen[static_cast<std::size_t>(i - 1)]) < b.at(pos);
        if (pa != pb) return false;
      }
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<std::vector<int>> PatternSystem::occurrences(const Word& a, const Word& b) const {
  require_element(a);
  require_element(b);
  const int k = a.size(), n = b.size();
  std::vector<std::vector<int>> out;
  if (k > n) return out;

  if (kind_ == PatternKind::consecutive_perm) {
    for (int start = 1; start + k - 1 <= n; ++start) {
      std::vector<int> pos;
      bool ok = true;
      for (int j = 1; ok && j <= k; ++j) {
        int p = start + j - 1;
        ok = occurrence_extends(*this, tree_, a, b, pos, j, p);
        pos.push_back(p);
      }
      if (ok) out.push_back(pos);
    }
    return out;
  }

  std::vector<int> chosen;
  auto dfs = [&](auto&& self, int j, int from) -> void {
    if (j > k) {
      out.push_back(chosen);
      return;
    }
    for (int pos = from; pos <= n - (k - j); ++pos) {
      if (j > 1 && kind_ == PatternKind::vincular && j - 2 < static_cast<int>(mask_.size()) &&
          mask_[static_cast<std::size_t>(j - 2)] && pos != chosen.back() + 1)
        continue;
      if (!occurrence_extends(*this, tree_, a, b, chosen, j, pos)) continue;
      chosen.push_back(pos);
      self(self, j + 1, pos + 1);
      chosen.pop_back();
    }
  };
  dfs(dfs, 1, 1);
  return out;
}

bool PatternSystem::leq(const Word& a, const Word& b) const {
  require_element(a);
  require_element(b);
  const int k = a.size(), n = b.size();
  if (k > n) return false;
  if (kind_ == PatternKind::consecutive_perm || kind_ == PatternKind::dyck ||
      kind_ == PatternKind::vincular)
    return !occurrences(a, b).empty();
  // Greedy/DFS with early exit.
  std::vector<int> chosen;
  auto dfs = [&](auto&& self, int j, int from) -> bool {
    if (j > k) return true;
    for (int pos = from; pos <= n - (k - j); ++pos) {
      if (!occurrence_extends(*this, tree_, a, b, chosen, j, pos)) continue;
      chosen.push_back(pos);
      if (self(self, j + 1, pos + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  return dfs(dfs, 1, 1);
}

long long PatternSystem::rank_gap(const Word& a, const Word& b) const {
  auto measure = [&](const Word& w) -> long long {
    switch (kind_) {
      case PatternKind::classical_perm:
      case PatternKind::consecutive_perm:
      case PatternKind::vincular:
        return w.size();
      case PatternKind::dyck:
        return w.size() / 2;
      default: {
        long long s = 0;
        for (int x : w.letters) s += tree_.depth(x);
        return s;
      }
    }
  };
  return measure(b) - measure(a);
}

namespace {

std::vector<Word> sorted_by_length(std::set<Word> found) {
  std::vector<Word> elems(found.begin(), found.end());
  std::sort(elems.begin(), elems.end(), [](const Word& x, const Word& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x.letters < y.letters;
  });
  return elems;
}

}  // namespace

std::vector<Word> PatternSystem::interval_elements(const Word& a, const Word& b) const {
  require_element(a);
  require_element(b);
  const Word ca = canonical(a), cb = canonical(b);
  std::set<Word> found;
  if (is_closed()) {
    // Walk down from b through single decreases, pruning below a.
    std::set<Word> seen;
    std::vector<Word> stack;
    if (leq(ca, cb)) {
      stack.push_back(cb);
      seen.insert(cb);
    }
    while (!stack.empty()) {
      Word w = stack.back();
      stack.pop_back();
      found.insert(w);
      for (int i = 1; i <= w.size(); ++i) {
        int par = tree_.parent(w.at(i));
        Word next = w;
        if (par == kDash)
          next.letters.erase(next.letters.begin() + (i - 1));
        else
          next.letters[static_cast<std::size_t>(i - 1)] = par;
        if (next.empty() || seen.count(next)) continue;
        seen.insert(next);
        if (leq(ca, next)) stack.push_back(next);
      }
    }
  } else {
    for (const Word& c : elements_below(cb))
      if (leq(ca, c)) found.insert(c);
  }
  return sorted_by_length(std::move(found));
}

std::vector<Word> PatternSystem::elements_below(const Word& b) const {
  require_element(b);
  const Word cb = canonical(b);
  std::set<Word> found;
  if (is_closed()) {
    std::set<Word> seen{cb};
    std::vector<Word> stack{cb};
    while (!stack.empty()) {
      Word w = stack.back();
      stack.pop_back();
      found.insert(w);
      for (int i = 1; i <= w.size(); ++i) {
        int par = tree_.parent(w.at(i));
        Word next = w;
        if (par == kDash)
          next.letters.erase(next.letters.begin() + (i - 1));
        else
          next.letters[static_cast<std::size_t>(i - 1)] = par;
        if (next.empty() || seen.count(next)) continue;
        seen.insert(next);
        stack.push_back(next);
      }
    }
  } else {
    const int n = cb.size();
    if (n > 20)
      throw size_guard_error("sub-element discovery on a non-closed system is exponential; top has " +
                             std::to_string(n) + " letters");
    if (kind_ == PatternKind::consecutive_perm) {
      for (int len = 1; len <= n; ++len)
        for (int start = 1; start + len - 1 <= n; ++start) {
          Word sub(std::vector<int>(cb.letters.begin() + (start - 1),
                                    cb.letters.begin() + (start + len - 1)));
          found.insert(canonical(sub));
        }
    } else {
      for (std::uint64_t s = 1; s < (1ull << n); ++s) {
        Word sub;
        for (int i = 0; i < n; ++i)
          if ((s >> i) & 1) sub.letters.push_back(cb.letters[static_cast<std::size_t>(i)]);
        if (!in_ground_set(sub)) continue;
        if (kind_ == PatternKind::vincular && !leq(sub, cb)) continue;
        found.insert(canonical(sub));
      }
    }
  }
  return sorted_by_length(std::move(found));
}

Interval PatternSystem::build_interval(const Word& a, const Word& b) const {
  const Word ca = canonical(a), cb = canonical(b);
  if (!leq(ca, cb))
    throw input_error("'" + format(a) + "' is not contained in '" + format(b) + "'");
  Interval interval;
  interval.elements = interval_elements(ca, cb);
  std::vector<std::string> labels;
  for (auto& w : interval.elements) labels.push_back(format(w));
  const auto& elems = interval.elements;
  auto cmp = [&](ElementId x, ElementId y) {
    return leq(elems[static_cast<std::size_t>(x)], elems[static_cast<std::size_t>(y)]);
  };
  ElementId bottom = -1, top = -1;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (elems[i] == ca) bottom = static_cast<ElementId>(i);
    if (elems[i] == cb) top = static_cast<ElementId>(i);
  }
  interval.poset = FinitePoset::from_relations(std::move(labels), cmp, bottom, top);
  interval.bottom_id = bottom;
  interval.top_id = top;
  return interval;
}

AxiomReport PatternSystem::verify_poset_axioms(int size_bound, std::size_t element_guard) const {
  AxiomReport report;
  auto elems = enumerate_ground(size_bound);
  if (elems.size() > element_guard)
    throw size_guard_error("axiom sweep over " + std::to_string(elems.size()) +
                           " elements exceeds the guard of " + std::to_string(element_guard));
  const int m = static_cast<int>(elems.size());
  report.elements = m;
  std::vector<std::vector<bool>> le(static_cast<std::size_t>(m), std::vector<bool>(static_cast<std::size_t>(m), false));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (elems[static_cast<std::size_t>(i)].size() <= elems[static_cast<std::size_t>(j)].size())
        le[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            leq(elems[static_cast<std::size_t>(i)], elems[static_cast<std::size_t>(j)]);
      ++report.pairs;
    }
  for (int i = 0; i < m; ++i) {
    if (!le[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)])
      report.violations.push_back({"reflexivity", {elems[static_cast<std::size_t>(i)]}});
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i != j && le[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] &&
          le[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
        report.violations.push_back(
            {"antisymmetry", {elems[static_cast<std::size_t>(i)], elems[static_cast<std::size_t>(j)]}});
    }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (!le[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) continue;
      for (int k = 0; k < m; ++k) {
        ++report.triples;
        if (le[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] &&
            !le[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)])
          report.violations.push_back({"transitivity",
                                       {elems[static_cast<std::size_t>(i)],
                                        elems[static_cast<std::size_t>(j)],
                                        elems[static_cast<std::size_t>(k)]}});
      }
    }
  report.pass = report.violations.empty();
  return report;
}

int PatternSystem::step_down(int letter) const { return tree().parent(letter); }

std::vector<int> PatternSystem::step_up(int letter_or_dash) const {
  return tree().children(letter_or_dash);
}

int PatternSystem::step_up_toward(int letter_or_dash, int target) const {
  return tree().child_toward(letter_or_dash, target);
}

namespace {

void words_over(int alphabet, int max_len, std::vector<Word>& out) {
  std::vector<int> current;
  auto rec = [&](auto&& self) -> void {
    if (!current.empty()) out.emplace_back(current);
    if (static_cast<int>(current.size()) == max_len) return;
    for (int v = 1; v <= alphabet; ++v) {
      current.push_back(v);
      self(self);
      current.pop_back();
    }
  };
  rec(rec);
}

void permutations_up_to(int max_len, std::vector<Word>& out) {
  for (int n = 1; n <= max_len; ++n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i + 1;
    do {
      out.emplace_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
  }
}

void dyck_words_up_to(int max_len, std::vector<Word>& out) {
  std::vector<int> current;
  auto rec = [&](auto&& self, int height) -> void {
    if (height == 0 && !current.empty()) out.emplace_back(current);
    if (static_cast<int>(current.size()) >= max_len) return;
    if (static_cast<int>(current.size()) + height < max_len) {
      current.push_back(0);
      self(self, height + 1);
      current.pop_back();
    }
    if (height > 0) {
      current.push_back(1);
      self(self, height - 1);
      current.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace

std::vector<Word> PatternSystem::enumerate_ground(int max_len) const {
  std::vector<Word> out;
  switch (kind_) {
    case PatternKind::subword:
    case PatternKind::vincular:
    case PatternKind::composition:
      words_over(tree_.max_letter(), max_len, out);
      break;
    case PatternKind::generalized_subword: {
      std::vector<int> letters;
      for (int v = 1; v <= tree_.max_letter(); ++v)
        if (tree_.valid_letter(v)) letters.push_back(v);
      std::vector<int> current;
      auto rec = [&](auto&& self) -> void {
        if (!current.empty()) out.emplace_back(current);
        if (static_cast<int>(current.size()) == max_len) return;
        for (int v : letters) {
          current.push_back(v);
          self(self);
          current.pop_back();
        }
      };
      rec(rec);
      break;
    }
    case PatternKind::classical_perm:
    case PatternKind::consecutive_perm:
      permutations_up_to(max_len, out);
      break;
    case PatternKind::dyck:
      dyck_words_up_to(max_len, out);
      break;
  }
  std::sort(out.begin(), out.end(), [](const Word& x, const Word& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x.letters < y.letters;
  });
  return out;
}

std::string PatternSystem::format(const Word& w) const {
  bool single_digit = true;
  for (int x : w.letters)
    if (x < 0 || x > 9) single_digit = false;
  std::ostringstream out;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (!single_digit && i > 0) out << ',';
    out << w.letters[i];
  }
  return out.str();
}

Word PatternSystem::parse(const std::string& text) const {
  Word w;
  if (text.find(',') != std::string::npos) {
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) {
      try {
        w.letters.push_back(std::stoi(part));
      } catch (const std::exception&) {
        throw input_error("cannot parse element '" + text + "'");
      }
    }
  } else {
    for (char c : text) {
      if (c < '0' || c > '9') throw input_error("cannot parse element '" + text + "'");
      w.letters.push_back(c - '0');
    }
  }
  if (w.empty()) throw input_error("empty element");
  return w;
}

}  // namespace patpos
