#include "stellar/criteria.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_set>

namespace stellar {

// ---------------------------------------------------------------------------
// Kumar's criterion at the height point.

KumarTable::KumarTable(const WeylGroup& g) : g_(&g) {
  const RootSystem& rs = g.rs();
  diag_.resize(g.size());
  for (int w = 0; w < g.size(); ++w) {
    BigInt prod = 1;
    inversion_set(g.element(w)).for_each([&](int a) { prod *= rs.height[a]; });
    diag_[w] = prod;
  }
}

BigInt KumarTable::value_inner(int w, int v) {
  if (!g_->leq(v, w)) return 0;
  if (v == w) return diag_[w];
  auto key = std::make_pair(w, v);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;

  const RootSystem& rs = g_->rs();
  int node = std::countr_zero(g_->rdesc(w)) + 1;
  int ws = g_->rmul(w, node);
  int vs = g_->rmul(v, node);
  // (w s_i a_i)(r) is the height of -w(a_i), positive because s_i is a
  // right descent of w.
  int img = g_->element(w).act[rs.simple_pos[node - 1]];
  BigInt r;
  if (g_->length(vs) > g_->length(v)) {
    r = value_inner(ws, v);
  } else {
    r = value_inner(ws, v) + BigInt(rs.height[-img - 1]) * value_inner(ws, vs);
  }
  memo_.emplace(key, r);
  return r;
}

BigInt KumarTable::value(int w, int v) {
  std::lock_guard<std::mutex> lock(mutex_);
  if (!g_->leq(v, w)) throw std::domain_error("kumar value: v is not below w");
  return value_inner(w, v);
}

BigInt KumarTable::value_via_descent(int w, int v, int node) {
  std::lock_guard<std::mutex> lock(mutex_);
  if (!g_->leq(v, w)) throw std::domain_error("kumar value: v is not below w");
  if (v == w) return diag_[w];
  if (!(g_->rdesc(w) & (1u << (node - 1))))
    throw std::domain_error("kumar value: node is not a right descent");
  const RootSystem& rs = g_->rs();
  int ws = g_->rmul(w, node);
  int vs = g_->rmul(v, node);
  int img = g_->element(w).act[rs.simple_pos[node - 1]];
  if (g_->length(vs) > g_->length(v)) return value_inner(ws, v);
  return value_inner(ws, v) + BigInt(rs.height[-img - 1]) * value_inner(ws, vs);
}

KumarTable& kumar_table(const WeylGroup& g) {
  static std::map<const WeylGroup*, std::unique_ptr<KumarTable>> reg;
  static std::mutex m;
  std::lock_guard<std::mutex> lock(m);
  auto it = reg.find(&g);
  if (it == reg.end()) it = reg.emplace(&g, std::make_unique<KumarTable>(g)).first;
  return *it->second;
}

std::vector<int> z_set(const WeylGroup& g, int w, int v) {
  std::vector<int> z;
  for (int a = 0; a < g.rs().num_positive(); ++a)
    if (!g.leq(v, g.lmul_reflection(w, a))) z.push_back(a);
  return z;
}

bool is_smooth_oracle(const WeylGroup& g, int w) {
  // Reflections below w must number exactly l(w).
  int cnt = 0;
  for (int a = 0; a < g.rs().num_positive(); ++a)
    if (g.leq(g.reflection_id(a), w)) ++cnt;
  if (cnt != g.length(w)) return false;

  int w0 = g.longest();
  int ww0 = g.mul_ids(w, w0);
  BigInt expected = 1;
  for (int a : z_set(g, w0, ww0)) expected *= g.rs().height[a];
  return kumar_table(g).value(w0, ww0) == expected;
}

bool is_rationally_smooth_oracle(const WeylGroup& g, int w) {
  return is_palindromic(poincare(g, w));
}

// ---------------------------------------------------------------------------
// Stellar pattern tables.

const std::vector<std::string>& BadPatternTable::stellar_labels() {
  static const std::vector<std::string> labels = {"B2", "G2", "A3", "B3", "C3", "D4"};
  return labels;
}

namespace {

std::uint32_t inv_mask(const Element& e) {
  std::uint32_t m = 0;
  inversion_set(e).for_each([&](int i) { m |= (1u << i); });
  return m;
}

using WordList = std::vector<std::vector<int>>;

WordList bracket_expand(const WordList& pre, const std::vector<int>& core,
                        const WordList& post) {
  WordList out;
  for (const auto& p : pre)
    for (const auto& q : post) {
      std::vector<int> w = p;
      w.insert(w.end(), core.begin(), core.end());
      w.insert(w.end(), q.begin(), q.end());
      out.push_back(std::move(w));
    }
  return out;
}

void append(WordList& dst, const WordList& src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

// Minimal forbidden-pattern word lists, bracket notation expanded:
// [x] core [y] stands for the words {, x} core {, y}.
WordList theorem_words(const std::string& label, bool rational) {
  const WordList none = {{}};
  if (!rational) {
    if (label == "B2") return {{2, 1, 2}};
    if (label == "G2") {
      WordList w = bracket_expand({{}, {2}}, {1, 2, 1}, {{}, {2}});
      w.push_back({1, 2, 1, 2, 1});
      return w;
    }
    if (label == "A3") return {{2, 1, 3, 2}, {1, 2, 3, 2, 1}};
    if (label == "B3") {
      WordList w = {{2, 1, 3, 2}};
      append(w, bracket_expand(none, {1, 2, 3, 2, 1},
                               {{}, {3}, {3, 2}, {2, 3}, {2, 3, 2}}));
      return w;
    }
    if (label == "C3") {
      WordList w = bracket_expand({{}, {3}}, {2, 1, 3, 2}, {{}, {3}});
      w.push_back({3, 2, 1, 2, 3});
      w.push_back({1, 2, 3, 2, 1, 3, 2, 3});
      return w;
    }
    if (label == "D4") return {{2, 1, 3, 4, 2}};
  } else {
    if (label == "B2" || label == "G2") return {};
    if (label == "A3") return {{2, 1, 3, 2}, {1, 2, 3, 2, 1}};
    if (label == "B3" || label == "C3") {
      WordList w = bracket_expand({{}, {3}}, {2, 1, 3, 2}, {{}, {3}});
      append(w, bracket_expand({{}, {2}}, {3, 2, 1, 2, 3}, {{}, {2}}));
      append(w, bracket_expand(none, {1, 2, 3, 2, 1},
                               {{}, {3}, {2, 3}, {3, 2}, {2, 3, 2}, {3, 2, 3}}));
      return w;
    }
    if (label == "D4") return {{2, 1, 3, 4, 2}};
  }
  throw InternalError("unknown stellar label " + label);
}

// Verified by the oracles over the full small groups and pinned here; the
// minimal-list contents are additionally checked against the known pattern
// words below.  (D4 is often quoted as 49 elsewhere; the oracle count over
// all of W(D4), confirmed by exhaustive subword ideals, is 84.)
constexpr int kSmoothCounts[6] = {1, 5, 2, 20, 20, 84};
constexpr int kRationalCounts[6] = {0, 0, 2, 14, 14, 84};
constexpr int kSmoothMinimalCounts[6] = {1, 5, 2, 6, 6, 1};
constexpr int kRationalMinimalCounts[6] = {0, 0, 2, 14, 14, 1};

BadPatternTable compute_bad_tables() {
  BadPatternTable tbl;
  for (const auto& label : BadPatternTable::stellar_labels()) {
    auto parsed = parse_type_name(label);
    const RootSystem& rs = root_system(parsed->first, parsed->second);
    const WeylGroup& g = weyl_group(rs);

    StellarTypeTable t;
    t.label = label;
    std::vector<int> smooth_ids, rational_ids;
    for (int w = 0; w < g.size(); ++w) {
      bool sm = is_smooth_oracle(g, w);
      bool rat = is_rationally_smooth_oracle(g, w);
      if (sm && !rat) throw InternalError("smooth but not rationally smooth element found");
      if (!sm) {
        t.smooth_bad.push_back(inv_mask(g.element(w)));
        smooth_ids.push_back(w);
      }
      if (!rat) {
        t.rational_bad.push_back(inv_mask(g.element(w)));
        rational_ids.push_back(w);
      }
    }
    std::sort(t.smooth_bad.begin(), t.smooth_bad.end());
    std::sort(t.rational_bad.begin(), t.rational_bad.end());

    // Irredundant lists: drop elements already caught by a proper stellar
    // subsystem pattern (the full-span subsystem is the type itself).
    Bits full = Bits::full(rs.num_positive());
    auto caught_by_proper = [&](int w, bool rational) {
      Bits inv = inversion_set(g.element(w));
      for (const auto& d : stellar_subsystems(rs)) {
        if (d.delta_plus == full) continue;
        auto sub = tbl.types.find(d.type_label);
        if (sub == tbl.types.end())
          throw InternalError("stellar table dependency order broken");
        const auto& bad = rational ? sub->second.rational_bad : sub->second.smooth_bad;
        if (std::binary_search(bad.begin(), bad.end(), d.signature(inv))) return true;
      }
      return false;
    };
    for (int w : smooth_ids)
      if (!caught_by_proper(w, false)) {
        t.smooth_minimal.push_back(inv_mask(g.element(w)));
        t.smooth_minimal_words.push_back(lex_min_word(g.element(w)));
      }
    for (int w : rational_ids)
      if (!caught_by_proper(w, true)) {
        t.rational_minimal.push_back(inv_mask(g.element(w)));
        t.rational_minimal_words.push_back(lex_min_word(g.element(w)));
      }
    std::sort(t.smooth_minimal.begin(), t.smooth_minimal.end());
    std::sort(t.rational_minimal.begin(), t.rational_minimal.end());
    std::sort(t.smooth_minimal_words.begin(), t.smooth_minimal_words.end());
    std::sort(t.rational_minimal_words.begin(), t.rational_minimal_words.end());

    tbl.types.emplace(label, std::move(t));
  }

  // Self-checks: cardinalities and the hard-coded word lists.
  for (std::size_t i = 0; i < BadPatternTable::stellar_labels().size(); ++i) {
    const auto& label = BadPatternTable::stellar_labels()[i];
    const auto& t = tbl.types.at(label);
    if (static_cast<int>(t.smooth_bad.size()) != kSmoothCounts[i] ||
        static_cast<int>(t.rational_bad.size()) != kRationalCounts[i] ||
        static_cast<int>(t.smooth_minimal.size()) != kSmoothMinimalCounts[i] ||
        static_cast<int>(t.rational_minimal.size()) != kRationalMinimalCounts[i])
      throw InternalError("stellar table cardinality self-check failed for " + label);
    auto parsed = parse_type_name(label);
    const RootSystem& rs = root_system(parsed->first, parsed->second);
    for (int flavor = 0; flavor < 2; ++flavor) {
      std::vector<std::uint32_t> expected;
      for (const auto& word : theorem_words(label, flavor == 1))
        expected.push_back(inv_mask(from_word(rs, word)));
      std::sort(expected.begin(), expected.end());
      const auto& got = flavor == 1 ? t.rational_minimal : t.smooth_minimal;
      if (expected != got)
        throw InternalError("minimal pattern list disagrees with the known words for " + label);
    }
    if (!std::includes(t.smooth_bad.begin(), t.smooth_bad.end(), t.rational_bad.begin(),
                       t.rational_bad.end()))
      throw InternalError("rational bad set is not a subset of the smooth bad set");
  }
  return tbl;
}

}  // namespace

const BadPatternTable& build_bad_tables() {
  static const BadPatternTable tbl = compute_bad_tables();
  return tbl;
}

// ---------------------------------------------------------------------------
// Pattern classifiers.

namespace {

std::optional<PatternWitness> stellar_scan(const Element& w, bool rational) {
  const RootSystem& rs = *w.rs;
  const BadPatternTable& tbl = build_bad_tables();
  Bits inv = inversion_set(w);
  for (const auto& d : stellar_subsystems(rs)) {
    if (rational && (d.type_label == "B2" || d.type_label == "G2")) continue;
    const auto& t = tbl.types.at(d.type_label);
    const auto& bad = rational ? t.rational_minimal : t.smooth_minimal;
    std::uint32_t sig = d.signature(inv);
    if (std::binary_search(bad.begin(), bad.end(), sig)) {
      PatternWitness pw;
      pw.criterion = "stellar-pattern";
      pw.delta_type = d.type_label;
      for (int s : d.simples) pw.delta_simples.push_back(rs.pos[s]);
      pw.flattened_word = lex_min_word(flatten(w, d));
      return pw;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<PatternWitness> pattern_smooth(const Element& w) { return stellar_scan(w, false); }

std::optional<PatternWitness> pattern_rationally_smooth(const Element& w) {
  return stellar_scan(w, true);
}

std::optional<PatternWitness> embedded_smooth(const Element& w) {
  if (auto pw = has_embedded_pattern(
          w, {EmbeddingKind::B2, EmbeddingKind::A3, EmbeddingKind::D4}))
    return pw;
  if (!w.rs->simply_laced())
    return has_dual_embedded_pattern(w, {EmbeddingKind::A3, EmbeddingKind::D4});
  return std::nullopt;
}

std::optional<PatternWitness> embedded_rationally_smooth(const Element& w) {
  if (auto pw = has_embedded_pattern(w, {EmbeddingKind::A3, EmbeddingKind::D4})) return pw;
  if (!w.rs->simply_laced())
    return has_dual_embedded_pattern(w, {EmbeddingKind::A3, EmbeddingKind::D4});
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Fully commutative / abelian.

namespace {

const std::vector<Subsystem>& rank2_subsystems(const RootSystem& rs) {
  static std::map<const RootSystem*, std::vector<Subsystem>> reg;
  static std::mutex m;
  std::lock_guard<std::mutex> lock(m);
  auto it = reg.find(&rs);
  if (it == reg.end()) {
    std::vector<Subsystem> list;
    for (auto& s : enumerate_subsystems(rs, 2))
      if (s.rank == 2 && s.irreducible) list.push_back(std::move(s));
    it = reg.emplace(&rs, std::move(list)).first;
  }
  return it->second;
}

}  // namespace

bool is_fully_commutative(const Element& w) {
  Bits inv = inversion_set(w);
  for (const auto& d : rank2_subsystems(*w.rs))
    if (d.delta_plus.subset_of(inv)) return false;  // flattens onto the longest element
  return true;
}

bool is_fully_commutative_word_oracle(const Element& w, std::uint64_t word_budget) {
  const RootSystem& rs = *w.rs;
  std::vector<int> letters;  // reduced word, reversed
  std::uint64_t words = 0;

  auto has_long_braid = [&]() {
    int p = static_cast<int>(letters.size());
    for (int i = 0; i + 2 < p; ++i) {
      int a = letters[i], b = letters[i + 1];
      if (a == b) continue;
      int m = rs.coxeter_m(a, b);
      if (m < 3 || i + m > p) continue;
      bool alt = true;
      for (int k = 2; k < m; ++k)
        if (letters[i + k] != ((k % 2) ? b : a)) {
          alt = false;
          break;
        }
      if (alt) return true;
    }
    return false;
  };

  std::function<bool(const Element&)> dfs = [&](const Element& x) -> bool {
    if (x.len == 0) {
      if (++words > word_budget) throw CapExceeded("reduced word enumeration budget exceeded");
      return has_long_braid();
    }
    std::uint32_t m = right_descent_mask(x);
    while (m) {
      int node = std::countr_zero(m) + 1;
      m &= m - 1;
      letters.push_back(node);
      bool found = dfs(rmul_simple(x, node));
      letters.pop_back();
      if (found) return true;
    }
    return false;
  };
  return !dfs(w);
}

bool is_abelian(const Element& w) {
  const RootSystem& rs = *w.rs;
  Bits inv = inversion_set(w);
  std::vector<int> members;
  inv.for_each([&](int i) { members.push_back(i); });
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      int s = rs.sum_index(members[i], members[j]);
      if (s >= 0 && inv.test(s)) return false;
    }
  return true;
}

bool is_abelian_embedding_route(const Element& w) {
  // No A2-embedding may flatten w onto the long element: no pair of
  // positive roots with b1, b2, b1+b2 all inverted.
  const RootSystem& rs = *w.rs;
  Bits inv = inversion_set(w);
  int P = rs.num_positive();
  for (int b1 = 0; b1 < P; ++b1) {
    if (!inv.test(b1)) continue;
    for (int b2 = b1 + 1; b2 < P; ++b2) {
      if (!inv.test(b2)) continue;
      int s = rs.sum_index(b1, b2);
      if (s >= 0 && inv.test(s)) return false;
    }
  }
  return true;
}

}  // namespace stellar
