#include "stellar/subsystems.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <functional>
#include <map>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

namespace stellar {

namespace {

// Incremental span membership: seed rows kept in fraction-free echelon form.
struct SpanTester {
  std::vector<Vec> rows;  // echelon, nonzero
  int dim;

  explicit SpanTester(int d) : dim(d) {}

  // Reduce v against the rows; returns the residue.
  Vec residue(Vec v) const {
    for (const auto& r : rows) {
      int lead = 0;
      while (lead < dim && r[lead] == 0) ++lead;
      if (lead == dim) continue;
      if (v[lead] == 0) continue;
      std::int64_t a = r[lead], b = v[lead];
      std::int64_t g = std::gcd(a, b);
      std::int64_t ma = b / g, mb = a / g;
      for (int c = 0; c < dim; ++c) v[c] = v[c] * mb - r[c] * ma;
    }
    return v;
  }

  bool contains(const Vec& v) const { return is_zero(residue(v)); }

  // Returns false if v was already in the span.
  bool add(const Vec& v) {
    Vec res = residue(v);
    if (is_zero(res)) return false;
    rows.push_back(res);
    std::sort(rows.begin(), rows.end(), [this](const Vec& a, const Vec& b) {
      int la = 0, lb = 0;
      while (la < dim && a[la] == 0) ++la;
      while (lb < dim && b[lb] == 0) ++lb;
      return la < lb;
    });
    return true;
  }

  int rank() const { return static_cast<int>(rows.size()); }
};

// Candidate catalog types for an irreducible component of the given rank.
std::vector<std::pair<Type, int>> catalog_candidates(int rank) {
  switch (rank) {
    case 1: return {{Type::A, 1}};
    case 2: return {{Type::A, 2}, {Type::B, 2}, {Type::G, 2}};
    case 3: return {{Type::A, 3}, {Type::B, 3}, {Type::C, 3}};
    case 4: return {{Type::A, 4}, {Type::B, 4}, {Type::C, 4}, {Type::D, 4}, {Type::F, 4}};
    case 5: return {{Type::A, 5}, {Type::B, 5}, {Type::C, 5}, {Type::D, 5}};
    case 6: return {{Type::A, 6}, {Type::B, 6}, {Type::C, 6}, {Type::D, 6}, {Type::E, 6}};
    case 7: return {{Type::A, 7}, {Type::B, 7}, {Type::C, 7}, {Type::D, 7}, {Type::E, 7}};
    case 8: return {{Type::A, 8}, {Type::B, 8}, {Type::C, 8}, {Type::D, 8}, {Type::E, 8}};
  }
  return {};
}

// Backtracking match of a Cartan matrix onto a catalog one; fills `perm`
// with canonical node k -> input position, preferring the lexicographically
// smallest assignment so that identity layouts map to themselves.
bool match_cartan(const std::vector<std::vector<std::int64_t>>& c,
                  const RootSystem& target, std::vector<int>& perm) {
  int n = static_cast<int>(c.size());
  std::vector<int> assign(n, -1);
  std::vector<char> used(n, 0);
  auto consistent = [&](int k, int p) {
    for (int j = 0; j < k; ++j) {
      if (target.cartan[k][j] != c[p][assign[j]]) return false;
      if (target.cartan[j][k] != c[assign[j]][p]) return false;
    }
    return target.cartan[k][k] == c[p][p];
  };
  std::function<bool(int)> rec = [&](int k) {
    if (k == n) return true;
    for (int p = 0; p < n; ++p) {
      if (used[p] || !consistent(k, p)) continue;
      used[p] = 1;
      assign[k] = p;
      if (rec(k + 1)) return true;
      used[p] = 0;
      assign[k] = -1;
    }
    return false;
  };
  if (!rec(0)) return false;
  perm = assign;
  return true;
}

}  // namespace

TypeClassification classify_simples(const RootSystem& ambient,
                                    const std::vector<int>& simple_pos) {
  int n = static_cast<int>(simple_pos.size());
  std::vector<std::vector<std::int64_t>> c(n, std::vector<std::int64_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Vec& a = ambient.pos[simple_pos[i]];
      const Vec& b = ambient.pos[simple_pos[j]];
      std::int64_t num = 2 * dot(a, b);
      std::int64_t den = dot(b, b);
      if (num % den != 0) throw InternalError("non-integral Cartan entry in subsystem");
      c[i][j] = num / den;
    }

  // Connected components of the diagram.
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (int i = 0; i < n; ++i) {
    if (comp[i] >= 0) continue;
    std::vector<int> stack{i};
    comp[i] = ncomp;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int j = 0; j < n; ++j)
        if (comp[j] < 0 && c[x][j] != 0) {
          comp[j] = ncomp;
          stack.push_back(j);
        }
    }
    ++ncomp;
  }

  struct Component {
    std::string label;
    std::vector<int> order;  // canonical node k -> input position
  };
  std::vector<Component> parts(ncomp);
  for (int k = 0; k < ncomp; ++k) {
    std::vector<int> members;
    for (int i = 0; i < n; ++i)
      if (comp[i] == k) members.push_back(i);
    int m = static_cast<int>(members.size());
    std::vector<std::vector<std::int64_t>> sub(m, std::vector<std::int64_t>(m));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) sub[i][j] = c[members[i]][members[j]];
    bool found = false;
    for (auto [t, r] : catalog_candidates(m)) {
      const RootSystem& cat = root_system(t, r);
      std::vector<int> perm;
      if (match_cartan(sub, cat, perm)) {
        parts[k].label = cat.label;
        parts[k].order.resize(m);
        for (int q = 0; q < m; ++q) parts[k].order[q] = members[perm[q]];
        found = true;
        break;
      }
    }
    if (!found) throw InternalError("unclassifiable Cartan matrix");
  }

  std::sort(parts.begin(), parts.end(),
            [](const Component& a, const Component& b) { return a.label < b.label; });

  TypeClassification out;
  out.irreducible = (ncomp == 1);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k) out.label += "x";
    out.label += parts[k].label;
    for (int p : parts[k].order) out.canonical_order.push_back(p);
  }
  return out;
}

Subsystem span_closure(const RootSystem& rs, const std::vector<int>& seed_pos) {
  if (seed_pos.empty()) throw std::invalid_argument("span_closure: empty seed set");
  SpanTester span(rs.dim);
  for (int s : seed_pos) span.add(rs.pos[s]);

  Subsystem d;
  d.ambient = &rs;
  std::vector<int> members;
  for (int k = 0; k < rs.num_positive(); ++k)
    if (span.contains(rs.pos[k])) {
      d.delta_plus.set(k);
      members.push_back(k);
    }
  d.rank = span.rank();

  // Simples: members that are not the sum of two members.
  std::vector<int> simples;
  for (int m : members) {
    bool decomposable = false;
    for (int a : members) {
      if (rs.height[a] >= rs.height[m]) continue;
      int b = rs.signed_index(sub(rs.pos[m], rs.pos[a]));
      if (b > 0 && d.delta_plus.test(b - 1)) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) simples.push_back(m);
  }
  if (static_cast<int>(simples.size()) != d.rank)
    throw InternalError("subsystem simple count differs from rank");

  auto cls = classify_simples(rs, simples);
  d.type_label = cls.label;
  d.irreducible = cls.irreducible;
  d.simples.resize(simples.size());
  for (std::size_t k = 0; k < simples.size(); ++k) d.simples[k] = simples[cls.canonical_order[k]];

  // Identify positive roots with the catalog system of the same label.
  if (d.irreducible && d.rank <= 4) {
    auto parsed = parse_type_name(d.type_label);
    const RootSystem& abs_rs = root_system(parsed->first, parsed->second);
    d.abstract_rs = &abs_rs;
    d.abs_to_ambient.resize(abs_rs.num_positive());
    for (int m = 0; m < abs_rs.num_positive(); ++m) {
      Vec v{};
      for (int i = 0; i < abs_rs.rank; ++i)
        v = add(v, scale(rs.pos[d.simples[i]], abs_rs.coeff[m][i]));
      int idx = rs.signed_index(v);
      if (idx <= 0 || !d.delta_plus.test(idx - 1))
        throw InternalError("subsystem/catalog root mismatch");
      d.abs_to_ambient[m] = idx - 1;
    }
    if (abs_rs.num_positive() != d.delta_plus.count())
      throw InternalError("subsystem size differs from catalog");
  }
  return d;
}

std::uint32_t Subsystem::signature(const Bits& inv_w) const {
  std::uint32_t sig = 0;
  for (std::size_t m = 0; m < abs_to_ambient.size(); ++m)
    if (inv_w.test(abs_to_ambient[m])) sig |= (1u << m);
  return sig;
}

std::vector<Subsystem> enumerate_subsystems(const RootSystem& rs, int max_rank,
                                            std::uint64_t budget) {
  std::vector<Subsystem> out;
  std::unordered_set<Bits, BitsHash> seen;
  int P = rs.num_positive();
  std::uint64_t closures = 0;

  std::vector<int> subset;
  auto rec = [&](auto&& self, int start, int k) -> void {
    if (k == 0) {
      if (++closures > budget) throw CapExceeded("subsystem enumeration budget exceeded");
      Subsystem d = span_closure(rs, subset);
      if (d.rank <= max_rank && seen.insert(d.delta_plus).second) out.push_back(std::move(d));
      return;
    }
    for (int i = start; i <= P - k; ++i) {
      subset.push_back(i);
      self(self, i + 1, k - 1);
      subset.pop_back();
    }
  };
  for (int k = 1; k <= max_rank; ++k) rec(rec, 0, k);
  return out;
}

bool is_stellar(const Subsystem& s) {
  if (!s.irreducible) return false;
  return s.type_label == "B2" || s.type_label == "G2" || s.type_label == "A3" ||
         s.type_label == "B3" || s.type_label == "C3" || s.type_label == "D4";
}

const std::vector<Subsystem>& stellar_subsystems(const RootSystem& rs) {
  static std::map<const RootSystem*, std::vector<Subsystem>> reg;
  static std::mutex m;
  std::lock_guard<std::mutex> lock(m);
  auto it = reg.find(&rs);
  if (it == reg.end()) {
    std::vector<Subsystem> stellar;
    for (auto& s : enumerate_subsystems(rs, 4))
      if (is_stellar(s)) stellar.push_back(std::move(s));
    it = reg.emplace(&rs, std::move(stellar)).first;
  }
  return it->second;
}

Element flatten(const Element& w, const Subsystem& delta) {
  if (delta.abstract_rs == nullptr)
    throw std::invalid_argument("flatten: subsystem has no catalog identification");
  Bits inv = inversion_set(w);
  Bits abs_bits;
  for (std::size_t m = 0; m < delta.abs_to_ambient.size(); ++m)
    if (inv.test(delta.abs_to_ambient[m])) abs_bits.set(static_cast<int>(m));
  try {
    return element_from_inversion_set(*delta.abstract_rs, abs_bits);
  } catch (const std::domain_error&) {
    throw InternalError("flatten: restricted set is not an inversion set");
  }
}

std::optional<PatternWitness> contains_pattern(const Element& w, const std::string& stellar_type,
                                               const std::vector<std::uint32_t>& bad_set) {
  const RootSystem& rs = *w.rs;
  Bits inv = inversion_set(w);
  for (const auto& d : stellar_subsystems(rs)) {
    if (d.type_label != stellar_type) continue;
    std::uint32_t sig = d.signature(inv);
    if (std::binary_search(bad_set.begin(), bad_set.end(), sig)) {
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

std::optional<ParabolicConjugation> conjugate_to_parabolic(const WeylGroup& g,
                                                           const Subsystem& delta) {
  const RootSystem& rs = g.rs();
  std::vector<int> dsimp = delta.simples;
  std::sort(dsimp.begin(), dsimp.end());
  std::uint32_t full = (1u << rs.rank) - 1;
  for (std::uint32_t j = 0; j <= full; ++j) {
    if (std::popcount(j) != static_cast<int>(dsimp.size())) continue;
    std::vector<int> target;
    for (int i = 1; i <= rs.rank; ++i)
      if (j & (1u << (i - 1))) target.push_back(rs.simple_pos[i - 1]);
    std::sort(target.begin(), target.end());
    for (int v = 0; v < g.size(); ++v) {
      const Element& ev = g.element(v);
      std::vector<int> image;
      image.reserve(dsimp.size());
      bool ok = true;
      for (int s : dsimp) {
        std::int16_t im = ev.act[s];
        if (im < 0) {
          ok = false;
          break;
        }
        image.push_back(im - 1);
      }
      if (!ok) continue;
      std::sort(image.begin(), image.end());
      if (image == target) return ParabolicConjugation{j, ev};
    }
  }
  return std::nullopt;
}

}  // namespace stellar
