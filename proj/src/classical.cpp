#include "stellar/classical.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cassert>
#include <map>
#include <mutex>
#include <numeric>

#include "stellar/criteria.hpp"
#include "stellar/parallel.hpp"

namespace stellar {

SignedPerm identity_perm(int n) {
  SignedPerm w(n);
  std::iota(w.begin(), w.end(), 1);
  return w;
}

int one_line_size(Type t, int rank) { return t == Type::A ? rank + 1 : rank; }

void validate_one_line(const SignedPerm& w, Type t) {
  int n = static_cast<int>(w.size());
  std::vector<char> seen(n + 1, 0);
  int negatives = 0;
  for (int x : w) {
    int a = std::abs(x);
    if (a < 1 || a > n || seen[a]) throw std::invalid_argument("malformed one-line notation");
    seen[a] = 1;
    if (x < 0) ++negatives;
  }
  if (t == Type::A && negatives > 0)
    throw std::invalid_argument("type A elements carry no signs");
  if (t == Type::D && negatives % 2 != 0)
    throw std::invalid_argument("type D elements need an even number of signs");
}

SignedPerm classical_flatten(std::span<const int> seq) {
  int k = static_cast<int>(seq.size());
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return std::abs(seq[i]) < std::abs(seq[j]); });
  SignedPerm out(k);
  for (int r = 0; r < k; ++r) {
    int i = order[r];
    if (seq[i] == 0 || (r > 0 && std::abs(seq[order[r - 1]]) == std::abs(seq[i])))
      throw std::invalid_argument("flatten needs nonzero entries of distinct magnitude");
    out[i] = seq[i] > 0 ? r + 1 : -(r + 1);
  }
  return out;
}

namespace {

// Right multiplication by the simple reflection of the given node.
void apply_node(SignedPerm& w, Type t, int node) {
  int n = static_cast<int>(w.size());
  int rank = (t == Type::A) ? n - 1 : n;
  if (t != Type::A && node == rank) {
    if (t == Type::D) {
      int a = w[0], b = w[1];
      w[0] = -b;
      w[1] = -a;
    } else {
      w[0] = -w[0];
    }
  } else {
    int p = n - node;  // 1-based position pair (p, p+1)
    std::swap(w[p - 1], w[p]);
  }
}

// Lowest right-descent node, or 0 at the identity.
int first_descent(const SignedPerm& w, Type t) {
  int n = static_cast<int>(w.size());
  int rank = (t == Type::A) ? n - 1 : n;
  for (int node = 1; node <= rank; ++node) {
    if (t != Type::A && node == rank) {
      if (t == Type::D ? (w[0] + w[1] < 0) : (w[0] < 0)) return node;
    } else {
      int p = n - node;
      if (w[p - 1] > w[p]) return node;
    }
  }
  return 0;
}

}  // namespace

SignedPerm word_to_signed(int n, Type t, std::span<const int> word) {
  SignedPerm w = identity_perm(n);
  for (int a : word) apply_node(w, t, a);
  return w;
}

std::vector<int> signed_to_word(const SignedPerm& w, Type t) {
  SignedPerm cur = w;
  std::vector<int> rev;
  for (;;) {
    int node = first_descent(cur, t);
    if (node == 0) break;
    rev.push_back(node);
    apply_node(cur, t, node);
  }
  if (cur != identity_perm(static_cast<int>(w.size())))
    throw std::invalid_argument("one-line element did not reduce to the identity");
  std::reverse(rev.begin(), rev.end());
  return rev;
}

SignedPerm element_to_signed(const Element& e) {
  const RootSystem& rs = *e.rs;
  return word_to_signed(one_line_size(rs.type, rs.rank), rs.type, lex_min_word(e));
}

Element signed_to_element(const RootSystem& rs, const SignedPerm& w) {
  validate_one_line(w, rs.type);
  if (static_cast<int>(w.size()) != one_line_size(rs.type, rs.rank))
    throw std::invalid_argument("one-line length does not match the rank");
  auto word = signed_to_word(w, rs.type);
  return from_word(rs, word);
}

// ---------------------------------------------------------------------------
// Bad pattern tables for the subsequence test.

namespace {

// Patterns of length <= 4 are encoded entrywise into nibbles:
// (|b|-1) | (negative ? 8 : 0), so a 16-bit index addresses a bitmap.
std::uint32_t encode_pattern(const SignedPerm& p) {
  std::uint32_t code = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::uint32_t nib = static_cast<std::uint32_t>(std::abs(p[i]) - 1);
    if (p[i] < 0) nib |= 8;
    code |= nib << (4 * i);
  }
  return code;
}

struct TypeTables {
  // [k-1][flavor] -> bitmap over encoded patterns of length k.
  std::array<std::array<std::vector<bool>, 2>, 4> bad;
  std::array<std::array<bool, 2>, 4> any{};  // quick skip for empty tables
};

// Inversion mask of a signed permutation on the D_k roots, read off the
// coordinate action.
Element d_element_of(const RootSystem& rs_d, const SignedPerm& b) {
  int k = static_cast<int>(b.size());
  SignedPerm binv(k);
  for (int j = 1; j <= k; ++j) {
    int img = b[j - 1];
    binv[std::abs(img) - 1] = img > 0 ? j : -j;
  }
  auto apply = [&](const SignedPerm& f, const Vec& v) {
    Vec r{};
    for (int j = 0; j < k; ++j) {
      if (v[j] == 0) continue;
      int img = f[j];
      r[std::abs(img) - 1] += (img > 0 ? v[j] : -v[j]);
    }
    return r;
  };
  Bits mask;
  for (int m = 0; m < rs_d.num_positive(); ++m) {
    Vec u = apply(binv, rs_d.pos[m]);
    // Negative exactly when the highest-index coordinate is negative.
    int hi = k - 1;
    while (hi > 0 && u[hi] == 0) --hi;
    assert(u[hi] != 0);
    if (u[hi] < 0) mask.set(m);
  }
  return element_from_inversion_set(rs_d, mask);
}

const TypeTables& type_tables(Type t) {
  static std::map<char, TypeTables> reg;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = reg.find(static_cast<char>(t));
  if (it != reg.end()) return it->second;

  TypeTables tt;
  for (int k = 1; k <= 4; ++k) {
    for (int flavor = 0; flavor < 2; ++flavor)
      tt.bad[k - 1][flavor].assign(1u << (4 * k), false);

    auto mark = [&](const SignedPerm& p, bool smooth, bool rational) {
      if (!smooth) {
        tt.bad[k - 1][0][encode_pattern(p)] = true;
        tt.any[k - 1][0] = true;
      }
      if (!rational) {
        tt.bad[k - 1][1][encode_pattern(p)] = true;
        tt.any[k - 1][1] = true;
      }
    };

    if (t == Type::A) {
      if (k < 2) continue;
      const WeylGroup& g = weyl_group(root_system(Type::A, k - 1));
      for (int w = 0; w < g.size(); ++w)
        mark(element_to_signed(g.element(w)), is_smooth_oracle(g, w),
             is_rationally_smooth_oracle(g, w));
    } else if (t == Type::C && k == 2) {
      // C2 collapses to the B2 system, but the pair verdicts of a
      // C2-geometry coordinate subsystem are the node swap of B2's:
      // the sign-flip generator is the long root there.
      const RootSystem& rs = root_system(Type::B, 2);
      const WeylGroup& g = weyl_group(rs);
      for (int w = 0; w < g.size(); ++w) {
        SignedPerm b = element_to_signed(g.element(w));
        std::vector<int> word = signed_to_word(b, Type::C);
        for (int& a : word) a = 3 - a;  // swap nodes 1 <-> 2
        int swapped = g.id_of(from_word(rs, word));
        mark(b, is_smooth_oracle(g, swapped), is_rationally_smooth_oracle(g, swapped));
      }
    } else if (t == Type::B || t == Type::C) {
      if (k < 2) continue;
      const WeylGroup& g = weyl_group(root_system(t, k));
      for (int w = 0; w < g.size(); ++w)
        mark(element_to_signed(g.element(w)), is_smooth_oracle(g, w),
             is_rationally_smooth_oracle(g, w));
    } else {  // D: subsequences carry arbitrary sign parity
      if (k < 3) continue;
      const RootSystem& rs_d = root_system(Type::D, k);
      const WeylGroup& gd = weyl_group(rs_d);
      const WeylGroup& gb = weyl_group(root_system(Type::B, k));
      for (int w = 0; w < gb.size(); ++w) {
        SignedPerm b = element_to_signed(gb.element(w));
        int sigma = gd.id_of(d_element_of(rs_d, b));
        mark(b, is_smooth_oracle(gd, sigma), is_rationally_smooth_oracle(gd, sigma));
      }
    }
  }
  return reg.emplace(static_cast<char>(t), std::move(tt)).first->second;
}

}  // namespace

std::optional<ClassicalWitness> classical_pattern_test(const SignedPerm& w, Type t,
                                                       bool rational) {
  validate_one_line(w, t);
  const TypeTables& tt = type_tables(t);
  int n = static_cast<int>(w.size());
  int flavor = rational ? 1 : 0;

  int idx[4];
  int seq[4];
  for (int k = 1; k <= std::min(4, n); ++k) {
    if (!tt.any[k - 1][flavor]) continue;
    const auto& bitmap = tt.bad[k - 1][flavor];
    // Iterate k-subsets of positions in lexicographic order.
    for (int i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      for (int i = 0; i < k; ++i) seq[i] = w[idx[i]];
      SignedPerm fl = classical_flatten(std::span<const int>(seq, k));
      if (bitmap[encode_pattern(fl)]) {
        ClassicalWitness cw;
        for (int i = 0; i < k; ++i) cw.positions.push_back(idx[i] + 1);
        cw.pattern = fl;
        return cw;
      }
      int i = k - 1;
      while (i >= 0 && idx[i] == n - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return std::nullopt;
}

ClassicalSweep classical_sweep(Type t, int n, bool rational, bool collect) {
  std::vector<SignedPerm> perms;
  SignedPerm base = identity_perm(n);
  do {
    perms.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));

  int sign_bits = (t == Type::A) ? 0 : n;
  std::uint32_t sign_cap = 1u << sign_bits;

  struct Slot {
    std::uint64_t smooth = 0;
    std::vector<SignedPerm> list;
  };
  std::vector<Slot> slots(perms.size());

  // Warm the pattern tables before going parallel.
  (void)type_tables(t);

  parallel_for(perms.size(), [&](std::size_t pi) {
    SignedPerm w = perms[pi];
    for (std::uint32_t signs = 0; signs < sign_cap; ++signs) {
      if (t == Type::D && (std::popcount(signs) % 2) != 0) continue;
      for (int j = 0; j < n; ++j) {
        int a = std::abs(w[j]);
        w[j] = (signs >> j) & 1 ? -a : a;
      }
      if (!classical_pattern_test(w, t, rational)) {
        ++slots[pi].smooth;
        if (collect) slots[pi].list.push_back(w);
      }
    }
  });

  ClassicalSweep out;
  for (auto& s : slots) {
    out.smooth += s.smooth;
    if (collect)
      out.smooth_list.insert(out.smooth_list.end(), s.list.begin(), s.list.end());
  }
  out.total = weyl_order(t, t == Type::A ? n - 1 : n);
  return out;
}

}  // namespace stellar
