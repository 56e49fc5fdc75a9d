#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stellar/bruhat_poincare.hpp"
#include "stellar/embeddings.hpp"
#include "stellar/subsystems.hpp"
#include "stellar/weyl.hpp"

namespace stellar {

using BigInt = boost::multiprecision::cpp_int;

// Values K_{w,v}(r) of the nil-Hecke structure polynomials at the point r
// with a_i(r) = 1, computed by the descent recursion
//   K_{w,w} = prod_{a in I(w)} a(r),
//   K_{w,v} = K_{ws_i,v}                                   if v < v s_i,
//             K_{ws_i,v} + (w s_i a_i)(r) * K_{ws_i,v s_i} if v > v s_i,
// descending on the lowest-numbered right descent of w, memoized per
// group.  Values are exact nonnegative integers.
class KumarTable {
 public:
  explicit KumarTable(const WeylGroup& g);

  // Requires v <= w (throws std::domain_error otherwise).
  BigInt value(int w, int v);

  // Same recursion descending on a caller-chosen right descent; used to
  // spot-check independence of the descent choice.
  BigInt value_via_descent(int w, int v, int node);

  const WeylGroup& group() const { return *g_; }

 private:
  BigInt value_inner(int w, int v);
  const WeylGroup* g_;
  std::vector<BigInt> diag_;  // K_{w,w}
  std::map<std::pair<int, int>, BigInt> memo_;
  std::mutex mutex_;
};

KumarTable& kumar_table(const WeylGroup& g);

// Z(w,v) = {a in Phi+ : NOT (v <= s_a w)}.
std::vector<int> z_set(const WeylGroup& g, int w, int v);

// Smoothness at the identity point: the reflection count
// #{a in Phi+ : s_a <= w} must equal l(w) and K_{w0, w w0}(r) must equal
// prod_{a in Z(w0, w w0)} a(r).
bool is_smooth_oracle(const WeylGroup& g, int w);

// Palindromy of the Poincare polynomial (Carrell-Peterson).
bool is_rationally_smooth_oracle(const WeylGroup& g, int w);

// Forbidden-pattern tables for the six stellar types, bootstrapped from
// the oracles over the full small groups and cross-checked against the
// hard-coded minimal word lists (startup fails loudly on any mismatch).
struct StellarTypeTable {
  std::string label;
  std::vector<std::uint32_t> smooth_bad;        // inversion signatures, sorted
  std::vector<std::uint32_t> rational_bad;      // subset of smooth_bad
  std::vector<std::uint32_t> smooth_minimal;    // irredundant under proper stellar patterns
  std::vector<std::uint32_t> rational_minimal;
  std::vector<std::vector<int>> smooth_minimal_words;    // lex-min words, sorted
  std::vector<std::vector<int>> rational_minimal_words;
};

struct BadPatternTable {
  std::map<std::string, StellarTypeTable> types;  // keyed by label B2..D4
  static const std::vector<std::string>& stellar_labels();
};

const BadPatternTable& build_bad_tables();

// Pattern classifiers (Theorem-style stellar subsystem scan, minimal
// lists).  Empty result means no forbidden pattern, i.e. smooth.
std::optional<PatternWitness> pattern_smooth(const Element& w);
std::optional<PatternWitness> pattern_rationally_smooth(const Element& w);

// Embedded-pattern classifiers: primal B2/A3/D4 for smoothness (dual B2
// never), primal+dual A3/D4 for both flavors.  Dual scans are skipped for
// simply-laced ambients where they duplicate the primal ones.
std::optional<PatternWitness> embedded_smooth(const Element& w);
std::optional<PatternWitness> embedded_rationally_smooth(const Element& w);

// Fully commutative elements: no rank-2 irreducible subsystem flattens w
// onto its longest element.  The reduced-word oracle checks that no
// reduced word contains an alternating factor of full Coxeter length.
bool is_fully_commutative(const Element& w);
bool is_fully_commutative_word_oracle(const Element& w, std::uint64_t word_budget = 5'000'000);

// Abelian elements: the inversion set contains no triple a, b, a+b.
// The embedding route scans A2-embeddings for full-flattening instead.
bool is_abelian(const Element& w);
bool is_abelian_embedding_route(const Element& w);

}  // namespace stellar
