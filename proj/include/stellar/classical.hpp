#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "stellar/root_system.hpp"
#include "stellar/weyl.hpp"

namespace stellar {

// One-line notation for classical Weyl groups: w maps e_j to
// sign(w[j-1]) * e_{|w[j-1]|}.  Type A elements carry no signs, type D
// elements an even number of negative entries.
using SignedPerm = std::vector<int>;

SignedPerm identity_perm(int n);

// Throws std::invalid_argument on malformed input for the type.
void validate_one_line(const SignedPerm& w, Type t);

// Flattening of a sequence of distinct-magnitude nonzero values: the unique
// signed permutation with the same signs and the same magnitude order.
SignedPerm classical_flatten(std::span<const int> seq);

// Word/one-line conversions in the realization used by this library
// (node i < n swaps positions n-i, n-i+1; node n acts on position 1).
SignedPerm word_to_signed(int n, Type t, std::span<const int> word);
std::vector<int> signed_to_word(const SignedPerm& w, Type t);

// Number of one-line letters for a group of the given rank (rank+1 for A).
int one_line_size(Type t, int rank);

// Round trips with the root-system realization.
SignedPerm element_to_signed(const Element& e);
Element signed_to_element(const RootSystem& rs, const SignedPerm& w);

struct ClassicalWitness {
  std::vector<int> positions;  // 1-based subsequence positions
  SignedPerm pattern;          // flattened pattern found in the bad table
};

// Subsequence pattern test: flattens every subsequence of length <= 4 and
// consults the per-type bad tables (bootstrapped from the rank <= 4
// groups).  Empty result means smooth (or rationally smooth).
std::optional<ClassicalWitness> classical_pattern_test(const SignedPerm& w, Type t,
                                                       bool rational);

struct ClassicalSweep {
  std::uint64_t total = 0;
  std::uint64_t smooth = 0;
  std::vector<SignedPerm> smooth_list;  // filled when collect is set
};

// Whole-group sweep of the classical test over W(t_n) in one-line form.
ClassicalSweep classical_sweep(Type t, int n, bool rational, bool collect);

}  // namespace stellar
