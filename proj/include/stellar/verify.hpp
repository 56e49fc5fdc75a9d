#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stellar/classical.hpp"
#include "stellar/criteria.hpp"

namespace stellar {

// Per-element verdicts from every applicable method, used by the
// cross-validation sweeps.
struct CrossvalResult {
  std::uint64_t total = 0;
  std::uint64_t smooth = 0;            // oracle verdicts
  std::uint64_t rationally_smooth = 0;
  bool all_agree = true;
  int first_disagreement = -1;         // element id
  std::string disagreement_note;
};

// Runs, over the whole group: the Kumar smoothness oracle, Poincare
// palindromy, Bruhat-graph regularity, both pattern classifiers, the
// embedded classifiers and (classical types) the one-line subsequence
// test, and compares them all.
CrossvalResult crossval_group(Type t, int rank, std::uint64_t cap = kDefaultCap);

// Deterministic exercise of the large-group sweep machinery on E8:
// products u*v with u a smooth parabolic D7 element and v a minimal coset
// representative.  Singular products must show an asymmetry within the
// first five Poincare coefficients; smooth products must stay symmetric
// through depth two.
struct E8SweepReport {
  int quotient_size = 0;       // minimal coset representatives
  int smooth_d7 = 0;           // smooth elements of W(D7)
  std::uint64_t samples = 0;
  std::uint64_t singular = 0;
  int max_asymmetry_depth = 0;
  bool all_consistent = true;
  std::string note;
};

E8SweepReport e8_sampled_sweep(std::uint64_t nsamples, std::uint64_t seed = 20030728,
                               bool full_sweep = false);

// Bounded Poincare coefficient probes for groups too large to enumerate.
// bottom_coefficient counts {v <= w : l(v) = k}; top_coefficient counts
// {v <= w : l(v) = l(w) - k} by iterated coatom expansion.
std::int64_t bottom_coefficient(const Element& w, int k);
std::int64_t top_coefficient(const Element& w, int k, std::uint64_t level_cap = 2'000'000);

// Least k in [1, max_depth] with a top/bottom coefficient mismatch.
std::optional<int> bounded_asymmetry_depth(const Element& w, int max_depth);

}  // namespace stellar
