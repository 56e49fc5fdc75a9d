#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "stellar/bits.hpp"
#include "stellar/root_system.hpp"

namespace stellar {

// Thrown when an enumeration would exceed the configured element budget.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown by consistency checks that can only fire on an internal bug.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

constexpr std::uint64_t kDefaultCap = 10'000'000;

// A Weyl group element, stored as its action on the positive roots:
// act[b] is the signed 1-based index of w(pos[b]).  The length (= number
// of inverted positive roots) is cached.
struct Element {
  const RootSystem* rs = nullptr;
  std::vector<std::int16_t> act;
  int len = 0;

  bool operator==(const Element& o) const { return act == o.act; }
  bool is_identity() const { return len == 0; }
};

struct ElementHash {
  std::size_t operator()(const Element& e) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto a : e.act) {
      h ^= static_cast<std::uint16_t>(a);
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

Element identity_element(const RootSystem& rs);
Element simple_reflection(const RootSystem& rs, int node);      // 1-based
Element root_reflection(const RootSystem& rs, int pos_index);   // 0-based

Element mul(const Element& x, const Element& y);
Element inverse(const Element& x);
Element rmul_simple(const Element& x, int node);
Element lmul_simple(const Element& x, int node);
Element rmul_reflection(const Element& x, int pos_index);

// Product of simple reflections, word read left to right.
Element from_word(const RootSystem& rs, std::span<const int> word);

// Inversion set I(w): positive roots sent negative by w^{-1}.
Bits inversion_set(const Element& w);

// The unique element with the given inversion set, by greedy peeling of a
// simple root.  Throws std::domain_error when the bitset is not an
// inversion set.
Element element_from_inversion_set(const RootSystem& rs, Bits inv);

Element longest_element(const RootSystem& rs);

// Lexicographically smallest reduced word (greedy smallest left descent).
std::vector<int> lex_min_word(const Element& w);

std::uint32_t left_descent_mask(const Element& w);   // bit i-1 <-> node i
std::uint32_t right_descent_mask(const Element& w);

// Plain recursive Bruhat comparison; prefer WeylGroup::leq inside sweeps.
bool bruhat_leq(const Element& x, const Element& w);

// w = u * v with u in W_J and v having no left descents in J; lengths add.
// J is a bitmask of nodes (bit i-1 <-> node i).
std::pair<Element, Element> parabolic_decompose(const Element& w, std::uint32_t j_mask);

// Closure of the parabolic subgroup W_J under right multiplication.
std::vector<Element> subgroup_elements(const RootSystem& rs, std::uint32_t j_mask,
                                       std::uint64_t cap = kDefaultCap);

// Minimal-length representatives of the cosets W_J \ W.  Dispatches to the
// weight-orbit construction when the full group exceeds the cap, so E8
// quotients are reachable without enumerating W.
std::vector<Element> min_coset_reps(const RootSystem& rs, std::uint32_t j_mask,
                                    std::uint64_t cap = kDefaultCap);
std::vector<Element> min_coset_reps_orbit(const RootSystem& rs, std::uint32_t j_mask);

// All group elements, grouped by length, ties broken by action-table
// lexicographic order.  Deterministic across runs and thread counts.
std::vector<Element> enumerate_elements(const RootSystem& rs, std::uint64_t cap = kDefaultCap);

std::string word_to_string(std::span<const int> word);
std::vector<int> parse_word(const std::string& s);

// A fully enumerated Weyl group with dense element ids, multiplication
// tables and a memoized Bruhat order.  Ids are assigned in enumeration
// order, so id 0 is the identity and the last id is the longest element.
class WeylGroup {
 public:
  explicit WeylGroup(const RootSystem& rs, std::uint64_t cap = kDefaultCap);

  const RootSystem& rs() const { return *rs_; }
  int size() const { return static_cast<int>(elems_.size()); }
  const Element& element(int id) const { return elems_[id]; }
  int id_of(const Element& e) const;
  int length(int id) const { return elems_[id].len; }
  int longest() const { return size() - 1; }

  int rmul(int id, int node) const { return rmul_[id * rank_ + node - 1]; }
  int lmul(int id, int node) const { return lmul_[id * rank_ + node - 1]; }
  int inv(int id) const { return inv_[id]; }
  int mul_ids(int x, int y) const { return id_of(mul(elems_[x], elems_[y])); }
  std::uint32_t rdesc(int id) const { return rdesc_[id]; }
  std::uint32_t ldesc(int id) const { return ldesc_[id]; }

  // id of the reflection through the k-th positive root.
  int reflection_id(int pos_index) const { return refl_id_[pos_index]; }

  // id of s_a * x for a positive root index a (table built lazily; used by
  // Bruhat-graph sweeps).
  int lmul_reflection(int x, int pos_index) const;

  // Memoized Bruhat order; safe for concurrent use.
  bool leq(int x, int y) const;

  // Parabolic machinery (masks as in parabolic_decompose).
  const std::vector<int>& subgroup(std::uint32_t j_mask) const;
  std::vector<int> quotient_reps(std::uint32_t j_mask) const;
  std::pair<int, int> decompose(int w, std::uint32_t j_mask) const;

  // The unique Bruhat-maximal element of W_J below w; verifies that the
  // maximum dominates every other member of {u in W_J : u <= w}.
  int max_parabolic_below(int w, std::uint32_t j_mask) const;

  // Bruhat memo cache I/O (optional accelerator, see --cache-dir).
  bool load_bruhat_cache(const std::string& path) const;
  bool save_bruhat_cache(const std::string& path) const;

 private:
  const RootSystem* rs_;
  int rank_;
  std::vector<Element> elems_;
  std::unordered_map<Element, int, ElementHash> ids_;
  std::vector<int> rmul_, lmul_, inv_;
  std::vector<std::uint32_t> rdesc_, ldesc_;
  std::vector<int> refl_id_;
  mutable std::vector<std::atomic<std::uint8_t>> leq_;  // 0 unknown, 1 false, 2 true
  mutable std::map<std::uint32_t, std::vector<int>> subgroups_;
  mutable std::mutex subgroup_mutex_;
  mutable std::vector<int> lrefl_;  // size * num_positive, built on first use
  mutable std::once_flag lrefl_once_;
};

// Shared per-system WeylGroup instances (built once, then read-only).
const WeylGroup& weyl_group(const RootSystem& rs, std::uint64_t cap = kDefaultCap);

}  // namespace stellar
