#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "stellar/bits.hpp"
#include "stellar/linalg.hpp"

namespace stellar {

enum class Type : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

std::string type_name(Type t, int rank);
std::optional<std::pair<Type, int>> parse_type_name(const std::string& s);

// Order of the Weyl group of the given finite type.
std::uint64_t weyl_order(Type t, int rank);

// Number of positive roots of the given finite type.
int positive_root_count(Type t, int rank);

// A finite crystallographic root system with exact integer coordinates.
//
// Realizations: the classical types A/B/C/D use the basis in which the
// simple roots, listed by increasing node number, are
//   e_n - e_{n-1}, ..., e_2 - e_1, and then e_1 (type B), 2e_1 (type C),
//   or e_1 + e_2 (type D),
// so that one-line signed-permutation conventions come out naturally and
// the node numbering agrees with the standard Bourbaki diagrams (the short
// root of B_n is node n, the long root of C_n is node n, the triple point
// of D_n is node n-2).  E and F use the standard coordinates scaled by 2 to
// clear half-integers; G2 sits in the sum-zero hyperplane of Z^3.
//
// Positive roots are indexed from 0 in height order, ties broken
// lexicographically on coordinates.  This ordering is part of the external
// contract: inversion-set bit positions refer to it.  Roots are addressed
// by signed 1-based indices: +k / -k for the k-th positive root and its
// negative.
class RootSystem {
 public:
  Type type;
  int rank = 0;
  int dim = 0;          // ambient dimension
  std::string label;    // canonical name, e.g. "B3" (C2 is reported as B2)

  std::vector<Vec> simple;                  // by node, simple[i] = node i+1
  std::vector<Vec> pos;                     // positive roots in index order
  std::vector<int> height;                  // height[k] = coefficient sum of pos[k]
  std::vector<std::array<std::int16_t, 8>> coeff;  // pos[k] over the simple basis
  std::vector<int> simple_pos;              // node -> positive-root index
  std::array<std::array<std::int64_t, 8>, 8> gram{};    // (a_i, a_j)
  std::array<std::array<std::int64_t, 8>, 8> cartan{};  // 2(a_i,a_j)/(a_j,a_j)

  int num_positive() const { return static_cast<int>(pos.size()); }

  // Signed index of an arbitrary root vector: +k, -k, or 0 if not a root.
  int signed_index(const Vec& v) const;

  Vec root_vec(int signed_idx) const;

  // refl(a, b): signed index of s_{pos[a]}(pos[b]).
  std::int16_t refl(int a, int b) const { return refl_[a * num_positive() + b]; }

  // Positive index of pos[a] + pos[b], or -1 when the sum is not a
  // positive root.
  std::int16_t sum_index(int a, int b) const { return sum_[a * num_positive() + b]; }

  // Coxeter exponent m(i,j) between two nodes (1-based), read off the
  // Cartan matrix: 2, 3, 4 or 6.
  int coxeter_m(int i, int j) const;

  bool simply_laced() const;

  // True when the two nodes are adjacent in the Dynkin diagram.
  bool adjacent(int i, int j) const { return cartan[i - 1][j - 1] != 0; }

  // One root per line, space-separated integer coordinates, index order.
  std::string serialize_positive_roots() const;

  std::vector<std::int16_t> refl_;  // num_positive^2, signed 1-based
  std::vector<std::int16_t> sum_;
  std::unordered_map<Vec, int, VecHash> index_;  // positive root -> 0-based index
};

// Construct the root system of the given type and rank by reflection
// closure from the simple roots.  Throws std::invalid_argument for an
// invalid (type, rank) pair.  C2 yields the B2 system.
const RootSystem& root_system(Type t, int rank);

// Owned construction (used internally and for duals).
RootSystem build_root_system(Type t, int rank);

// The dual system: coroots 2a/(a,a), rescaled to a primitive integer
// lattice.  Node i of the dual carries the coroot of node i, so B and C
// exchange and F4's node labeling flips relative to the primal convention.
const RootSystem& dual_system(const RootSystem& rs);

// Evaluation point r with a_i(r) = 1 for every simple root, represented
// exactly as num/den.  For any positive root, a(r) equals its height.
struct RegularPoint {
  Vec num{};
  std::int64_t den = 1;

  // Exact evaluation (a, num)/den; throws if not an integer.
  std::int64_t eval(const Vec& root) const;
};

RegularPoint regular_point(const RootSystem& rs);

}  // namespace stellar
