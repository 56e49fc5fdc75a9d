#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stellar/weyl.hpp"

namespace stellar {

// Coefficient vector of the rank generating function of a lower Bruhat
// ideal: coeffs[k] = #{v <= w : l(v) = k}.
struct PoincarePolynomial {
  std::vector<std::int64_t> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  std::int64_t sum() const;
  bool operator==(const PoincarePolynomial&) const = default;

  // Low-to-high comma-separated coefficients, e.g. "1,2,2,1".
  std::string to_string() const;
};

PoincarePolynomial poly_mul(const PoincarePolynomial& a, const PoincarePolynomial& b);

bool is_palindromic(const PoincarePolynomial& p);

// Least k >= 1 with coeffs[k] != coeffs[deg-k]; empty when palindromic.
std::optional<int> asymmetry_depth(const PoincarePolynomial& p);

PoincarePolynomial poincare(const WeylGroup& g, int w);

// First vertex x < w whose Bruhat-graph degree exceeds l(w), i.e.
// #{a in Phi+ : x < s_a x <= w} > l(w) - l(x); empty when the graph is
// regular of degree l(w) (equivalent to palindromy of P_w).
std::optional<int> bruhat_graph_check(const WeylGroup& g, int w);

// Quotient polynomial: coeffs[k] = #{z in W^J : z <= v, l(z) = k}.
// Throws std::domain_error when v is not minimal in its coset.
PoincarePolynomial quotient_poincare(const WeylGroup& g, int v, std::uint32_t j_mask);

// If the parabolic factor of w equals the Bruhat-maximal element of W_J
// below w, P_w factors as P_u * P^{W^J}_v; the product is verified before
// returning.  Empty otherwise.
std::optional<std::pair<PoincarePolynomial, PoincarePolynomial>> chains_factorize(
    const WeylGroup& g, int w, std::uint32_t j_mask);

struct FactorStep {
  int leaf_node;       // peeled Dynkin node
  bool used_inverse;   // factored w^{-1} instead of w
  PoincarePolynomial quotient;
};

struct Factorization {
  std::vector<FactorStep> steps;
  std::vector<PoincarePolynomial> factors;  // palindromic, product = P_w
};

// Recursive leaf-peeling factorization into palindromic quotient factors.
// For each candidate J = current support minus one leaf (by node number),
// tries w then w^{-1}; succeeds for every rationally smooth element of the
// supported types, and cannot succeed for a rationally singular one.
std::optional<Factorization> recursive_factor(const WeylGroup& g, int w);

}  // namespace stellar
