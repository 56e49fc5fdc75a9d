#include "stellar/bruhat_poincare.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

namespace stellar {

std::int64_t PoincarePolynomial::sum() const {
  return std::accumulate(coeffs.begin(), coeffs.end(), std::int64_t{0});
}

std::string PoincarePolynomial::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i) os << ',';
    os << coeffs[i];
  }
  return os.str();
}

PoincarePolynomial poly_mul(const PoincarePolynomial& a, const PoincarePolynomial& b) {
  PoincarePolynomial r;
  r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs.size(); ++j)
      r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  return r;
}

bool is_palindromic(const PoincarePolynomial& p) { return !asymmetry_depth(p).has_value(); }

std::optional<int> asymmetry_depth(const PoincarePolynomial& p) {
  int d = p.degree();
  for (int k = 1; 2 * k <= d; ++k)
    if (p.coeffs[k] != p.coeffs[d - k]) return k;
  return std::nullopt;
}

PoincarePolynomial poincare(const WeylGroup& g, int w) {
  PoincarePolynomial p;
  p.coeffs.assign(g.length(w) + 1, 0);
  for (int v = 0; v < g.size(); ++v)
    if (g.leq(v, w)) ++p.coeffs[g.length(v)];
  return p;
}

std::optional<int> bruhat_graph_check(const WeylGroup& g, int w) {
  const RootSystem& rs = g.rs();
  int lw = g.length(w);
  for (int x = 0; x < g.size(); ++x) {
    if (x == w || !g.leq(x, w)) continue;
    int lx = g.length(x);
    int up = 0;
    for (int a = 0; a < rs.num_positive(); ++a) {
      int sx = g.lmul_reflection(x, a);
      if (g.length(sx) > lx && g.leq(sx, w)) ++up;
    }
    if (up > lw - lx) return x;
  }
  return std::nullopt;
}

PoincarePolynomial quotient_poincare(const WeylGroup& g, int v, std::uint32_t j_mask) {
  if (g.ldesc(v) & j_mask)
    throw std::domain_error("quotient_poincare: element is not minimal in its coset");
  PoincarePolynomial p;
  p.coeffs.assign(g.length(v) + 1, 0);
  for (int z : g.quotient_reps(j_mask))
    if (g.leq(z, v)) ++p.coeffs[g.length(z)];
  return p;
}

std::optional<std::pair<PoincarePolynomial, PoincarePolynomial>> chains_factorize(
    const WeylGroup& g, int w, std::uint32_t j_mask) {
  auto [u, v] = g.decompose(w, j_mask);
  if (u != g.max_parabolic_below(w, j_mask)) return std::nullopt;
  PoincarePolynomial pu = poincare(g, u);
  PoincarePolynomial pv = quotient_poincare(g, v, j_mask);
  if (!(poly_mul(pu, pv) == poincare(g, w)))
    throw InternalError("chains_factorize: factor product mismatch");
  return std::make_pair(std::move(pu), std::move(pv));
}

namespace {

// Peelable nodes of the diagram restricted to the support mask: degree at
// most 1, so isolated nodes of a single-node support also qualify.
std::vector<int> support_leaves(const RootSystem& rs, std::uint32_t support) {
  std::vector<int> leaves;
  for (int i = 1; i <= rs.rank; ++i) {
    if (!(support & (1u << (i - 1)))) continue;
    int deg = 0;
    for (int j = 1; j <= rs.rank; ++j)
      if (j != i && (support & (1u << (j - 1))) && rs.adjacent(i, j)) ++deg;
    if (deg <= 1) leaves.push_back(i);
  }
  return leaves;
}

// Restricted parabolic decomposition inside the subgroup W_S: quotient
// polynomial over {z in W^J intersect W_S}.
PoincarePolynomial quotient_poincare_in(const WeylGroup& g, int v, std::uint32_t j_mask,
                                        std::uint32_t support) {
  PoincarePolynomial p;
  p.coeffs.assign(g.length(v) + 1, 0);
  for (int z : g.subgroup(support))
    if (!(g.ldesc(z) & j_mask) && g.leq(z, v)) ++p.coeffs[g.length(z)];
  return p;
}

bool factor_rec(const WeylGroup& g, int w, std::uint32_t support, Factorization& out) {
  if (w == 0) return true;
  for (int leaf : support_leaves(g.rs(), support)) {
    std::uint32_t j = support & ~(1u << (leaf - 1));
    for (int side = 0; side < 2; ++side) {
      int target = side ? g.inv(w) : w;
      auto [u, v] = g.decompose(target, j);
      if (u != g.max_parabolic_below(target, j)) continue;
      PoincarePolynomial q = quotient_poincare_in(g, v, j, support);
      if (!is_palindromic(q)) continue;
      std::size_t mark_steps = out.steps.size();
      std::size_t mark_factors = out.factors.size();
      if (factor_rec(g, u, j, out)) {
        out.steps.push_back({leaf, side == 1, q});
        if (q.degree() > 0) out.factors.push_back(std::move(q));
        return true;
      }
      out.steps.resize(mark_steps);
      out.factors.resize(mark_factors);
    }
  }
  return false;
}

}  // namespace

std::optional<Factorization> recursive_factor(const WeylGroup& g, int w) {
  Factorization f;
  std::uint32_t full = (g.rs().rank >= 32) ? ~0u : ((1u << g.rs().rank) - 1);
  if (!factor_rec(g, w, full, f)) return std::nullopt;
  PoincarePolynomial prod{{1}};
  for (const auto& q : f.factors) prod = poly_mul(prod, q);
  if (!(prod == poincare(g, w)))
    throw InternalError("recursive_factor: factor product mismatch");
  return f;
}

}  // namespace stellar
