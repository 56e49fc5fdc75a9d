#include "stellar/weyl.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <fstream>
#include <mutex>
#include <sstream>
#include <unordered_set>

#include "stellar/parallel.hpp"

namespace stellar {

Element identity_element(const RootSystem& rs) {
  Element e;
  e.rs = &rs;
  e.act.resize(rs.num_positive());
  for (int b = 0; b < rs.num_positive(); ++b) e.act[b] = static_cast<std::int16_t>(b + 1);
  e.len = 0;
  return e;
}

namespace {

inline std::int16_t apply_act(const std::vector<std::int16_t>& act, std::int16_t signed_idx) {
  if (signed_idx > 0) return act[signed_idx - 1];
  return static_cast<std::int16_t>(-act[-signed_idx - 1]);
}

int count_negatives(const std::vector<std::int16_t>& act) {
  int n = 0;
  for (auto a : act)
    if (a < 0) ++n;
  return n;
}

}  // namespace

Element root_reflection(const RootSystem& rs, int pos_index) {
  Element e;
  e.rs = &rs;
  int P = rs.num_positive();
  e.act.resize(P);
  for (int b = 0; b < P; ++b) e.act[b] = rs.refl(pos_index, b);
  e.len = count_negatives(e.act);
  return e;
}

Element simple_reflection(const RootSystem& rs, int node) {
  if (node < 1 || node > rs.rank) throw std::invalid_argument("node out of range");
  return root_reflection(rs, rs.simple_pos[node - 1]);
}

Element mul(const Element& x, const Element& y) {
  if (x.rs != y.rs) throw std::invalid_argument("elements from different systems");
  Element z;
  z.rs = x.rs;
  z.act.resize(x.act.size());
  for (std::size_t b = 0; b < x.act.size(); ++b) z.act[b] = apply_act(x.act, y.act[b]);
  z.len = count_negatives(z.act);
  return z;
}

Element inverse(const Element& x) {
  Element z;
  z.rs = x.rs;
  z.act.resize(x.act.size());
  for (std::size_t b = 0; b < x.act.size(); ++b) {
    std::int16_t t = x.act[b];
    if (t > 0)
      z.act[t - 1] = static_cast<std::int16_t>(b + 1);
    else
      z.act[-t - 1] = static_cast<std::int16_t>(-(static_cast<int>(b) + 1));
  }
  z.len = x.len;
  return z;
}

Element rmul_simple(const Element& x, int node) {
  const RootSystem& rs = *x.rs;
  int sp = rs.simple_pos[node - 1];
  Element z;
  z.rs = x.rs;
  z.act.resize(x.act.size());
  for (std::size_t b = 0; b < x.act.size(); ++b)
    z.act[b] = apply_act(x.act, rs.refl(sp, static_cast<int>(b)));
  z.len = count_negatives(z.act);
  return z;
}

Element lmul_simple(const Element& x, int node) {
  const RootSystem& rs = *x.rs;
  int sp = rs.simple_pos[node - 1];
  Element z;
  z.rs = x.rs;
  z.act.resize(x.act.size());
  for (std::size_t b = 0; b < x.act.size(); ++b) {
    std::int16_t t = x.act[b];
    z.act[b] = (t > 0) ? rs.refl(sp, t - 1) : static_cast<std::int16_t>(-rs.refl(sp, -t - 1));
  }
  z.len = count_negatives(z.act);
  return z;
}

Element rmul_reflection(const Element& x, int pos_index) {
  const RootSystem& rs = *x.rs;
  Element z;
  z.rs = x.rs;
  z.act.resize(x.act.size());
  for (std::size_t b = 0; b < x.act.size(); ++b)
    z.act[b] = apply_act(x.act, rs.refl(pos_index, static_cast<int>(b)));
  z.len = count_negatives(z.act);
  return z;
}

Element from_word(const RootSystem& rs, std::span<const int> word) {
  Element w = identity_element(rs);
  for (int a : word) {
    if (a < 1 || a > rs.rank) throw std::invalid_argument("word letter out of range");
    w = rmul_simple(w, a);
  }
  return w;
}

Bits inversion_set(const Element& w) {
  Bits b;
  for (std::size_t k = 0; k < w.act.size(); ++k)
    if (w.act[k] < 0) b.set(-w.act[k] - 1);
  return b;
}

Element element_from_inversion_set(const RootSystem& rs, Bits inv) {
  Bits cur = inv;
  std::vector<int> word;
  int P = rs.num_positive();
  while (!cur.empty()) {
    int node = 0;
    for (int i = 1; i <= rs.rank; ++i)
      if (cur.test(rs.simple_pos[i - 1])) { node = i; break; }
    if (node == 0)
      throw std::domain_error("not an inversion set: no simple root present");
    if (static_cast<int>(word.size()) > P)
      throw std::domain_error("not an inversion set: peeling does not terminate");
    word.push_back(node);
    int sp = rs.simple_pos[node - 1];
    Bits next;
    cur.reset(sp);
    cur.for_each([&](int b) {
      std::int16_t im = rs.refl(sp, b);
      if (im < 0) throw std::domain_error("not an inversion set: sign flip while peeling");
      next.set(im - 1);
    });
    cur = next;
  }
  Element w = from_word(rs, word);
  if (!(inversion_set(w) == inv))
    throw std::domain_error("not an inversion set: round trip failed");
  return w;
}

Element longest_element(const RootSystem& rs) {
  return element_from_inversion_set(rs, Bits::full(rs.num_positive()));
}

std::uint32_t left_descent_mask(const Element& w) {
  std::uint32_t m = 0;
  const RootSystem& rs = *w.rs;
  Bits inv = inversion_set(w);
  for (int i = 1; i <= rs.rank; ++i)
    if (inv.test(rs.simple_pos[i - 1])) m |= (1u << (i - 1));
  return m;
}

std::uint32_t right_descent_mask(const Element& w) {
  std::uint32_t m = 0;
  const RootSystem& rs = *w.rs;
  for (int i = 1; i <= rs.rank; ++i)
    if (w.act[rs.simple_pos[i - 1]] < 0) m |= (1u << (i - 1));
  return m;
}

std::vector<int> lex_min_word(const Element& w) {
  std::vector<int> word;
  Element cur = w;
  while (cur.len > 0) {
    std::uint32_t m = left_descent_mask(cur);
    int node = std::countr_zero(m) + 1;
    word.push_back(node);
    cur = lmul_simple(cur, node);
  }
  return word;
}

bool bruhat_leq(const Element& x, const Element& w) {
  if (x.rs != w.rs) throw std::invalid_argument("elements from different systems");
  if (x.len == 0) return true;
  if (x.len > w.len) return false;
  if (x == w) return true;
  if (x.len == w.len) return false;
  std::uint32_t m = right_descent_mask(w);
  int node = std::countr_zero(m) + 1;
  Element ws = rmul_simple(w, node);
  Element xs = rmul_simple(x, node);
  if (xs.len < x.len) return bruhat_leq(xs, ws);
  return bruhat_leq(x, ws);
}

std::pair<Element, Element> parabolic_decompose(const Element& w, std::uint32_t j_mask) {
  Element v = w;
  std::vector<int> u_word;
  for (;;) {
    std::uint32_t m = left_descent_mask(v) & j_mask;
    if (!m) break;
    int node = std::countr_zero(m) + 1;
    u_word.push_back(node);
    v = lmul_simple(v, node);
  }
  Element u = from_word(*w.rs, u_word);
  return {u, v};
}

std::vector<Element> subgroup_elements(const RootSystem& rs, std::uint32_t j_mask,
                                       std::uint64_t cap) {
  std::vector<Element> out;
  std::unordered_set<Element, ElementHash> seen;
  out.push_back(identity_element(rs));
  seen.insert(out[0]);
  for (std::size_t q = 0; q < out.size(); ++q) {
    Element cur = out[q];
    for (int i = 1; i <= rs.rank; ++i) {
      if (!(j_mask & (1u << (i - 1)))) continue;
      Element nx = rmul_simple(cur, i);
      if (seen.insert(nx).second) {
        if (out.size() + 1 > cap) throw CapExceeded("subgroup enumeration exceeds cap");
        out.push_back(std::move(nx));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Element& a, const Element& b) {
    if (a.len != b.len) return a.len < b.len;
    return a.act < b.act;
  });
  return out;
}

std::vector<Element> enumerate_elements(const RootSystem& rs, std::uint64_t cap) {
  if (weyl_order(rs.type, rs.rank) > cap)
    throw CapExceeded("group order " + std::to_string(weyl_order(rs.type, rs.rank)) +
                      " exceeds cap " + std::to_string(cap));
  std::vector<Element> all;
  std::vector<Element> level{identity_element(rs)};
  while (!level.empty()) {
    std::sort(level.begin(), level.end(),
              [](const Element& a, const Element& b) { return a.act < b.act; });
    for (auto& e : level) all.push_back(e);
    std::unordered_set<Element, ElementHash> next_set;
    for (const auto& e : level)
      for (int i = 1; i <= rs.rank; ++i)
        if (e.act[rs.simple_pos[i - 1]] > 0)  // right ascent
          next_set.insert(rmul_simple(e, i));
    level.assign(next_set.begin(), next_set.end());
  }
  return all;
}

std::vector<Element> min_coset_reps_orbit(const RootSystem& rs, std::uint32_t j_mask) {
  // Weight vector with stabilizer exactly W_J: pair to 0 against J-simples,
  // to 1 against the others.  Solved over the simple-root basis.
  std::array<std::array<std::int64_t, kMaxDim>, kMaxDim> m{};
  std::array<std::int64_t, kMaxDim> rhs{};
  for (int i = 0; i < rs.rank; ++i) {
    for (int j = 0; j < rs.rank; ++j) m[i][j] = rs.cartan[j][i];
    rhs[i] = (j_mask & (1u << i)) ? 0 : 1;
  }
  auto sol = solve_cramer(m, rhs, rs.rank);
  Vec lambda{};
  for (int j = 0; j < rs.rank; ++j) lambda = add(lambda, scale(rs.simple[j], sol.num[j]));

  struct Node {
    Vec p;
    Element v;
  };
  std::vector<Node> orbit;
  std::unordered_set<Vec, VecHash> seen;
  orbit.push_back({lambda, identity_element(rs)});
  seen.insert(lambda);
  for (std::size_t q = 0; q < orbit.size(); ++q) {
    Node cur = orbit[q];  // copy: the vector may reallocate
    for (int i = 1; i <= rs.rank; ++i) {
      const Vec& a = rs.simple[i - 1];
      std::int64_t num = 2 * dot(cur.p, a), den = dot(a, a);
      if (num == 0) continue;
      Vec p2 = sub(cur.p, scale(a, num / den));
      if (seen.insert(p2).second) orbit.push_back({p2, rmul_simple(cur.v, i)});
    }
  }
  std::vector<Element> reps;
  reps.reserve(orbit.size());
  for (auto& n : orbit) {
    if (left_descent_mask(n.v) & j_mask)
      throw InternalError("orbit representative has a left descent in J");
    reps.push_back(std::move(n.v));
  }
  std::sort(reps.begin(), reps.end(), [](const Element& a, const Element& b) {
    if (a.len != b.len) return a.len < b.len;
    return a.act < b.act;
  });
  return reps;
}

std::vector<Element> min_coset_reps(const RootSystem& rs, std::uint32_t j_mask,
                                    std::uint64_t cap) {
  if (weyl_order(rs.type, rs.rank) > cap) return min_coset_reps_orbit(rs, j_mask);
  std::vector<Element> reps;
  for (auto& e : enumerate_elements(rs, cap))
    if (!(left_descent_mask(e) & j_mask)) reps.push_back(e);
  return reps;
}

std::string word_to_string(std::span<const int> word) {
  std::ostringstream os;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) os << ',';
    os << word[i];
  }
  return os.str();
}

std::vector<int> parse_word(const std::string& s) {
  std::vector<int> w;
  std::string tok;
  std::istringstream is(s);
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) continue;
    w.push_back(std::stoi(tok));
  }
  return w;
}

// ---------------------------------------------------------------------------
// WeylGroup

WeylGroup::WeylGroup(const RootSystem& rs, std::uint64_t cap) : rs_(&rs), rank_(rs.rank) {
  elems_ = enumerate_elements(rs, cap);
  int n = static_cast<int>(elems_.size());
  ids_.reserve(n * 2);
  for (int i = 0; i < n; ++i) ids_.emplace(elems_[i], i);

  rmul_.resize(static_cast<std::size_t>(n) * rank_);
  lmul_.resize(static_cast<std::size_t>(n) * rank_);
  inv_.resize(n);
  rdesc_.resize(n);
  ldesc_.resize(n);
  parallel_for(n, [&](std::size_t i) {
    const Element& e = elems_[i];
    for (int node = 1; node <= rank_; ++node) {
      rmul_[i * rank_ + node - 1] = ids_.at(rmul_simple(e, node));
      lmul_[i * rank_ + node - 1] = ids_.at(lmul_simple(e, node));
    }
    inv_[i] = ids_.at(inverse(e));
    rdesc_[i] = right_descent_mask(e);
    ldesc_[i] = left_descent_mask(e);
  });
  refl_id_.resize(rs.num_positive());
  for (int a = 0; a < rs.num_positive(); ++a) refl_id_[a] = ids_.at(root_reflection(rs, a));

  // The dense memo is quadratic; past this size leq() falls back to the
  // unmemoized element recursion (big groups only ever run pattern scans).
  if (n <= 20000)
    leq_ = std::vector<std::atomic<std::uint8_t>>(static_cast<std::size_t>(n) * n);
}

int WeylGroup::id_of(const Element& e) const {
  auto it = ids_.find(e);
  if (it == ids_.end()) throw std::invalid_argument("element not in group");
  return it->second;
}

int WeylGroup::lmul_reflection(int x, int pos_index) const {
  std::call_once(lrefl_once_, [&] {
    int P = rs_->num_positive();
    std::vector<int> table(static_cast<std::size_t>(size()) * P);
    parallel_for(size(), [&](std::size_t i) {
      for (int a = 0; a < P; ++a)
        table[i * P + a] = ids_.at(mul(elems_[refl_id_[a]], elems_[i]));
    });
    lrefl_ = std::move(table);
  });
  return lrefl_[static_cast<std::size_t>(x) * rs_->num_positive() + pos_index];
}

bool WeylGroup::leq(int x, int y) const {
  if (x == y || x == 0) return true;
  const Element& ex = elems_[x];
  const Element& ey = elems_[y];
  if (ex.len >= ey.len) return false;
  if (leq_.empty()) return bruhat_leq(ex, ey);
  std::size_t key = static_cast<std::size_t>(x) * size() + y;
  std::uint8_t memo = leq_[key].load(std::memory_order_relaxed);
  if (memo) return memo == 2;
  int node = std::countr_zero(rdesc_[y]) + 1;
  int ys = rmul(y, node);
  int xs = rmul(x, node);
  bool r = (elems_[xs].len < ex.len) ? leq(xs, ys) : leq(x, ys);
  leq_[key].store(r ? 2 : 1, std::memory_order_relaxed);
  return r;
}

const std::vector<int>& WeylGroup::subgroup(std::uint32_t j_mask) const {
  std::lock_guard<std::mutex> lock(subgroup_mutex_);
  auto it = subgroups_.find(j_mask);
  if (it != subgroups_.end()) return it->second;
  std::vector<int> members{0};
  std::vector<char> seen(size(), 0);
  seen[0] = 1;
  for (std::size_t q = 0; q < members.size(); ++q) {
    int cur = members[q];
    for (int i = 1; i <= rank_; ++i) {
      if (!(j_mask & (1u << (i - 1)))) continue;
      int nx = rmul(cur, i);
      if (!seen[nx]) {
        seen[nx] = 1;
        members.push_back(nx);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return subgroups_.emplace(j_mask, std::move(members)).first->second;
}

std::vector<int> WeylGroup::quotient_reps(std::uint32_t j_mask) const {
  std::vector<int> reps;
  for (int i = 0; i < size(); ++i)
    if (!(ldesc_[i] & j_mask)) reps.push_back(i);
  return reps;
}

std::pair<int, int> WeylGroup::decompose(int w, std::uint32_t j_mask) const {
  int v = w;
  int u = 0;
  std::vector<int> strip;
  for (;;) {
    std::uint32_t m = ldesc_[v] & j_mask;
    if (!m) break;
    int node = std::countr_zero(m) + 1;
    strip.push_back(node);
    v = lmul(v, node);
  }
  for (int node : strip) u = rmul(u, node);
  return {u, v};
}

int WeylGroup::max_parabolic_below(int w, std::uint32_t j_mask) const {
  const auto& sub = subgroup(j_mask);
  std::vector<int> below;
  int best = 0;
  for (int u : sub)
    if (leq(u, w)) {
      below.push_back(u);
      if (length(u) > length(best)) best = u;
    }
  for (int u : below) {
    if (u != best && length(u) == length(best))
      throw InternalError("max_parabolic_below: maximum not unique");
    if (!leq(u, best))
      throw InternalError("max_parabolic_below: maximum does not dominate");
  }
  return best;
}

bool WeylGroup::load_bruhat_cache(const std::string& path) const {
  if (leq_.empty()) return false;
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  char magic[8] = {};
  in.read(magic, 8);
  if (std::string(magic, 5) != "SBLQ1") return false;
  std::uint64_t n = 0;
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  if (n != static_cast<std::uint64_t>(size())) return false;
  std::vector<char> buf(static_cast<std::size_t>(n) * n);
  in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!in) return false;
  for (std::size_t i = 0; i < buf.size(); ++i)
    if (buf[i]) leq_[i].store(static_cast<std::uint8_t>(buf[i]), std::memory_order_relaxed);
  return true;
}

bool WeylGroup::save_bruhat_cache(const std::string& path) const {
  if (leq_.empty()) return false;
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  char magic[8] = {'S', 'B', 'L', 'Q', '1', 0, 0, 0};
  out.write(magic, 8);
  std::uint64_t n = size();
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  std::vector<char> buf(static_cast<std::size_t>(n) * n);
  for (std::size_t i = 0; i < buf.size(); ++i)
    buf[i] = static_cast<char>(leq_[i].load(std::memory_order_relaxed));
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  return static_cast<bool>(out);
}

const WeylGroup& weyl_group(const RootSystem& rs, std::uint64_t cap) {
  static std::map<const RootSystem*, std::unique_ptr<WeylGroup>> reg;
  static std::mutex m;
  std::lock_guard<std::mutex> lock(m);
  auto it = reg.find(&rs);
  if (it == reg.end())
    it = reg.emplace(&rs, std::make_unique<WeylGroup>(rs, cap)).first;
  return *it->second;
}

}  // namespace stellar
