#include "stellar/root_system.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace stellar {

std::string type_name(Type t, int rank) {
  std::string s(1, static_cast<char>(t));
  return s + std::to_string(rank);
}

std::optional<std::pair<Type, int>> parse_type_name(const std::string& s) {
  if (s.size() < 2) return std::nullopt;
  char c = static_cast<char>(std::toupper(s[0]));
  if (c < 'A' || c > 'G') return std::nullopt;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
  return std::make_pair(static_cast<Type>(c), std::stoi(s.substr(1)));
}

std::uint64_t weyl_order(Type t, int rank) {
  auto fact = [](int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  switch (t) {
    case Type::A: return fact(rank + 1);
    case Type::B:
    case Type::C: return (std::uint64_t{1} << rank) * fact(rank);
    case Type::D: return (std::uint64_t{1} << (rank - 1)) * fact(rank);
    case Type::G: return 12;
    case Type::F: return 1152;
    case Type::E:
      if (rank == 6) return 51840;
      if (rank == 7) return 2903040;
      return 696729600;
  }
  return 0;
}

int positive_root_count(Type t, int rank) {
  switch (t) {
    case Type::A: return rank * (rank + 1) / 2;
    case Type::B:
    case Type::C: return rank * rank;
    case Type::D: return rank * (rank - 1);
    case Type::G: return 6;
    case Type::F: return 24;
    case Type::E:
      if (rank == 6) return 36;
      if (rank == 7) return 63;
      return 120;
  }
  return 0;
}

namespace {

void validate_type(Type t, int rank) {
  bool ok = false;
  switch (t) {
    case Type::A: ok = rank >= 1 && rank <= 8; break;
    case Type::B:
    case Type::C: ok = rank >= 2 && rank <= 8; break;
    case Type::D: ok = rank >= 3 && rank <= 8; break;
    case Type::E: ok = rank >= 6 && rank <= 8; break;
    case Type::F: ok = rank == 4; break;
    case Type::G: ok = rank == 2; break;
  }
  if (!ok)
    throw std::invalid_argument("invalid root system type " + type_name(t, rank));
}

// Simple roots per the realization documented in the header.
std::vector<Vec> make_simple_roots(Type t, int rank, int& dim) {
  std::vector<Vec> s(rank);
  auto e = [](int i) {
    Vec v{};
    v[i - 1] = 1;
    return v;
  };
  switch (t) {
    case Type::A: {
      int n = rank + 1;
      dim = n;
      for (int i = 1; i <= rank; ++i) s[i - 1] = sub(e(n + 1 - i), e(n - i));
      break;
    }
    case Type::B:
    case Type::C:
    case Type::D: {
      int n = rank;
      dim = n;
      for (int i = 1; i < n; ++i) s[i - 1] = sub(e(n + 1 - i), e(n - i));
      if (t == Type::B) s[n - 1] = e(1);
      if (t == Type::C) s[n - 1] = scale(e(1), 2);
      if (t == Type::D) s[n - 1] = add(e(1), e(2));
      break;
    }
    case Type::E: {
      dim = 8;
      // Standard coordinates scaled by 2 to clear half-integers.
      s[0] = Vec{1, -1, -1, -1, -1, -1, -1, 1, 0};
      s[1] = add(scale(e(1), 2), scale(e(2), 2));
      s[2] = scale(sub(e(2), e(1)), 2);
      for (int i = 4; i <= rank; ++i) s[i - 1] = scale(sub(e(i - 1), e(i - 2)), 2);
      break;
    }
    case Type::F: {
      dim = 4;
      // Scaled by 2.
      s[0] = scale(sub(e(2), e(3)), 2);
      s[1] = scale(sub(e(3), e(4)), 2);
      s[2] = scale(e(4), 2);
      s[3] = Vec{1, -1, -1, -1, 0, 0, 0, 0, 0};
      break;
    }
    case Type::G: {
      dim = 3;
      s[0] = sub(e(1), e(2));
      s[1] = Vec{-2, 1, 1, 0, 0, 0, 0, 0, 0};
      break;
    }
  }
  return s;
}

Vec reflect_vec(const Vec& v, const Vec& a) {
  std::int64_t num = 2 * dot(v, a);
  std::int64_t den = dot(a, a);
  if (num % den != 0) throw std::logic_error("non-crystallographic pairing");
  return sub(v, scale(a, num / den));
}

// Generate the whole system from a set of simple roots and fill every
// table.  `expected_positive` guards against a wrong closure.
void generate_from_simples(RootSystem& rs, int expected_positive) {
  int rank = rs.rank;
  struct Entry {
    Vec v;
    std::array<std::int16_t, 8> c;
  };
  std::unordered_map<Vec, std::array<std::int16_t, 8>, VecHash> seen;
  std::vector<Entry> queue;
  for (int i = 0; i < rank; ++i) {
    std::array<std::int16_t, 8> c{};
    c[i] = 1;
    seen.emplace(rs.simple[i], c);
    queue.push_back({rs.simple[i], c});
    c[i] = -1;
    seen.emplace(negate(rs.simple[i]), c);
    queue.push_back({negate(rs.simple[i]), c});
  }
  for (std::size_t q = 0; q < queue.size(); ++q) {
    Entry cur = queue[q];
    for (int i = 0; i < rank; ++i) {
      const Vec& a = rs.simple[i];
      std::int64_t num = 2 * dot(cur.v, a), den = dot(a, a);
      if (num % den != 0) throw std::logic_error("non-crystallographic pairing");
      std::int64_t k = num / den;
      if (k == 0) continue;
      Vec w = sub(cur.v, scale(a, k));
      if (seen.count(w)) continue;
      auto c = cur.c;
      c[i] = static_cast<std::int16_t>(c[i] - k);
      seen.emplace(w, c);
      queue.push_back({w, c});
    }
  }

  struct PosEntry {
    Vec v;
    std::array<std::int16_t, 8> c;
    int h;
  };
  std::vector<PosEntry> positives;
  for (auto& [v, c] : seen) {
    int h = 0;
    bool nonneg = true, nonpos = true;
    for (int i = 0; i < rank; ++i) {
      h += c[i];
      if (c[i] < 0) nonneg = false;
      if (c[i] > 0) nonpos = false;
    }
    if (!nonneg && !nonpos) throw std::logic_error("mixed-sign root coefficients");
    if (nonneg) positives.push_back({v, c, h});
  }
  std::sort(positives.begin(), positives.end(), [](const PosEntry& a, const PosEntry& b) {
    if (a.h != b.h) return a.h < b.h;
    return a.v < b.v;
  });

  int P = static_cast<int>(positives.size());
  if (expected_positive > 0 && P != expected_positive)
    throw std::logic_error("positive root count mismatch for " + rs.label);
  if (P > 128) throw std::logic_error("too many positive roots");

  rs.pos.resize(P);
  rs.height.resize(P);
  rs.coeff.resize(P);
  rs.index_.clear();
  for (int k = 0; k < P; ++k) {
    rs.pos[k] = positives[k].v;
    rs.height[k] = positives[k].h;
    rs.coeff[k] = positives[k].c;
    rs.index_.emplace(positives[k].v, k);
  }
  rs.simple_pos.resize(rank);
  for (int i = 0; i < rank; ++i) rs.simple_pos[i] = rs.index_.at(rs.simple[i]);

  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) {
      rs.gram[i][j] = dot(rs.simple[i], rs.simple[j]);
      std::int64_t num = 2 * rs.gram[i][j], den = dot(rs.simple[j], rs.simple[j]);
      if (num % den != 0) throw std::logic_error("non-integral Cartan entry");
      rs.cartan[i][j] = num / den;
      if (i != j && (rs.cartan[i][j] > 0 || rs.cartan[i][j] < -3))
        throw std::logic_error("Cartan entry out of range");
    }

  rs.refl_.assign(static_cast<std::size_t>(P) * P, 0);
  rs.sum_.assign(static_cast<std::size_t>(P) * P, -1);
  for (int a = 0; a < P; ++a)
    for (int b = 0; b < P; ++b) {
      Vec w = reflect_vec(rs.pos[b], rs.pos[a]);
      int si = rs.signed_index(w);
      if (si == 0) throw std::logic_error("reflection closure violated");
      rs.refl_[a * P + b] = static_cast<std::int16_t>(si);
      auto it = rs.index_.find(add(rs.pos[a], rs.pos[b]));
      if (it != rs.index_.end()) rs.sum_[a * P + b] = static_cast<std::int16_t>(it->second);
    }
}

}  // namespace

RootSystem build_root_system(Type t, int rank) {
  validate_type(t, rank);
  if (t == Type::C && rank == 2) return build_root_system(Type::B, 2);

  RootSystem rs;
  rs.type = t;
  rs.rank = rank;
  rs.label = type_name(t, rank);
  rs.simple = make_simple_roots(t, rank, rs.dim);
  generate_from_simples(rs, positive_root_count(t, rank));
  return rs;
}

int RootSystem::signed_index(const Vec& v) const {
  auto it = index_.find(v);
  if (it != index_.end()) return it->second + 1;
  it = index_.find(negate(v));
  if (it != index_.end()) return -(it->second + 1);
  return 0;
}

Vec RootSystem::root_vec(int signed_idx) const {
  assert(signed_idx != 0);
  if (signed_idx > 0) return pos[signed_idx - 1];
  return negate(pos[-signed_idx - 1]);
}

int RootSystem::coxeter_m(int i, int j) const {
  if (i == j) return 1;
  std::int64_t p = cartan[i - 1][j - 1] * cartan[j - 1][i - 1];
  switch (p) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
  }
  throw std::logic_error("bad Cartan product");
}

bool RootSystem::simply_laced() const {
  std::int64_t len = dot(simple[0], simple[0]);
  for (int i = 1; i < rank; ++i)
    if (dot(simple[i], simple[i]) != len) return false;
  return true;
}

std::string RootSystem::serialize_positive_roots() const {
  std::ostringstream os;
  for (const auto& v : pos) {
    for (int i = 0; i < dim; ++i) {
      if (i) os << ' ';
      os << v[i];
    }
    os << '\n';
  }
  return os.str();
}

namespace {
std::mutex registry_mutex;
}

const RootSystem& root_system(Type t, int rank) {
  if (t == Type::C && rank == 2) return root_system(Type::B, 2);
  std::lock_guard<std::mutex> lock(registry_mutex);
  static std::map<std::pair<char, int>, RootSystem> reg;
  auto key = std::make_pair(static_cast<char>(t), rank);
  auto it = reg.find(key);
  if (it == reg.end()) it = reg.emplace(key, build_root_system(t, rank)).first;
  return it->second;
}

const RootSystem& dual_system(const RootSystem& rs) {
  std::lock_guard<std::mutex> lock(registry_mutex);
  static std::map<const RootSystem*, RootSystem> reg;
  auto it = reg.find(&rs);
  if (it != reg.end()) return it->second;

  // Coroots 2a/(a,a) of the simples, rescaled to a primitive integer set.
  std::int64_t l = 1;
  for (int i = 0; i < rs.rank; ++i) l = std::lcm(l, dot(rs.simple[i], rs.simple[i]));
  std::vector<Vec> co(rs.rank);
  std::int64_t content = 0;
  for (int i = 0; i < rs.rank; ++i) {
    co[i] = scale(rs.simple[i], l / dot(rs.simple[i], rs.simple[i]));
    for (int d = 0; d < kMaxDim; ++d) content = std::gcd(content, std::abs(co[i][d]));
  }
  if (content > 1)
    for (auto& v : co)
      for (int d = 0; d < kMaxDim; ++d) v[d] /= content;

  Type dt = rs.type == Type::B ? Type::C : rs.type == Type::C ? Type::B : rs.type;
  if (dt == Type::C && rs.rank == 2) dt = Type::B;

  RootSystem out;
  out.type = dt;
  out.rank = rs.rank;
  out.label = type_name(dt, rs.rank);
  out.dim = rs.dim;
  out.simple = co;
  generate_from_simples(out, positive_root_count(dt, rs.rank));

  // The dual Cartan matrix must be the transpose of the primal one.
  for (int i = 0; i < rs.rank; ++i)
    for (int j = 0; j < rs.rank; ++j)
      if (out.cartan[i][j] != rs.cartan[j][i])
        throw std::logic_error("dual Cartan mismatch");

  return reg.emplace(&rs, std::move(out)).first->second;
}

std::int64_t RegularPoint::eval(const Vec& root) const {
  std::int64_t n = dot(root, num);
  if (n % den != 0) throw std::domain_error("regular point: non-integral evaluation");
  return n / den;
}

RegularPoint regular_point(const RootSystem& rs) {
  // Solve (a_i, r) = 1 for r in the span of the simple roots.
  std::array<std::array<std::int64_t, kMaxDim>, kMaxDim> g{};
  std::array<std::int64_t, kMaxDim> rhs{};
  for (int i = 0; i < rs.rank; ++i) {
    for (int j = 0; j < rs.rank; ++j) g[i][j] = rs.gram[i][j];
    rhs[i] = 1;
  }
  auto s = solve_cramer(g, rhs, rs.rank);
  RegularPoint r;
  r.den = s.den;
  for (int j = 0; j < rs.rank; ++j) r.num = add(r.num, scale(rs.simple[j], s.num[j]));
  return r;
}

}  // namespace stellar
