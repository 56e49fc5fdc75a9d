#include "stellar/verify.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "stellar/parallel.hpp"

namespace stellar {

CrossvalResult crossval_group(Type t, int rank, std::uint64_t cap) {
  const RootSystem& rs = root_system(t, rank);
  const WeylGroup& g = weyl_group(rs, cap);
  int n = g.size();

  // Warm shared caches before the parallel passes.
  build_bad_tables();
  stellar_subsystems(rs);
  for (auto k : {EmbeddingKind::B2, EmbeddingKind::A3, EmbeddingKind::D4}) embeddings(rs, k);
  if (!rs.simply_laced()) {
    const RootSystem& d = dual_system(rs);
    for (auto k : {EmbeddingKind::A3, EmbeddingKind::D4}) embeddings(d, k);
  }
  g.lmul_reflection(0, 0);

  bool classical = (t == Type::A || t == Type::B || t == Type::C || t == Type::D);

  std::vector<std::uint8_t> oracle_smooth(n), oracle_rational(n), graph_regular(n);
  std::vector<std::uint8_t> pat_smooth(n), pat_rational(n), emb_smooth(n), emb_rational(n);
  std::vector<std::uint8_t> cls_smooth(n), cls_rational(n);

  // The Kumar table serializes on its memo; run that pass sequentially.
  for (int w = 0; w < n; ++w) oracle_smooth[w] = is_smooth_oracle(g, w);

  parallel_for(n, [&](std::size_t w) {
    int id = static_cast<int>(w);
    const Element& e = g.element(id);
    oracle_rational[w] = is_rationally_smooth_oracle(g, id);
    graph_regular[w] = !bruhat_graph_check(g, id).has_value();
    pat_smooth[w] = !pattern_smooth(e).has_value();
    pat_rational[w] = !pattern_rationally_smooth(e).has_value();
    emb_smooth[w] = !embedded_smooth(e).has_value();
    emb_rational[w] = !embedded_rationally_smooth(e).has_value();
    if (classical) {
      SignedPerm p = element_to_signed(e);
      cls_smooth[w] = !classical_pattern_test(p, t, false).has_value();
      cls_rational[w] = !classical_pattern_test(p, t, true).has_value();
    }
  });

  CrossvalResult res;
  res.total = n;
  for (int w = 0; w < n; ++w) {
    res.smooth += oracle_smooth[w];
    res.rationally_smooth += oracle_rational[w];
    bool ok = pat_smooth[w] == oracle_smooth[w] && emb_smooth[w] == oracle_smooth[w] &&
              pat_rational[w] == oracle_rational[w] && emb_rational[w] == oracle_rational[w] &&
              graph_regular[w] == oracle_rational[w];
    if (classical)
      ok = ok && cls_smooth[w] == oracle_smooth[w] && cls_rational[w] == oracle_rational[w];
    if (!ok && res.all_agree) {
      res.all_agree = false;
      res.first_disagreement = w;
      std::ostringstream os;
      os << "element " << word_to_string(lex_min_word(g.element(w))) << ": kumar="
         << int(oracle_smooth[w]) << " pattern=" << int(pat_smooth[w]) << " embedded="
         << int(emb_smooth[w]) << " | palindromy=" << int(oracle_rational[w]) << " graph="
         << int(graph_regular[w]) << " pattern=" << int(pat_rational[w]) << " embedded="
         << int(emb_rational[w]);
      if (classical)
        os << " | classical=" << int(cls_smooth[w]) << "/" << int(cls_rational[w]);
      res.disagreement_note = os.str();
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Bounded Poincare coefficient probes.

namespace {

struct LengthPool {
  std::vector<Element> elems;                       // all elements of length <= depth
  std::unordered_map<Element, int, ElementHash> id;
  std::vector<int> count_by_len;
};

const LengthPool& length_pool(const RootSystem& rs, int depth) {
  static std::map<std::pair<const RootSystem*, int>, LengthPool> reg;
  static std::mutex m;
  std::lock_guard<std::mutex> lock(m);
  auto key = std::make_pair(&rs, depth);
  auto it = reg.find(key);
  if (it != reg.end()) return it->second;

  LengthPool pool;
  pool.count_by_len.assign(depth + 1, 0);
  std::vector<Element> level{identity_element(rs)};
  for (int len = 0; len <= depth; ++len) {
    std::sort(level.begin(), level.end(),
              [](const Element& a, const Element& b) { return a.act < b.act; });
    pool.count_by_len[len] = static_cast<int>(level.size());
    std::unordered_set<Element, ElementHash> next;
    for (auto& e : level) {
      pool.id.emplace(e, static_cast<int>(pool.elems.size()));
      pool.elems.push_back(e);
      if (len < depth)
        for (int i = 1; i <= rs.rank; ++i)
          if (e.act[rs.simple_pos[i - 1]] > 0) next.insert(rmul_simple(e, i));
    }
    level.assign(next.begin(), next.end());
  }
  return reg.emplace(key, std::move(pool)).first->second;
}

// Shared probe for repeated top/bottom coefficient queries on one element.
struct CoefficientProbe {
  const RootSystem& rs;
  Element w;
  std::vector<int> chain_nodes;  // first left descents peeling w to id
  const LengthPool* pool = nullptr;
  std::vector<std::int8_t> memo;  // pool x (chain+1)
  std::vector<std::vector<Element>> top_levels;
  std::uint64_t level_cap;

  CoefficientProbe(const Element& e, int max_depth, std::uint64_t cap)
      : rs(*e.rs), w(e), level_cap(cap) {
    Element cur = w;
    while (cur.len > 0) {
      int node = std::countr_zero(left_descent_mask(cur)) + 1;
      chain_nodes.push_back(node);
      cur = lmul_simple(cur, node);
    }
    pool = &length_pool(rs, max_depth);
    memo.assign(pool->elems.size() * (chain_nodes.size() + 1), 0);
    top_levels.push_back({w});
  }

  bool leq_chain(int xid, std::size_t j) {
    const Element& x = pool->elems[xid];
    if (x.len == 0) return true;
    int rem = w.len - static_cast<int>(j);
    if (x.len > rem) return false;
    std::int8_t& slot = memo[xid * (chain_nodes.size() + 1) + j];
    if (slot) return slot == 2;
    int node = chain_nodes[j];
    bool r;
    if (left_descent_mask(x) & (1u << (node - 1))) {
      Element sx = lmul_simple(x, node);
      r = leq_chain(pool->id.at(sx), j + 1);
    } else {
      r = leq_chain(xid, j + 1);
    }
    slot = r ? 2 : 1;
    return r;
  }

  std::int64_t bottom(int k) {
    if (k == 0) return 1;
    std::int64_t c = 0;
    for (std::size_t i = 0; i < pool->elems.size(); ++i)
      if (pool->elems[i].len == k && leq_chain(static_cast<int>(i), 0)) ++c;
    return c;
  }

  std::int64_t top(int k) {
    if (k == 0) return 1;
    while (static_cast<int>(top_levels.size()) <= k) {
      const auto& prev = top_levels.back();
      std::unordered_set<Element, ElementHash> next;
      for (const auto& x : prev)
        for (int a = 0; a < rs.num_positive(); ++a) {
          if (x.act[a] > 0) continue;  // need l(x s_a) < l(x)
          Element y = rmul_reflection(x, a);
          if (y.len == x.len - 1) next.insert(std::move(y));
          if (next.size() > level_cap) throw CapExceeded("coatom level exceeds cap");
        }
      top_levels.emplace_back(next.begin(), next.end());
    }
    return static_cast<std::int64_t>(top_levels[k].size());
  }
};

}  // namespace

std::int64_t bottom_coefficient(const Element& w, int k) {
  CoefficientProbe probe(w, k, 2'000'000);
  return probe.bottom(k);
}

std::int64_t top_coefficient(const Element& w, int k, std::uint64_t level_cap) {
  CoefficientProbe probe(w, 0, level_cap);
  return probe.top(k);
}

std::optional<int> bounded_asymmetry_depth(const Element& w, int max_depth) {
  CoefficientProbe probe(w, max_depth, 2'000'000);
  for (int k = 1; k <= max_depth; ++k)
    if (probe.bottom(k) != probe.top(k)) return k;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// E8 sweep.

E8SweepReport e8_sampled_sweep(std::uint64_t nsamples, std::uint64_t seed, bool full_sweep) {
  const RootSystem& rs = root_system(Type::E, 8);
  E8SweepReport rep;

  std::uint32_t j_mask = 0;
  for (int node = 2; node <= 8; ++node) j_mask |= (1u << (node - 1));
  std::vector<Element> reps = min_coset_reps_orbit(rs, j_mask);
  rep.quotient_size = static_cast<int>(reps.size());

  ClassicalSweep d7 = classical_sweep(Type::D, 7, false, true);
  rep.smooth_d7 = static_cast<int>(d7.smooth);

  // Dynkin correspondence between D7 and the parabolic on nodes 2..8.
  std::vector<int> j_simples;
  std::vector<int> j_nodes;
  for (int node = 2; node <= 8; ++node) {
    j_simples.push_back(rs.simple_pos[node - 1]);
    j_nodes.push_back(node);
  }
  auto cls = classify_simples(rs, j_simples);
  if (cls.label != "D7") throw InternalError("E8 parabolic on nodes 2..8 is not D7");
  std::vector<int> node_map(8);  // D7 node -> E8 node
  for (int k = 0; k < 7; ++k) node_map[k + 1] = j_nodes[cls.canonical_order[k]];

  // Warm the embedding lists (the expensive, shared part).
  embeddings(rs, EmbeddingKind::A3);
  embeddings(rs, EmbeddingKind::D4);
  length_pool(rs, 5);

  std::vector<std::pair<std::uint32_t, std::uint32_t>> picks;
  if (full_sweep) {
    picks.reserve(static_cast<std::size_t>(rep.smooth_d7) * reps.size());
    for (std::uint32_t u = 0; u < d7.smooth_list.size(); ++u)
      for (std::uint32_t v = 0; v < reps.size(); ++v) picks.emplace_back(u, v);
  } else {
    std::mt19937_64 rng(seed);
    picks.reserve(nsamples);
    for (std::uint64_t s = 0; s < nsamples; ++s)
      picks.emplace_back(static_cast<std::uint32_t>(rng() % d7.smooth_list.size()),
                         static_cast<std::uint32_t>(rng() % reps.size()));
  }
  rep.samples = picks.size();

  struct Slot {
    std::uint8_t singular = 0;
    std::int8_t depth = 0;   // asymmetry depth if singular
    std::uint8_t bad = 0;    // inconsistency flag
    std::string note;
  };
  std::vector<Slot> slots(picks.size());
  std::atomic<std::uint64_t> done{0};

  parallel_for(picks.size(), [&](std::size_t s) {
    if (full_sweep) {
      std::uint64_t d = ++done;
      if (d % 1000000 == 0)
        std::fprintf(stderr, "swept %llu of %zu products\n",
                     static_cast<unsigned long long>(d), picks.size());
    }
    auto [ui, vi] = picks[s];
    std::vector<int> word_d7 = signed_to_word(d7.smooth_list[ui], Type::D);
    std::vector<int> word_e8;
    word_e8.reserve(word_d7.size());
    for (int a : word_d7) word_e8.push_back(node_map[a]);
    Element u = from_word(rs, word_e8);
    Element w = mul(u, reps[vi]);
    if (u.len + reps[vi].len != w.len) {
      slots[s].bad = 1;
      slots[s].note = "parabolic product lengths did not add";
      return;
    }
    bool singular = has_embedded_pattern(
        w, {EmbeddingKind::A3, EmbeddingKind::D4}).has_value();
    slots[s].singular = singular;
    if (singular) {
      auto d = bounded_asymmetry_depth(w, 5);
      if (!d) {
        slots[s].bad = 1;
        slots[s].note = "singular sample symmetric through depth 5";
      } else {
        slots[s].depth = static_cast<std::int8_t>(*d);
      }
    } else {
      // Smooth products must stay symmetric as far as we look.
      CoefficientProbe probe(w, 2, 2'000'000);
      for (int k = 1; k <= 2; ++k)
        if (probe.bottom(k) != probe.top(k)) {
          slots[s].bad = 1;
          slots[s].note = "smooth sample shows an asymmetry";
          break;
        }
    }
  });

  for (auto& s : slots) {
    rep.singular += s.singular;
    if (s.singular) rep.max_asymmetry_depth = std::max(rep.max_asymmetry_depth, int(s.depth));
    if (s.bad && rep.all_consistent) {
      rep.all_consistent = false;
      rep.note = s.note;
    }
  }
  return rep;
}

}  // namespace stellar
