#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unordered_set>

#include "stellar/weyl.hpp"

using namespace stellar;

TEST_CASE("from_word lengths and identities") {
  const RootSystem& a3 = root_system(Type::A, 3);
  CHECK(from_word(a3, std::vector<int>{2, 1, 3, 2}).len == 4);
  CHECK(from_word(a3, std::vector<int>{}).len == 0);

  const RootSystem& b2 = root_system(Type::B, 2);
  CHECK(from_word(b2, std::vector<int>{2, 1, 2, 2, 1, 2}).len == 0);
  CHECK(from_word(b2, std::vector<int>{2, 1, 2, 2, 1, 2}) == identity_element(b2));

  CHECK_THROWS_AS(from_word(a3, std::vector<int>{4}), std::invalid_argument);
}

TEST_CASE("group axioms and inverses") {
  const RootSystem& a3 = root_system(Type::A, 3);
  Element w = from_word(a3, std::vector<int>{2, 1, 3, 2});
  CHECK(mul(w, identity_element(a3)) == w);
  Element s1 = simple_reflection(a3, 1);
  CHECK(mul(s1, s1) == identity_element(a3));
  CHECK(inverse(w) == from_word(a3, std::vector<int>{2, 3, 1, 2}));
  CHECK(inverse(w).len == w.len);

  const RootSystem& b2 = root_system(Type::B, 2);
  CHECK_THROWS_AS(mul(w, identity_element(b2)), std::invalid_argument);
}

TEST_CASE("inversion sets") {
  const RootSystem& a3 = root_system(Type::A, 3);
  for (int i = 1; i <= 3; ++i) {
    Bits inv = inversion_set(simple_reflection(a3, i));
    CHECK(inv.count() == 1);
    CHECK(inv.test(a3.simple_pos[i - 1]));
  }
  Element w0 = longest_element(a3);
  CHECK(inversion_set(w0) == Bits::full(6));
  CHECK(w0.len == 6);
  CHECK(mul(w0, w0) == identity_element(a3));
  CHECK(w0 == from_word(a3, std::vector<int>{1, 2, 1, 3, 2, 1}));

  // I(s2 s1 s3 s2) = {a2, a1+a2, a2+a3, a1+a2+a3}
  Element w = from_word(a3, std::vector<int>{2, 1, 3, 2});
  Bits inv = inversion_set(w);
  CHECK(inv.count() == 4);
  auto has = [&](Vec v) {
    int idx = a3.signed_index(v);
    return idx > 0 && inv.test(idx - 1);
  };
  Vec a1 = a3.simple[0], a2 = a3.simple[1], a3v = a3.simple[2];
  CHECK(has(a2));
  CHECK(has(add(a1, a2)));
  CHECK(has(add(a2, a3v)));
  CHECK(has(add(add(a1, a2), a3v)));
}

TEST_CASE("longest element lengths") {
  CHECK(longest_element(root_system(Type::B, 2)).len == 4);
  CHECK(longest_element(root_system(Type::G, 2)).len == 6);
}

TEST_CASE("element_from_inversion_set round trips") {
  const RootSystem& b2 = root_system(Type::B, 2);
  CHECK(element_from_inversion_set(b2, Bits{}) == identity_element(b2));
  CHECK(element_from_inversion_set(b2, Bits::full(4)) == longest_element(b2));

  // {b2, b1+b2, b1+2b2} is the inversion set of s2 s1 s2
  Bits target;
  target.set(b2.simple_pos[1]);
  target.set(b2.signed_index(add(b2.simple[0], b2.simple[1])) - 1);
  target.set(b2.signed_index(add(b2.simple[0], scale(b2.simple[1], 2))) - 1);
  CHECK(element_from_inversion_set(b2, target) == from_word(b2, std::vector<int>{2, 1, 2}));

  // a non-biconvex set is rejected: {a1+a2} alone has no simple root
  Bits bad;
  bad.set(b2.signed_index(add(b2.simple[0], b2.simple[1])) - 1);
  CHECK_THROWS_AS(element_from_inversion_set(b2, bad), std::domain_error);
}

TEST_CASE("enumeration counts and inversion-set bijectivity") {
  CHECK(enumerate_elements(root_system(Type::A, 3)).size() == 24);
  CHECK(enumerate_elements(root_system(Type::D, 4)).size() == 192);
  CHECK(enumerate_elements(root_system(Type::F, 4)).size() == 1152);
  CHECK_THROWS_AS(enumerate_elements(root_system(Type::B, 4), 100), CapExceeded);

  // grouped by length; distinct inversion sets; round trip through the bits
  auto elems = enumerate_elements(root_system(Type::B, 3));
  const RootSystem& b3 = root_system(Type::B, 3);
  std::unordered_set<Bits, BitsHash> seen;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (i) CHECK(elems[i - 1].len <= elems[i].len);
    Bits inv = inversion_set(elems[i]);
    CHECK(seen.insert(inv).second);
    CHECK(element_from_inversion_set(b3, inv) == elems[i]);
  }
}

TEST_CASE("biconvexity of inversion sets") {
  const RootSystem& rs = root_system(Type::B, 3);
  for (const auto& w : enumerate_elements(rs)) {
    Bits inv = inversion_set(w);
    for (int a = 0; a < rs.num_positive(); ++a)
      for (int b = a + 1; b < rs.num_positive(); ++b) {
        int s = rs.sum_index(a, b);
        if (s < 0) continue;
        if (inv.test(a) && inv.test(b)) CHECK(inv.test(s));
        if (!inv.test(a) && !inv.test(b)) CHECK(!inv.test(s));
      }
  }
}

TEST_CASE("three descriptions of the inversion set agree") {
  const RootSystem& rs = root_system(Type::B, 3);
  for (const auto& w : enumerate_elements(rs)) {
    Bits inv = inversion_set(w);

    // {a : s_a w < w}
    Bits by_refl;
    for (int a = 0; a < rs.num_positive(); ++a) {
      Element sw = mul(root_reflection(rs, a), w);
      if (sw.len < w.len) by_refl.set(a);
    }
    CHECK(by_refl == inv);

    // prefix images s_{a_1}..s_{a_{j-1}}(alpha_{a_j}) over a reduced word
    Bits by_word;
    auto word = lex_min_word(w);
    for (std::size_t j = 0; j < word.size(); ++j) {
      Element prefix = from_word(rs, std::span<const int>(word.data(), j));
      int img = prefix.act[rs.simple_pos[word[j] - 1]];
      CHECK(img > 0);
      by_word.set(img - 1);
    }
    CHECK(by_word == inv);
  }
}

TEST_CASE("lex-min word is reduced and lexicographically minimal at the front") {
  const RootSystem& rs = root_system(Type::A, 3);
  for (const auto& w : enumerate_elements(rs)) {
    auto word = lex_min_word(w);
    CHECK(static_cast<int>(word.size()) == w.len);
    CHECK(from_word(rs, word) == w);
  }
}

TEST_CASE("bruhat order basics") {
  const RootSystem& b2 = root_system(Type::B, 2);
  Element s1 = simple_reflection(b2, 1);
  Element w = from_word(b2, std::vector<int>{2, 1, 2});
  CHECK(bruhat_leq(s1, w));
  CHECK(bruhat_leq(identity_element(b2), w));
  CHECK(bruhat_leq(w, w));
  CHECK(!bruhat_leq(w, s1));
}

TEST_CASE("WeylGroup dense order agrees with the element recursion") {
  const WeylGroup& g = weyl_group(root_system(Type::B, 3));
  int checked = 0;
  for (int x = 0; x < g.size(); ++x)
    for (int y = 0; y < g.size(); ++y) {
      CHECK(g.leq(x, y) == bruhat_leq(g.element(x), g.element(y)));
      ++checked;
    }
  CHECK(checked == 48 * 48);

  // number of elements below the longest element is |W|; length monotone
  int below = 0;
  for (int x = 0; x < g.size(); ++x)
    if (g.leq(x, g.longest())) ++below;
  CHECK(below == g.size());
}

TEST_CASE("parabolic decomposition") {
  const RootSystem& a2 = root_system(Type::A, 2);
  std::uint32_t j1 = 1u << 0;  // J = {1}
  Element w = from_word(a2, std::vector<int>{1, 2});
  auto [u, v] = parabolic_decompose(w, j1);
  CHECK(u == simple_reflection(a2, 1));
  CHECK(v == simple_reflection(a2, 2));
  CHECK(u.len + v.len == w.len);

  // w in W_J decomposes as (w, id)
  Element s1 = simple_reflection(a2, 1);
  auto [u2, v2] = parabolic_decompose(s1, j1);
  CHECK(u2 == s1);
  CHECK(v2.len == 0);

  // no left descents in J: (id, w)
  Element s2 = simple_reflection(a2, 2);
  auto [u3, v3] = parabolic_decompose(s2, j1);
  CHECK(u3.len == 0);
  CHECK(v3 == s2);

  // length additivity over a whole group
  const RootSystem& b3 = root_system(Type::B, 3);
  for (std::uint32_t j : {1u, 3u, 5u, 6u}) {
    for (const auto& e : enumerate_elements(b3)) {
      auto [p, q] = parabolic_decompose(e, j);
      CHECK(p.len + q.len == e.len);
      CHECK((left_descent_mask(q) & j) == 0);
      CHECK(mul(p, q) == e);
    }
  }
}

TEST_CASE("minimal coset representatives") {
  const RootSystem& a2 = root_system(Type::A, 2);
  CHECK(min_coset_reps(a2, 1u).size() == 3);
  CHECK(min_coset_reps(a2, 0u).size() == 6);

  // orbit construction agrees with the filter on a small group
  const RootSystem& b3 = root_system(Type::B, 3);
  for (std::uint32_t j : {1u, 2u, 3u, 6u}) {
    auto filt = min_coset_reps(b3, j);
    auto orb = min_coset_reps_orbit(b3, j);
    CHECK(filt.size() == orb.size());
    for (std::size_t i = 0; i < filt.size(); ++i) CHECK(filt[i] == orb[i]);
  }
}

TEST_CASE("subgroup closure and max below") {
  const RootSystem& b3 = root_system(Type::B, 3);
  const WeylGroup& g = weyl_group(b3);
  std::uint32_t j = 0b011;  // nodes 1,2: type A2
  CHECK(g.subgroup(j).size() == 6);

  CHECK(g.max_parabolic_below(0, j) == 0);
  int w0 = g.longest();
  int m = g.max_parabolic_below(w0, j);
  CHECK(g.length(m) == 3);  // longest element of A2

  // A2, J = {1}, w = s2 s1: the maximum below is s1
  const RootSystem& a2 = root_system(Type::A, 2);
  const WeylGroup& ga = weyl_group(a2);
  int w = ga.id_of(from_word(a2, std::vector<int>{2, 1}));
  CHECK(ga.max_parabolic_below(w, 1u) == ga.id_of(simple_reflection(a2, 1)));
}

TEST_CASE("word parsing and formatting") {
  CHECK(parse_word("2,1,3,2") == std::vector<int>({2, 1, 3, 2}));
  CHECK(word_to_string(std::vector<int>{2, 1, 3, 2}) == "2,1,3,2");
  CHECK(parse_word("") == std::vector<int>{});
}
