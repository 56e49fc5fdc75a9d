#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stellar/root_system.hpp"

using namespace stellar;

TEST_CASE("positive root counts per type") {
  CHECK(root_system(Type::A, 3).num_positive() == 6);
  CHECK(root_system(Type::D, 4).num_positive() == 12);
  CHECK(root_system(Type::E, 8).num_positive() == 120);
  CHECK(root_system(Type::G, 2).num_positive() == 6);
  CHECK(root_system(Type::F, 4).num_positive() == 24);
  for (int n = 2; n <= 8; ++n) {
    CHECK(root_system(Type::B, n).num_positive() == n * n);
    CHECK(root_system(Type::C, n).num_positive() == n * n);
  }
  for (int n = 1; n <= 8; ++n)
    CHECK(root_system(Type::A, n).num_positive() == n * (n + 1) / 2);
  for (int n = 3; n <= 8; ++n)
    CHECK(root_system(Type::D, n).num_positive() == n * (n - 1));
  CHECK(root_system(Type::E, 6).num_positive() == 36);
  CHECK(root_system(Type::E, 7).num_positive() == 63);
}

TEST_CASE("invalid type/rank pairs are rejected") {
  CHECK_THROWS_AS(build_root_system(Type::D, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_root_system(Type::E, 5), std::invalid_argument);
  CHECK_THROWS_AS(build_root_system(Type::F, 5), std::invalid_argument);
  CHECK_THROWS_AS(build_root_system(Type::G, 3), std::invalid_argument);
  CHECK_THROWS_AS(build_root_system(Type::A, 0), std::invalid_argument);
}

TEST_CASE("C2 is reported as B2") {
  const RootSystem& c2 = root_system(Type::C, 2);
  CHECK(c2.label == "B2");
  CHECK(&c2 == &root_system(Type::B, 2));
}

TEST_CASE("reflection closure and integer combinations") {
  for (auto [t, r] : {std::pair{Type::B, 3}, {Type::G, 2}, {Type::F, 4}, {Type::D, 4}}) {
    const RootSystem& rs = root_system(t, r);
    int P = rs.num_positive();
    for (int a = 0; a < P; ++a) {
      for (int b = 0; b < P; ++b) CHECK(rs.refl(a, b) != 0);
      // every positive root is a nonnegative integer combination of simples
      Vec v{};
      for (int i = 0; i < rs.rank; ++i) {
        CHECK(rs.coeff[a][i] >= 0);
        v = add(v, scale(rs.simple[i], rs.coeff[a][i]));
      }
      CHECK(v == rs.pos[a]);
    }
  }
}

TEST_CASE("Cartan matrix entries lie in the crystallographic range") {
  for (auto [t, r] : {std::pair{Type::A, 4}, {Type::B, 5}, {Type::C, 4}, {Type::D, 5},
                      {Type::E, 6}, {Type::F, 4}, {Type::G, 2}}) {
    const RootSystem& rs = root_system(t, r);
    for (int i = 0; i < rs.rank; ++i)
      for (int j = 0; j < rs.rank; ++j) {
        if (i == j)
          CHECK(rs.cartan[i][j] == 2);
        else {
          CHECK(rs.cartan[i][j] <= 0);
          CHECK(rs.cartan[i][j] >= -3);
        }
      }
  }
}

TEST_CASE("Dynkin diagram shapes match the standard labeling") {
  // B2: arrow toward node 2 (node 2 short).
  const RootSystem& b2 = root_system(Type::B, 2);
  CHECK(dot(b2.simple[0], b2.simple[0]) == 2);
  CHECK(dot(b2.simple[1], b2.simple[1]) == 1);

  // G2: node 1 short.
  const RootSystem& g2 = root_system(Type::G, 2);
  CHECK(dot(g2.simple[0], g2.simple[0]) < dot(g2.simple[1], g2.simple[1]));

  // B3: chain 1-2-3 with node 3 short.
  const RootSystem& b3 = root_system(Type::B, 3);
  CHECK(b3.adjacent(1, 2));
  CHECK(b3.adjacent(2, 3));
  CHECK(!b3.adjacent(1, 3));
  CHECK(dot(b3.simple[2], b3.simple[2]) == 1);

  // C3: chain with node 3 long.
  const RootSystem& c3 = root_system(Type::C, 3);
  CHECK(dot(c3.simple[2], c3.simple[2]) == 4);

  // D4: node 2 is the center.
  const RootSystem& d4 = root_system(Type::D, 4);
  for (int leaf : {1, 3, 4}) CHECK(d4.adjacent(2, leaf));
  CHECK(!d4.adjacent(1, 3));
  CHECK(!d4.adjacent(1, 4));
  CHECK(!d4.adjacent(3, 4));

  // E8: chain 1-3-4-5-6-7-8 with 2 attached to 4.
  const RootSystem& e8 = root_system(Type::E, 8);
  CHECK(e8.adjacent(1, 3));
  CHECK(e8.adjacent(3, 4));
  CHECK(e8.adjacent(2, 4));
  CHECK(e8.adjacent(4, 5));
  CHECK(e8.adjacent(5, 6));
  CHECK(e8.adjacent(6, 7));
  CHECK(e8.adjacent(7, 8));
  CHECK(!e8.adjacent(1, 2));
  CHECK(!e8.adjacent(2, 3));
}

TEST_CASE("index order is graded by height with lexicographic ties") {
  const RootSystem& rs = root_system(Type::F, 4);
  for (int k = 1; k < rs.num_positive(); ++k) {
    bool graded = rs.height[k - 1] < rs.height[k] ||
                  (rs.height[k - 1] == rs.height[k] && rs.pos[k - 1] < rs.pos[k]);
    CHECK(graded);
  }
  // simple roots occupy exactly the height-1 prefix
  for (int i = 0; i < rs.rank; ++i) CHECK(rs.height[rs.simple_pos[i]] == 1);
  CHECK(rs.height[rs.rank - 1] == 1);
  CHECK(rs.height[rs.rank] == 2);
}

TEST_CASE("duality exchanges B and C and fixes the simply-laced types") {
  CHECK(dual_system(root_system(Type::B, 3)).label == "C3");
  CHECK(dual_system(root_system(Type::C, 3)).label == "B3");
  CHECK(dual_system(root_system(Type::A, 3)).label == "A3");
  CHECK(dual_system(root_system(Type::D, 4)).label == "D4");

  // F4 self-dual with roles exchanged: node 1 is long primally, short dually.
  const RootSystem& f4 = root_system(Type::F, 4);
  const RootSystem& f4d = dual_system(f4);
  CHECK(f4d.label == "F4");
  CHECK(dot(f4.simple[0], f4.simple[0]) > dot(f4.simple[2], f4.simple[2]));
  CHECK(dot(f4d.simple[0], f4d.simple[0]) < dot(f4d.simple[2], f4d.simple[2]));

  // double dual restores the Cartan matrix
  const RootSystem& f4dd = dual_system(f4d);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(f4dd.cartan[i][j] == f4.cartan[i][j]);
}

TEST_CASE("regular point evaluates every positive root to its height") {
  for (auto [t, r] : {std::pair{Type::A, 2}, {Type::B, 2}, {Type::C, 3}, {Type::G, 2},
                      {Type::F, 4}, {Type::E, 6}}) {
    const RootSystem& rs = root_system(t, r);
    RegularPoint rp = regular_point(rs);
    for (int k = 0; k < rs.num_positive(); ++k) {
      CHECK(rp.eval(rs.pos[k]) == rs.height[k]);
      CHECK(rp.eval(rs.pos[k]) >= 1);
    }
    for (int i = 0; i < rs.rank; ++i) CHECK(rp.eval(rs.simple[i]) == 1);
  }
}

TEST_CASE("B2 height examples") {
  const RootSystem& b2 = root_system(Type::B, 2);
  RegularPoint rp = regular_point(b2);
  // beta1 + 2 beta2 has height 3
  Vec v = add(b2.simple[0], scale(b2.simple[1], 2));
  CHECK(rp.eval(v) == 3);
  // A2: alpha1 + alpha2 has height 2
  const RootSystem& a2 = root_system(Type::A, 2);
  CHECK(regular_point(a2).eval(add(a2.simple[0], a2.simple[1])) == 2);
}

TEST_CASE("serialization emits one root per line in index order") {
  const RootSystem& a2 = root_system(Type::A, 2);
  std::string s = a2.serialize_positive_roots();
  int lines = 0;
  for (char c : s)
    if (c == '\n') ++lines;
  CHECK(lines == 3);
}
