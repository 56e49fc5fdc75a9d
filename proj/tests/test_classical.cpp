#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stellar/classical.hpp"
#include "stellar/criteria.hpp"

using namespace stellar;

TEST_CASE("flattening a sequence") {
  CHECK(classical_flatten(std::vector<int>{-6, 3, -7, 1}) ==
        SignedPerm({-3, 2, -4, 1}));
  CHECK(classical_flatten(std::vector<int>{1, 2, 3, 4}) == SignedPerm({1, 2, 3, 4}));
  CHECK(classical_flatten(std::vector<int>{10, -2}) == SignedPerm({2, -1}));
  CHECK_THROWS_AS(classical_flatten(std::vector<int>{2, -2}), std::invalid_argument);
  CHECK_THROWS_AS(classical_flatten(std::vector<int>{0, 1}), std::invalid_argument);
}

TEST_CASE("one-line validation") {
  CHECK_THROWS_AS(validate_one_line({1, 1}, Type::B), std::invalid_argument);
  CHECK_THROWS_AS(validate_one_line({1, -2}, Type::A), std::invalid_argument);
  CHECK_THROWS_AS(validate_one_line({1, -2}, Type::D), std::invalid_argument);
  CHECK_NOTHROW(validate_one_line({-1, -2}, Type::D));
  CHECK_NOTHROW(validate_one_line({3, -2, 1}, Type::B));
}

TEST_CASE("word and one-line conversions round trip through the root systems") {
  for (auto [t, r] : {std::pair{Type::A, 3}, {Type::B, 3}, {Type::C, 3}, {Type::D, 4}}) {
    const RootSystem& rs = root_system(t, r);
    std::set<SignedPerm> seen;
    for (const auto& w : enumerate_elements(rs)) {
      SignedPerm p = element_to_signed(w);
      CHECK(seen.insert(p).second);  // faithful
      CHECK(signed_to_element(rs, p) == w);
      // the combinatorial word matches the root-level length
      CHECK(static_cast<int>(signed_to_word(p, t).size()) == w.len);
      // multiplication is composition of signed maps
      SignedPerm pinv = element_to_signed(inverse(w));
      for (int j = 1; j <= static_cast<int>(p.size()); ++j) {
        int img = p[j - 1];
        CHECK(pinv[std::abs(img) - 1] == (img > 0 ? j : -j));
      }
    }
  }
}

TEST_CASE("the classical test matches the Lakshmibai-Sandhya patterns") {
  CHECK(classical_pattern_test({3, 4, 1, 2}, Type::A, false).has_value());
  CHECK(classical_pattern_test({4, 2, 3, 1}, Type::A, false).has_value());
  CHECK(!classical_pattern_test({1, 2, 3, 4}, Type::A, false).has_value());
  CHECK(!classical_pattern_test({2, 1, 4, 3}, Type::A, false).has_value());

  // containment in a longer permutation
  CHECK(classical_pattern_test({5, 3, 4, 1, 2}, Type::A, false).has_value());
  auto w = classical_pattern_test({1, 4, 5, 2, 3}, Type::A, false);
  REQUIRE(w.has_value());  // 4523 pattern contains 3412
  CHECK(w->pattern == SignedPerm({3, 4, 1, 2}));
}

TEST_CASE("classical agrees with the stellar classifier on the rank-4 groups") {
  for (auto [t, r] : {std::pair{Type::B, 4}, {Type::C, 4}, {Type::D, 4}, {Type::A, 3}}) {
    const RootSystem& rs = root_system(t, r);
    for (const auto& e : enumerate_elements(rs)) {
      SignedPerm p = element_to_signed(e);
      CHECK(classical_pattern_test(p, t, false).has_value() ==
            pattern_smooth(e).has_value());
      CHECK(classical_pattern_test(p, t, true).has_value() ==
            pattern_rationally_smooth(e).has_value());
    }
  }
}

TEST_CASE("classical sweeps reproduce the small counts") {
  ClassicalSweep a3 = classical_sweep(Type::A, 4, false, false);
  CHECK(a3.total == 24);
  CHECK(a3.smooth == 22);

  ClassicalSweep b3 = classical_sweep(Type::B, 3, false, false);
  CHECK(b3.total == 48);
  CHECK(b3.smooth == 28);
  ClassicalSweep b3r = classical_sweep(Type::B, 3, true, false);
  CHECK(b3r.smooth == 34);

  ClassicalSweep d4 = classical_sweep(Type::D, 4, false, false);
  CHECK(d4.total == 192);
  CHECK(d4.smooth == 108);

  ClassicalSweep c3 = classical_sweep(Type::C, 3, false, false);
  CHECK(c3.smooth == 28);
}
