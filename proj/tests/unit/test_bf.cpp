#include <stdexcept>

#include "doctest.h"
#include "inflearn/bf.hpp"

using namespace inflearn;

namespace {

std::vector<ExtNat> small_values() {
  std::vector<ExtNat> v;
  for (std::uint64_t n = 0; n <= 10; ++n) v.emplace_back(n);
  v.push_back(ExtNat::inf());
  return v;
}

}  // namespace

TEST_CASE("extended naturals") {
  CHECK(ExtNat(3) < ExtNat(4));
  CHECK(ExtNat(4) < ExtNat::inf());
  CHECK_FALSE(ExtNat::inf() < ExtNat::inf());
  CHECK(ExtNat::inf() >= ExtNat(1000));
  CHECK(parse_ext_nat("inf") == ExtNat::inf());
  CHECK(parse_ext_nat("12") == ExtNat(12));
  CHECK_THROWS_AS(parse_ext_nat("-1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_ext_nat(""), std::invalid_argument);
  CHECK_THROWS_AS(ExtNat::inf().value(), std::logic_error);
  CHECK(ExtNat::inf().to_string() == "inf");
}

TEST_CASE("Boolean algebra comparisons") {
  CHECK(le2_ba({ExtNat::inf()}, {3}));
  CHECK(le2_ba({2}, {2}));
  CHECK_FALSE(le2_ba({2}, {3}));
}

TEST_CASE("le2_ba is a total preorder on {0..10, inf}") {
  const auto vals = small_values();
  for (const auto& a : vals)
    for (const auto& b : vals) {
      CHECK((le2_ba({a}, {b}) || le2_ba({b}, {a})));
      if (le2_ba({a}, {b}) && le2_ba({b}, {a})) CHECK(a == b);
      for (const auto& c : vals)
        if (le2_ba({a}, {b}) && le2_ba({b}, {c})) CHECK(le2_ba({a}, {c}));
    }
}

TEST_CASE("every pair of distinct Boolean algebras has an obstruction") {
  const auto vals = small_values();
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < vals.size(); ++i)
    for (std::size_t j = i + 1; j < vals.size(); ++j) {
      const auto w = obstruction_witness(std::vector<BADescriptor>{{vals[i]}, {vals[j]}});
      REQUIRE(w);
      CHECK(w->first != w->second);
      ++pairs;
    }
  CHECK(pairs == 66);
  const auto w = obstruction_witness(std::vector<BADescriptor>{{2}, {5}});
  REQUIRE(w);
  // The 5-atom algebra sits below the 2-atom one.
  CHECK(*w == std::pair<std::size_t, std::size_t>{0, 1});
  CHECK(obstruction_witness(std::vector<BADescriptor>{{2}, {5}, {ExtNat::inf()}, {0}}));
  CHECK_THROWS_AS(obstruction_witness(std::vector<BADescriptor>{{2}}), std::invalid_argument);
  CHECK_THROWS_AS(obstruction_witness(std::vector<BADescriptor>{{2}, {2}}), std::invalid_argument);
}

TEST_CASE("linear order comparisons") {
  const LinOrderDescriptor w5{ExtNat::inf(), 5};
  const LinOrderDescriptor f34{3, 4};
  CHECK(le2_lo(w5, f34) == Tri::yes);
  CHECK(le2_lo(eta_order(4, 1), eta_order(3, 2)) == Tri::no);
  for (std::uint64_t a = 0; a <= 5; ++a)
    for (std::uint64_t b = 0; b <= 5; ++b)
      for (std::uint64_t c = 0; c <= 5; ++c)
        for (std::uint64_t d = 0; d <= 5; ++d)
          CHECK(le2_lo(eta_order(a, b), eta_order(c, d)) == ((a >= c && b >= d) ? Tri::yes : Tri::no));
  const LinOrderDescriptor blocky{2, 2, 3, 4};
  CHECK(le2_lo(blocky, blocky) == Tri::unknown);
  CHECK(le2_lo(LinOrderDescriptor{2, 2, ExtNat::inf(), 1}, eta_order(1, 1)) == Tri::yes);
  CHECK(eta_order(0, 2).has_least() == false);
  CHECK(eta_order(0, 2).has_greatest());
  CHECK(to_string(Tri::unknown) == "unknown");
}

TEST_CASE("the four orders have no obstruction") {
  const std::vector<LinOrderDescriptor> four = {eta_order(4, 1), eta_order(3, 2), eta_order(2, 3), eta_order(1, 4)};
  for (const auto& d : four) CHECK(le2_lo(d, d) == Tri::yes);
  CHECK_FALSE(obstruction_witness(four));
  const auto m = le2_matrix(four);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(m[i][j] == (i == j ? Tri::yes : Tri::no));
  const auto w = obstruction_witness(std::vector<LinOrderDescriptor>{eta_order(1, 1), eta_order(2, 1)});
  REQUIRE(w);
  CHECK(*w == std::pair<std::size_t, std::size_t>{0, 1});
}

TEST_CASE("BA matrix") {
  const auto m = le2_matrix(std::vector<BADescriptor>{{2}, {5}});
  CHECK(m[0][1] == Tri::no);
  CHECK(m[1][0] == Tri::yes);
  CHECK(m[0][0] == Tri::yes);
}
