#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pommer/analysis.hpp"
#include "pommer/rng.hpp"

using namespace pommer;
using pommer::testing::gae_reference;
using pommer::testing::jitter_reference;
using pommer::testing::synthetic_walk;

TEST_CASE("gae matches the naive expansion") {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    size_t n = 1 + rng.below(120);
    std::vector<double> r(n), v(n + 1);
    for (auto& x : r) x = rng.uniform() * 2 - 1;
    for (auto& x : v) x = rng.uniform() * 2 - 1;
    for (double lambda : {0.0, 0.5, 0.95, 1.0}) {
      auto fast = gae(r, v, 0.99, lambda);
      auto slow = gae_reference(r, v, 0.99, lambda);
      for (size_t i = 0; i < n; ++i) CHECK(fast[i] == doctest::Approx(slow[i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("gae with lambda 1 equals discounted return minus baseline") {
  std::vector<double> r = {1, 0, 0, 2};
  std::vector<double> v = {0.5, 0.1, -0.2, 0.3, 0.7};
  auto a = gae(r, v, 0.99, 1.0);
  for (size_t t = 0; t < r.size(); ++t) {
    double ret = 0, w = 1;
    for (size_t k = t; k < r.size(); ++k) {
      ret += w * r[k];
      w *= 0.99;
    }
    ret += w * v.back();
    CHECK(a[t] == doctest::Approx(ret - v[t]).epsilon(1e-12));
  }
}

TEST_CASE("gae rejects mismatched value series") {
  CHECK_THROWS_AS(gae({1.0, 2.0}, {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("moving average handles constants, bands and short series") {
  auto flat = moving_average({2, 2, 2, 2, 2}, 3);
  REQUIRE(flat.mean.size() == 3);
  for (size_t i = 0; i < flat.mean.size(); ++i) {
    CHECK(flat.mean[i] == doctest::Approx(2.0));
    CHECK(flat.lower[i] == doctest::Approx(2.0));
    CHECK(flat.upper[i] == doctest::Approx(2.0));
  }

  auto ma = moving_average({0, 1, 2, 3}, 2);
  REQUIRE(ma.mean.size() == 3);
  CHECK(ma.mean[0] == doctest::Approx(0.5));
  CHECK(ma.mean[2] == doctest::Approx(2.5));
  CHECK(ma.upper[0] == doctest::Approx(0.5 + 1.96 * 0.5));
  CHECK(ma.lower[0] == doctest::Approx(0.5 - 1.96 * 0.5));

  auto single = moving_average({1, 5}, 10);  // window longer than the data
  CHECK(single.mean.size() == 1);
  CHECK(single.mean[0] == doctest::Approx(3.0));

  CHECK_THROWS_AS(moving_average({1.0}, 0), std::invalid_argument);
}

TEST_CASE("a 39-step pause followed by movement is not jitter") {
  std::vector<Pos> pos(39, Pos{4, 4});
  pos.push_back({4, 5});
  pos.push_back({4, 6});
  pos.push_back({5, 6});
  auto flags = jitter_flags(pos, 40);
  for (bool f : flags) CHECK(!f);
}

TEST_CASE("a 41-step pause is jitter in full") {
  std::vector<Pos> pos(41, Pos{4, 4});
  auto flags = jitter_flags(pos, 40);
  for (bool f : flags) CHECK(f);
}

TEST_CASE("a 60-step alternation fills its bins as 1.0 and 0.2") {
  std::vector<Pos> pos;
  for (int i = 0; i < 60; ++i) pos.push_back(i % 2 ? Pos{4, 5} : Pos{4, 4});
  auto bins = jitter_bins(pos, 40, 50);
  REQUIRE(bins.size() == 2);
  CHECK(bins[0] == doctest::Approx(1.0));
  CHECK(bins[1] == doctest::Approx(0.2));  // 10 flagged steps over a width-50 bin
}

TEST_CASE("alternation between non-adjacent cells is not jitter") {
  std::vector<Pos> pos;
  for (int i = 0; i < 60; ++i) pos.push_back(i % 2 ? Pos{4, 6} : Pos{4, 4});
  auto flags = jitter_flags(pos, 40);
  for (bool f : flags) CHECK(!f);
}

TEST_CASE("jitter flags match the quadratic reference on synthetic walks") {
  for (uint64_t seed = 1; seed <= 60; ++seed) {
    auto pos = synthetic_walk(seed, 300 + static_cast<int>(seed % 400));
    CAPTURE(seed);
    CHECK(jitter_flags(pos, 40) == jitter_reference(pos, 40));
  }
  CHECK_THROWS_AS(jitter_flags({}, 40), std::invalid_argument);
}

TEST_CASE("bins average across games with zero-padding for short ones") {
  std::vector<std::vector<double>> per_game = {{1.0, 0.5}, {0.0}};
  auto avg = average_bins(per_game);
  REQUIRE(avg.size() == 2);
  CHECK(avg[0] == doctest::Approx(0.5));
  CHECK(avg[1] == doctest::Approx(0.25));
}
