#include <catch2/catch_amalgamated.hpp>

#include "wiretap/rng.hpp"

using namespace wiretap;

TEST_CASE("counter draws are pure in their coordinates", "[rng]") {
  rng::Counter a(123, 5), b(123, 5), c(123, 6), d(124, 5);
  CHECK(a.u64(77) == b.u64(77));
  CHECK(a.u64(77) != a.u64(78));
  CHECK(a.u64(77) != c.u64(77));
  CHECK(a.u64(77) != d.u64(77));
}

TEST_CASE("uniform draws have the right first moments", "[rng]") {
  rng::Counter ctr(9, 0);
  const int n = 100000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    double u = ctr.uniform(i);
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    sumsq += u * u;
  }
  double mean = sum / n;
  double var = sumsq / n - mean * mean;
  CHECK_THAT(mean, Catch::Matchers::WithinAbs(0.5, 3.0 * std::sqrt(1.0 / 12.0 / n)));
  CHECK_THAT(var, Catch::Matchers::WithinAbs(1.0 / 12.0, 0.005));
}

TEST_CASE("normal draws have the right first moments", "[rng]") {
  rng::Stream rs(9, 1);
  const int n = 100000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    double g = rs.normal();
    sum += g;
    sumsq += g * g;
  }
  double mean = sum / n;
  CHECK_THAT(mean, Catch::Matchers::WithinAbs(0.0, 3.0 / std::sqrt(n)));
  CHECK_THAT(sumsq / n, Catch::Matchers::WithinAbs(1.0, 0.03));
}
