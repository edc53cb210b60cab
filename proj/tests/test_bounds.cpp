#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "wiretap/bounds.hpp"
#include "wiretap/info.hpp"
#include "wiretap/rng.hpp"

using namespace wiretap;

TEST_CASE("fano minimum error", "[bounds]") {
  SECTION("reference points") {
    CHECK(fano_min_error(FanoInputs(2, 0.0)) == Catch::Approx(0.5).margin(1e-9));
    CHECK(fano_min_error(FanoInputs(4, 2.0)) == Catch::Approx(0.0).margin(1e-12));
    // Bisection root of H_b(p) + p log2(3) = 1, frozen from a 50-digit solve.
    double p = fano_min_error(FanoInputs(4, 1.0));
    CHECK(p == Catch::Approx(0.18928962491523176).margin(1e-9));
    CHECK(binary_entropy(Prob(p)) + p * std::log2(3.0) == Catch::Approx(1.0).margin(1e-9));
  }
  SECTION("saturated information and beyond give zero") {
    CHECK(fano_min_error(FanoInputs(8, 3.0)).value() == 0.0);
    CHECK(fano_min_error(FanoInputs(8, 5.0)).value() == 0.0);
  }
  SECTION("domain") {
    CHECK_THROWS_AS(FanoInputs(1, 0.0), DomainError);
    CHECK_THROWS_AS(FanoInputs(4, -0.1), DomainError);
  }
  SECTION("monotone non-increasing in information") {
    for (std::int64_t m : {2, 3, 4, 8, 16, 64}) {
      const double top = std::log2(static_cast<double>(m));
      double prev = 1.0;
      for (int k = 0; k <= 20; ++k) {
        double p = fano_min_error(FanoInputs(m, top * k / 20.0));
        CHECK(p <= prev + 1e-9);
        prev = p;
      }
    }
  }
  SECTION("monotone non-decreasing in message count") {
    for (double chi : {0.3, 1.0, 2.5}) {
      double prev = 0.0;
      for (std::int64_t m : {2, 3, 4, 6, 8, 12, 16, 32, 64}) {
        double p = fano_min_error(FanoInputs(m, chi));
        CHECK(p >= prev - 1e-9);
        prev = p;
      }
    }
  }
}

TEST_CASE("log-scaled eavesdropper bound", "[bounds]") {
  SECTION("single sample gives zero") {
    BoundValue b = lemma323_bound(1, 4, 0.0);
    CHECK(b.value == 0.0);
    CHECK_FALSE(b.vacuous);
  }
  SECTION("the leading factor flips sign for more than one sample") {
    BoundValue b = lemma323_bound(2, 4, 0.0);
    CHECK(b.value == Catch::Approx(-1.0).margin(1e-12));
    CHECK(b.vacuous);
  }
  SECTION("large message count") {
    BoundValue b = lemma323_bound(1024, std::int64_t{1} << 20, 4.0);
    CHECK(b.value == Catch::Approx(-150.0).margin(1e-9));
    CHECK(b.vacuous);
  }
  SECTION("opt-in clamp keeps the flag") {
    BoundValue b = lemma323_bound(1024, std::int64_t{1} << 20, 4.0, true);
    CHECK(b.value == 0.0);
    CHECK(b.vacuous);
  }
  SECTION("domain") {
    CHECK_THROWS_AS(lemma323_bound(0, 4, 0.0), DomainError);
    CHECK_THROWS_AS(lemma323_bound(1, 1, 0.0), DomainError);
    CHECK_THROWS_AS(lemma323_bound(1, 4, -1.0), DomainError);
  }
}

TEST_CASE("multi-state helstrom lower bound", "[bounds]") {
  CHECK(helstrom_multistate_lower(2, 0.0) == Catch::Approx(0.5).margin(1e-15));
  CHECK(helstrom_multistate_lower(4, 0.1) == Catch::Approx(0.675).margin(1e-15));
  for (std::int64_t m : {2, 3, 10, 1000})
    CHECK(helstrom_multistate_lower(m, 1.0).value() == 0.0);
  CHECK_THROWS_AS(helstrom_multistate_lower(1, 0.0), DomainError);
  CHECK_THROWS_AS(helstrom_multistate_lower(4, -0.1), DomainError);
  CHECK_THROWS_AS(helstrom_multistate_lower(4, 2.1), DomainError);
}

TEST_CASE("two-state helstrom success probability", "[bounds]") {
  DensityMatrix zero = DensityMatrix::basis(2, 0);
  DensityMatrix one = DensityMatrix::basis(2, 1);
  CVec plus(2);
  plus << 1.0, 1.0;
  CHECK(helstrom_two_state(zero, one) == Catch::Approx(1.0).margin(1e-12));
  CHECK(helstrom_two_state(zero, zero) == Catch::Approx(0.5).margin(1e-12));
  // 1/2 + sqrt(2)/4, frozen from a 50-digit evaluation.
  CHECK(helstrom_two_state(zero, DensityMatrix::pure(plus)) ==
        Catch::Approx(0.85355339059327376).margin(1e-12));
  CHECK_THROWS_AS(helstrom_two_state(zero, DensityMatrix::maximally_mixed(3)), ValidationError);
}

TEST_CASE("two-state discrimination is optimal and achievable", "[bounds]") {
  // For each random pair, build the measurement that projects onto the
  // positive eigenspace of rho0 - rho1 (constructed here, independently of
  // helstrom_two_state) and Monte Carlo its success rate.
  rng::Stream g(406, 0);
  constexpr int kSamples = 100000;
  for (int pair = 0; pair < 500; ++pair) {
    DensityMatrix r0 = random_density(2, g), r1 = random_density(2, g);
    Eigen::SelfAdjointEigenSolver<CMat> s(CMat(r0.entries() - r1.entries()));
    REQUIRE(s.info() == Eigen::Success);
    CMat pplus = CMat::Zero(2, 2);
    for (Eigen::Index i = 0; i < 2; ++i)
      if (s.eigenvalues()[i] > 0.0)
        pplus += s.eigenvectors().col(i) * s.eigenvectors().col(i).adjoint();
    const double succ0 = (pplus * r0.entries()).trace().real();
    const double succ1 = 1.0 - (pplus * r1.entries()).trace().real();
    rng::Counter mc(500 + pair, 1);
    int wins = 0;
    for (int t = 0; t < kSamples; ++t) {
      const bool second = mc.bernoulli(0.5, 2 * static_cast<std::uint64_t>(t));
      if (mc.bernoulli(second ? succ1 : succ0, 2 * static_cast<std::uint64_t>(t) + 1)) ++wins;
    }
    const double emp = static_cast<double>(wins) / kSamples;
    const double hel = helstrom_two_state(r0, r1);
    const double sigma = std::sqrt(hel * (1.0 - hel) / kSamples);
    // achievability and optimality: the empirical rate brackets the bound
    CHECK(std::abs(emp - hel) <= 3.0 * sigma + 1e-4);
  }
}

TEST_CASE("fano bound holds on a simulated classical wiretap", "[bounds]") {
  // Random 8-bit code with 16 messages; the eavesdropper sees codewords
  // through BSC(0.3) and decodes by minimum Hamming distance. Fano's
  // inequality with the exact I(U;Z) must lower bound the empirical error.
  constexpr int kBits = 8, kMessages = 16, kTrials = 20000;
  constexpr double q = 0.3;
  rng::Counter codegen(407, 0);
  std::array<std::uint32_t, kMessages> code{};
  for (int u = 0; u < kMessages; ++u) code[u] = static_cast<std::uint32_t>(codegen.u64(u) & 0xffu);

  std::vector<double> joint(kMessages * 256);
  for (int u = 0; u < kMessages; ++u)
    for (std::uint32_t z = 0; z < 256; ++z) {
      const int d = std::popcount(code[u] ^ z);
      joint[u * 256 + z] = std::pow(q, d) * std::pow(1.0 - q, kBits - d) / kMessages;
    }
  const double mi = mutual_information(JointDist(kMessages, 256, joint));
  const double bound = fano_min_error(FanoInputs(kMessages, mi));

  int errors = 0;
  for (int t = 0; t < kTrials; ++t) {
    rng::Counter trial(408, static_cast<std::uint64_t>(t));
    const int u = static_cast<int>(trial.u64(0) % kMessages);
    std::uint32_t z = code[u];
    for (int b = 0; b < kBits; ++b)
      if (trial.bernoulli(q, 1 + static_cast<std::uint64_t>(b))) z ^= 1u << b;
    int best = 0, best_d = kBits + 1;
    for (int v = 0; v < kMessages; ++v) {
      const int d = std::popcount(code[v] ^ z);
      if (d < best_d) {
        best_d = d;
        best = v;
      }
    }
    if (best != u) ++errors;
  }
  const double emp = static_cast<double>(errors) / kTrials;
  const double sigma = std::sqrt(emp * (1.0 - emp) / kTrials);
  CHECK(emp >= bound - 3.0 * sigma - 1e-9);
}

TEST_CASE("eavesdropper gap regimes", "[bounds]") {
  SECTION("two messages sit in the helstrom regime") {
    CEveGap gap = c_eve_gap(7, 2, 3.0, 0.0);
    CHECK(gap.value == Catch::Approx(0.5).margin(1e-15));
    CHECK(gap.regime == "small-M");
    CHECK_FALSE(gap.vacuous);
  }
  SECTION("large message counts use the log-scaled branch") {
    CEveGap gap = c_eve_gap(1024, std::int64_t{1} << 20, 4.0, 0.5);
    CHECK(gap.value == Catch::Approx(-150.0).margin(1e-9));
    CHECK(gap.regime == "large-M");
    CHECK(gap.vacuous);
  }
  SECTION("single sample collapses the large branch to zero") {
    CEveGap gap = c_eve_gap(1, 1024, 0.0, 0.3);
    CHECK(gap.value == 0.0);
    CHECK(gap.regime == "large-M");
    CHECK_FALSE(gap.vacuous);
  }
  SECTION("threshold boundary") {
    CHECK(c_eve_gap(2, 16, 0.0, 0.0).regime == "small-M");
    CHECK(c_eve_gap(2, 17, 0.0, 0.0).regime == "large-M");
    CHECK(c_eve_gap(2, 17, 0.0, 0.0, 20).regime == "small-M");
  }
  SECTION("clamped large branch") {
    CEveGap gap = c_eve_gap(1024, std::int64_t{1} << 20, 4.0, 0.5, 16, true);
    CHECK(gap.value == 0.0);
    CHECK(gap.vacuous);
  }
  SECTION("domain") {
    CHECK_THROWS_AS(c_eve_gap(0, 4, 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(c_eve_gap(1, 4, 0.0, 2.5), DomainError);
  }
}
