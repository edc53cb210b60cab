#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "wiretap/qstate.hpp"

using namespace wiretap;

namespace {

DensityMatrix plus_state() {
  CVec psi(2);
  psi << 1.0, 1.0;
  return DensityMatrix::pure(psi);
}

double max_abs_diff(const CMat& a, const CMat& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("density matrix validation", "[qstate]") {
  SECTION("rejects non-square") {
    CHECK_THROWS_AS(DensityMatrix(CMat::Zero(2, 3)), ValidationError);
  }
  SECTION("rejects non-Hermitian") {
    CMat m(2, 2);
    m << Cx(0.5, 0.0), Cx(0.3, 0.0), Cx(0.1, 0.0), Cx(0.5, 0.0);
    CHECK_THROWS_AS(DensityMatrix(m), ValidationError);
  }
  SECTION("rejects negative eigenvalue") {
    CHECK_THROWS_AS(DensityMatrix::diagonal({1.5, -0.5}), ValidationError);
  }
  SECTION("rejects wrong trace") {
    CHECK_THROWS_AS(DensityMatrix::diagonal({0.6, 0.6}), ValidationError);
  }
  SECTION("accepts round-off scale negatives") {
    DensityMatrix rho = DensityMatrix::diagonal({1.0 + 5e-11, -5e-11});
    CHECK(rho.dim() == 2);
  }
  SECTION("complex off-diagonals survive") {
    CMat m(2, 2);
    m << Cx(0.5, 0.0), Cx(0.1, 0.2), Cx(0.1, -0.2), Cx(0.5, 0.0);
    DensityMatrix rho(m);
    CHECK(rho.dim() == 2);
  }
}

TEST_CASE("von Neumann entropy reference points", "[qstate]") {
  CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(2)) == Catch::Approx(1.0).margin(1e-12));
  CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(8)) == Catch::Approx(3.0).margin(1e-12));
  CHECK(von_neumann_entropy(DensityMatrix::basis(2, 0)) == Catch::Approx(0.0).margin(1e-10));
  CHECK(von_neumann_entropy(plus_state()) == Catch::Approx(0.0).margin(1e-10));
  // Shannon entropy of the spectrum (0.853553, 0.146447), frozen from a
  // 50-digit evaluation of -sum p log2 p.
  CHECK(von_neumann_entropy(DensityMatrix::diagonal({0.853553, 0.146447})) ==
        Catch::Approx(0.60087703001231058).margin(1e-12));
  // Basis rotation leaves the spectrum alone.
  rng::Stream g(11, 0);
  for (int t = 0; t < 50; ++t) {
    DensityMatrix rho = random_density(3, g);
    KrausChannel u = random_channel(3, 3, 1, g);
    CHECK(von_neumann_entropy(apply_channel(u, rho)) ==
          Catch::Approx(von_neumann_entropy(rho)).margin(1e-10));
  }
}

TEST_CASE("trace distance", "[qstate]") {
  DensityMatrix zero = DensityMatrix::basis(2, 0);
  DensityMatrix one = DensityMatrix::basis(2, 1);
  CHECK(trace_distance(zero, one) == Catch::Approx(2.0).margin(1e-12));
  CHECK(trace_distance(zero, zero) == Catch::Approx(0.0).margin(1e-14));
  // Pure states: ||.||_1 = 2 sqrt(1 - |<a|b>|^2); overlap 1/2 gives sqrt(2).
  CHECK(trace_distance(zero, plus_state()) == Catch::Approx(1.4142135623730951).margin(1e-12));
  CHECK_THROWS_AS(trace_distance(zero, DensityMatrix::maximally_mixed(3)), ValidationError);
  // Symmetry and triangle inequality on random triples.
  rng::Stream g(12, 0);
  for (int t = 0; t < 200; ++t) {
    DensityMatrix a = random_density(2, g), b = random_density(2, g), c = random_density(2, g);
    CHECK(trace_distance(a, b) == Catch::Approx(trace_distance(b, a)).margin(1e-12));
    CHECK(trace_distance(a, c) <= trace_distance(a, b) + trace_distance(b, c) + 1e-10);
  }
}

TEST_CASE("fidelity", "[qstate]") {
  DensityMatrix zero = DensityMatrix::basis(2, 0);
  DensityMatrix one = DensityMatrix::basis(2, 1);
  rng::Stream g(13, 0);
  DensityMatrix rho = random_density(2, g);
  CHECK(fidelity(rho, rho) == Catch::Approx(1.0).margin(1e-9));
  CHECK(fidelity(zero, one) == Catch::Approx(0.0).margin(1e-12));
  CHECK(fidelity(zero, plus_state()) == Catch::Approx(0.5).margin(1e-12));
  CHECK_THROWS_AS(fidelity(zero, DensityMatrix::maximally_mixed(3)), ValidationError);
  for (int t = 0; t < 200; ++t) {
    DensityMatrix a = random_density(2, g), b = random_density(2, g);
    double f = fidelity(a, b);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    CHECK(f == Catch::Approx(fidelity(b, a)).margin(1e-10));
  }
}

TEST_CASE("relative entropy", "[qstate]") {
  DensityMatrix zero = DensityMatrix::basis(2, 0);
  rng::Stream g(14, 0);
  DensityMatrix rho = random_density(2, g);
  CHECK(relative_entropy(rho, rho) == Catch::Approx(0.0).margin(1e-9));
  CHECK(relative_entropy(zero, DensityMatrix::maximally_mixed(2)) ==
        Catch::Approx(1.0).margin(1e-12));
  CHECK(std::isinf(relative_entropy(zero, DensityMatrix::basis(2, 1))));
  CHECK_THROWS_AS(relative_entropy(zero, DensityMatrix::maximally_mixed(3)), ValidationError);
  // Commuting case reduces to classical KL divergence.
  DensityMatrix p = DensityMatrix::diagonal({0.3, 0.7});
  DensityMatrix q = DensityMatrix::diagonal({0.6, 0.4});
  double kl = 0.3 * std::log2(0.3 / 0.6) + 0.7 * std::log2(0.7 / 0.4);
  CHECK(relative_entropy(p, q) == Catch::Approx(kl).margin(1e-12));
  // Nonnegativity (Klein inequality) on random pairs.
  for (int t = 0; t < 200; ++t) {
    DensityMatrix a = random_density(2, g), b = random_density(2, g);
    CHECK(relative_entropy(a, b) >= 0.0);
  }
}

TEST_CASE("kraus channel validation and factories", "[qstate]") {
  SECTION("incomplete operators rejected") {
    CMat half = 0.5 * CMat::Identity(2, 2);
    CHECK_THROWS_AS(KrausChannel({half}), ValidationError);
  }
  SECTION("mixed shapes rejected") {
    CHECK_THROWS_AS(KrausChannel({CMat::Identity(2, 2), CMat::Identity(3, 3)}), ValidationError);
  }
  SECTION("no operators rejected") {
    CHECK_THROWS_AS(KrausChannel(std::vector<CMat>{}), ValidationError);
  }
  SECTION("depolarizing strength outside [0,1] rejected") {
    CHECK_THROWS_AS(KrausChannel::depolarizing(1.2), DomainError);
    CHECK_THROWS_AS(KrausChannel::depolarizing(-0.1), DomainError);
  }
  SECTION("factories build valid channels") {
    CHECK(KrausChannel::identity(3).in_dim() == 3);
    CHECK(KrausChannel::depolarizing(0.7).out_dim() == 2);
    CHECK(KrausChannel::depolarizing(0.7, 3).in_dim() == 3);
    CHECK(KrausChannel::amplitude_damping(0.3).out_dim() == 2);
  }
}

TEST_CASE("apply channel", "[qstate]") {
  rng::Stream g(15, 0);
  DensityMatrix rho = random_density(2, g);
  SECTION("identity leaves the state alone") {
    CHECK(max_abs_diff(apply_channel(KrausChannel::identity(2), rho).entries(), rho.entries()) <
          1e-14);
  }
  SECTION("full depolarizing maps everything to I/2") {
    KrausChannel full = KrausChannel::depolarizing(1.0);
    for (int t = 0; t < 20; ++t) {
      DensityMatrix any = random_density(2, g);
      CHECK(max_abs_diff(apply_channel(full, any).entries(),
                         DensityMatrix::maximally_mixed(2).entries()) < 1e-12);
    }
  }
  SECTION("half depolarizing on |0><0|") {
    DensityMatrix out = apply_channel(KrausChannel::depolarizing(0.5), DensityMatrix::basis(2, 0));
    CHECK(max_abs_diff(out.entries(), DensityMatrix::diagonal({0.75, 0.25}).entries()) < 1e-12);
  }
  SECTION("dimension mismatch") {
    CHECK_THROWS_AS(apply_channel(KrausChannel::identity(3), rho), ValidationError);
  }
  SECTION("trace and positivity preserved on random inputs") {
    for (int t = 0; t < 1000; ++t) {
      int d = 2 + static_cast<int>(g.u64() % 2);  // 2 or 3
      KrausChannel phi = random_channel(d, d, 2, g);
      DensityMatrix in = random_density(d, g);
      DensityMatrix out = apply_channel(phi, in);  // ctor revalidates both invariants
      CHECK(std::abs(out.entries().trace().real() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("data processing and contractivity", "[qstate]") {
  rng::Stream g(16, 0);
  DensityMatrix rho = random_density(2, g);
  DensityMatrix sigma = random_density(2, g);
  SECTION("identity channel residuals vanish") {
    KrausChannel id = KrausChannel::identity(2);
    CHECK(std::abs(check_dpi(id, rho, sigma)) < 1e-9);
    CHECK(std::abs(check_contractivity(id, rho, sigma)) < 1e-12);
  }
  SECTION("fully depolarizing channel collapses the image") {
    KrausChannel full = KrausChannel::depolarizing(1.0);
    CHECK(check_dpi(full, rho, sigma) ==
          Catch::Approx(relative_entropy(rho, sigma)).margin(1e-9));
    CHECK(check_contractivity(full, rho, sigma) ==
          Catch::Approx(trace_distance(rho, sigma)).margin(1e-12));
  }
  SECTION("infinite pre-image divergence is trivially satisfied") {
    double r = check_dpi(KrausChannel::depolarizing(0.5), DensityMatrix::basis(2, 0),
                         DensityMatrix::basis(2, 1));
    CHECK(std::isinf(r));
    CHECK(r > 0.0);
  }
  SECTION("random triples never violate either inequality") {
    double min_dpi = std::numeric_limits<double>::infinity();
    double min_contract = std::numeric_limits<double>::infinity();
    for (int t = 0; t < 1000; ++t) {
      KrausChannel phi = random_channel(2, 2, 2, g);
      DensityMatrix a = random_density(2, g), b = random_density(2, g);
      double r1 = check_dpi(phi, a, b);
      if (!std::isinf(r1) && r1 < min_dpi) min_dpi = r1;
      double r2 = check_contractivity(phi, a, b);
      if (r2 < min_contract) min_contract = r2;
    }
    CHECK(min_dpi >= -1e-10);
    CHECK(min_contract >= -1e-10);
  }
}

TEST_CASE("fuchs van de graaf sandwich", "[qstate]") {
  rng::Stream g(17, 0);
  for (int t = 0; t < 1000; ++t) {
    DensityMatrix a = random_density(2, g), b = random_density(2, g);
    double f = fidelity(a, b);
    double half_t = 0.5 * trace_distance(a, b);
    CHECK(1.0 - std::sqrt(f) <= half_t + 1e-10);
    CHECK(half_t <= std::sqrt(std::max(0.0, 1.0 - f)) + 1e-10);
  }
}

TEST_CASE("tensor products", "[qstate]") {
  SECTION("mixed with mixed") {
    DensityMatrix out = tensor(DensityMatrix::maximally_mixed(2), DensityMatrix::maximally_mixed(2));
    CHECK(out.dim() == 4);
    CHECK(max_abs_diff(out.entries(), DensityMatrix::maximally_mixed(4).entries()) < 1e-14);
  }
  SECTION("pure with pure stays pure") {
    rng::Stream g(18, 0);
    DensityMatrix out = tensor(random_pure(2, g), random_pure(3, g));
    CHECK(out.dim() == 6);
    CHECK(von_neumann_entropy(out) == Catch::Approx(0.0).margin(1e-9));
  }
  SECTION("entropy is additive") {
    rng::Stream g(19, 0);
    for (int t = 0; t < 100; ++t) {
      DensityMatrix a = random_density(2, g), b = random_density(3, g);
      CHECK(von_neumann_entropy(tensor(a, b)) ==
            Catch::Approx(von_neumann_entropy(a) + von_neumann_entropy(b)).margin(1e-10));
    }
  }
  SECTION("channel tensor and composition stay trace preserving") {
    rng::Stream g(20, 0);
    for (int t = 0; t < 100; ++t) {
      KrausChannel a = random_channel(2, 2, 2, g);
      KrausChannel b = random_channel(2, 3, 2, g);
      KrausChannel both = tensor(a, b);       // ctor revalidates completeness
      KrausChannel chained = compose(b, a);   // b after a
      CHECK(both.in_dim() == 4);
      CHECK(both.out_dim() == 6);
      CHECK(chained.in_dim() == 2);
      CHECK(chained.out_dim() == 3);
      DensityMatrix rho = random_density(2, g);
      CHECK(max_abs_diff(apply_channel(chained, rho).entries(),
                         apply_channel(b, apply_channel(a, rho)).entries()) < 1e-12);
    }
  }
  SECTION("composition dimension mismatch") {
    CHECK_THROWS_AS(compose(KrausChannel::identity(3), KrausChannel::identity(2)),
                    ValidationError);
  }
}

TEST_CASE("random generators are seeded and valid", "[qstate]") {
  rng::Stream g1(21, 0), g2(21, 0), g3(22, 0);
  DensityMatrix a = random_density(3, g1);
  DensityMatrix b = random_density(3, g2);
  DensityMatrix c = random_density(3, g3);
  CHECK(max_abs_diff(a.entries(), b.entries()) == 0.0);
  CHECK(max_abs_diff(a.entries(), c.entries()) > 1e-3);
  CHECK(von_neumann_entropy(random_pure(4, g1)) == Catch::Approx(0.0).margin(1e-9));
  KrausChannel phi = random_channel(3, 2, 4, g1);
  CHECK(phi.in_dim() == 3);
  CHECK(phi.out_dim() == 2);
  CHECK(phi.kraus_ops().size() == 4);
  CHECK_THROWS_AS(random_channel(4, 1, 2, g1), DomainError);  // no isometry fits
}

TEST_CASE("state and channel json round trips", "[qstate]") {
  rng::Stream g(23, 0);
  SECTION("density matrix") {
    DensityMatrix rho = random_density(3, g);
    DensityMatrix back = DensityMatrix::from_json(rho.to_json());
    CHECK(max_abs_diff(back.entries(), rho.entries()) < 1e-15);
    nlohmann::json j = rho.to_json();
    CHECK(j.at("dim") == 3);
    CHECK(j.at("entries").size() == 9);
    CHECK(j.at("entries").at(0).size() == 2);
  }
  SECTION("kraus channel") {
    KrausChannel phi = random_channel(2, 3, 2, g);
    KrausChannel back = KrausChannel::from_json(phi.to_json());
    REQUIRE(back.kraus_ops().size() == phi.kraus_ops().size());
    for (std::size_t i = 0; i < phi.kraus_ops().size(); ++i)
      CHECK(max_abs_diff(back.kraus_ops()[i], phi.kraus_ops()[i]) < 1e-15);
  }
  SECTION("malformed json rejected") {
    CHECK_THROWS_AS(DensityMatrix::from_json(nlohmann::json{{"dim", 2}, {"entries", {1, 2, 3}}}),
                    ValidationError);
    CHECK_THROWS_AS(DensityMatrix::from_json(nlohmann::json{{"dim", 0}, {"entries", nlohmann::json::array()}}),
                    ValidationError);
    CHECK_THROWS_AS(DensityMatrix::from_json(nlohmann::json{{"entries", nlohmann::json::array()}}),
                    ValidationError);
    nlohmann::json bad_entry = nlohmann::json{
        {"dim", 1}, {"entries", nlohmann::json::array({nlohmann::json::array({1.0})})}};
    CHECK_THROWS_AS(DensityMatrix::from_json(bad_entry), ValidationError);
  }
}
