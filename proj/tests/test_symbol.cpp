#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "test_rng.hpp"
#include "vpfp/spectral.hpp"
#include "vpfp/symbol.hpp"

using namespace vpfp;

namespace {
constexpr int kN = 32;
}

TEST_CASE("symbol rejects s <= 0 and accepts the eps -> 0 closure") {
  const HermiteBasis basis(kN);
  CHECK_THROWS_AS(assemble_B(0.0, 0.1, basis), std::invalid_argument);
  CHECK_THROWS_AS(assemble_B(-1.0, 0.1, basis), std::invalid_argument);
  CHECK_THROWS_AS(assemble_B(1.0, -0.1, basis), std::invalid_argument);
  CHECK_THROWS_AS(assemble_B(1.0, 1.0, basis), std::invalid_argument);

  const SymbolMatrix b0 = assemble_B(1.0, 0.0, basis);
  for (int r = 0; r < kN; ++r) {
    for (int c = 0; c < kN; ++c) {
      const Complex expected = r == c ? Complex(-double(r), 0.0) : Complex(0.0);
      CHECK(std::abs(b0.entries(r, c) - expected) == 0.0);
    }
  }
}

TEST_CASE("full symbol carries the ladder and the rank-one Poisson band") {
  const HermiteBasis basis(kN);
  const double s = 0.7, eps = 0.3;
  const SymbolMatrix b = assemble_B(s, eps, basis);
  const Complex i{0.0, 1.0};
  CHECK(b.entries(0, 1) == -i * eps * s * std::sqrt(1.0));
  CHECK(b.entries(1, 2) == -i * eps * s * std::sqrt(2.0));
  // Poisson coupling adds to the (1,0) ladder entry only.
  CHECK(b.entries(1, 0) == -i * eps * s - i * eps / s);
  CHECK(b.entries(2, 0) == Complex(0.0));
}

TEST_CASE("assembled symbol is dissipative in the weighted product") {
  const HermiteBasis basis(kN);
  std::mt19937_64 rng(3);
  for (double s : {0.3, 1.0, 2.5}) {
    for (double eps : {0.05, 0.3, 0.9}) {
      const SymbolMatrix b = assemble_B(s, eps, basis);
      for (int trial = 0; trial < 16; ++trial) {
        const VelocityCoeffs f = testing::random_unit_coeffs(rng, kN);
        const VelocityCoeffs bf = b.entries * f;
        CHECK(std::real(weighted_inner(bf, f, s)) <= 1e-12);
        // Re (B f, f)_s equals (L f, f) exactly.
        double lff = 0.0;
        for (int n = 0; n < kN; ++n) lff -= n * std::norm(f[n]);
        CHECK(std::real(weighted_inner(bf, f, s)) ==
              doctest::Approx(lff).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("adjoint identity (B(s)f, g)_s = (f, B(-s)g)_s") {
  const HermiteBasis basis(kN);
  std::mt19937_64 rng(5);
  const double s = 0.8, eps = 0.25;
  const SymbolMatrix b = assemble_B(s, eps, basis);
  // s -> -s flips both skew terms, which is entrywise conjugation here.
  const Eigen::MatrixXcd b_neg = b.entries.conjugate();
  for (int trial = 0; trial < 16; ++trial) {
    const VelocityCoeffs f = testing::random_coeffs(rng, kN);
    const VelocityCoeffs g = testing::random_coeffs(rng, kN);
    const Complex lhs = weighted_inner(b.entries * f, g, s);
    const Complex rhs = weighted_inner(f, b_neg * g, s);
    CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(lhs)));
  }
}

TEST_CASE("weighted inner product values and bounds") {
  const HermiteBasis basis(kN);
  CHECK(weighted_inner(basis.unit(0), basis.unit(0), 1.0) == Complex(2.0));
  for (double s : {0.4, 1.0, 3.0}) {
    CHECK(weighted_inner(basis.unit(1), basis.unit(1), s) == Complex(1.0));
  }
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 16; ++trial) {
    const double s = 0.3 + 0.5 * trial;
    const VelocityCoeffs f = testing::random_coeffs(rng, kN);
    const double plain = f.squaredNorm();
    const double weighted = std::real(weighted_inner(f, f, s));
    CHECK(weighted >= plain - 1e-14);
    CHECK(weighted <= (1.0 + 1.0 / (s * s)) * plain + 1e-14);
  }
}

TEST_CASE("bilinear pairing drops the conjugation") {
  const HermiteBasis basis(kN);
  std::mt19937_64 rng(13);
  const double s = 1.3;
  const VelocityCoeffs f = testing::random_coeffs(rng, kN);
  const VelocityCoeffs g = testing::random_coeffs(rng, kN);
  CHECK(std::abs(bilinear_pair(f, g, s) -
                 weighted_inner(f, g.conjugate(), s)) < 1e-14);
}

TEST_CASE("microscopic symbol acts on the complement of the null space") {
  const HermiteBasis basis(kN);
  const SymbolMatrix q0 = assemble_Q(1.0, 0.0, basis);
  for (int r = 0; r < kN; ++r) {
    for (int c = 0; c < kN; ++c) {
      const Complex expected =
          (r == c && r > 0) ? Complex(-double(r), 0.0) : Complex(0.0);
      CHECK(q0.entries(r, c) == expected);
    }
  }

  const SymbolMatrix q = assemble_Q(1.0, 0.1, basis);
  CHECK(q.entries.row(0).cwiseAbs().maxCoeff() == 0.0);
  CHECK(q.entries.col(0).cwiseAbs().maxCoeff() == 0.0);

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 16; ++trial) {
    VelocityCoeffs f = testing::random_coeffs(rng, kN);
    f[0] = 0.0;
    const VelocityCoeffs qf = q.entries * f;
    CHECK(std::real(f.dot(qf)) <= -f.squaredNorm() + 1e-12);
  }
}

TEST_CASE("microscopic spectrum sits left of -1") {
  const HermiteBasis basis(kN);
  const SymbolMatrix q = assemble_Q(1.0, 0.1, basis);
  // Dense eigensolve is the oracle here; the zeroed row/column contributes
  // one trivial zero eigenvalue.
  const std::vector<Complex> eigs = direct_spectrum(q);
  int nonzero = 0;
  for (const Complex& l : eigs) {
    if (std::abs(l) < 1e-12) continue;  // padding from the zeroed row/column
    ++nonzero;
    CHECK(l.real() <= -1.0 + 1e-10);
  }
  CHECK(nonzero == kN - 1);
}

TEST_CASE("spectral gap holds for eps*s above the fluid regime") {
  const HermiteBasis basis(kN);
  for (auto [s, eps] : {std::pair{1.0, 0.5}, std::pair{2.5, 0.2},
                        std::pair{5.0, 0.1}}) {
    const std::vector<Complex> eigs = direct_spectrum(s, eps, basis);
    const double alpha_measured = -eigs.front().real();
    CHECK(alpha_measured > 0.0);
    MESSAGE("eps*s = ", eps * s, ": measured spectral gap alpha = ",
            alpha_measured);
  }
}

TEST_CASE("exactly one eigenvalue sits right of -1/2 in the fluid regime") {
  const HermiteBasis basis(kN);
  for (auto [s, eps] : {std::pair{1.0, 0.05}, std::pair{0.5, 0.1},
                        std::pair{2.0, 0.08}}) {
    REQUIRE(eps * (1.0 + s) <= 0.3);
    const std::vector<Complex> eigs = direct_spectrum(s, eps, basis);
    int count = 0;
    for (const Complex& l : eigs) {
      if (l.real() > -0.5) ++count;
    }
    CHECK(count == 1);
  }
}
