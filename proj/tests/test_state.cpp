#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "belldyn/state.hpp"

#include "test_util.hpp"

using namespace belldyn;

namespace {
const BellDiagonalCoeffs kExample{0.3, -0.4, 0.56};
}

TEST_CASE("zero coefficients give the maximally mixed state") {
    const Matrix4 m = bell_to_density({0.0, 0.0, 0.0}).matrix();
    REQUIRE(m.max_abs_diff(0.25 * Matrix4::identity()) == 0.0);
}

TEST_CASE("coefficients (1,-1,1) give a pure state with half corners") {
    const Matrix4 m = bell_to_density({1.0, -1.0, 1.0}).matrix();
    Matrix4 want;
    want(0, 0) = want(3, 3) = 0.5;
    want(0, 3) = want(3, 0) = 0.5;
    REQUIRE(m.max_abs_diff(want) == 0.0);
}

TEST_CASE("worked example state has the expected matrix entries") {
    const Matrix4 m = bell_to_density(kExample).matrix();
    REQUIRE(m(0, 0).real() == Catch::Approx(0.39).margin(1e-15));
    REQUIRE(m(1, 1).real() == Catch::Approx(0.11).margin(1e-15));
    REQUIRE(m(2, 2).real() == Catch::Approx(0.11).margin(1e-15));
    REQUIRE(m(3, 3).real() == Catch::Approx(0.39).margin(1e-15));
    REQUIRE(m(0, 3).real() == Catch::Approx(0.175).margin(1e-15));
    REQUIRE(m(3, 0).real() == Catch::Approx(0.175).margin(1e-15));
    REQUIRE(m(1, 2).real() == Catch::Approx(-0.025).margin(1e-15));
    REQUIRE(m(2, 1).real() == Catch::Approx(-0.025).margin(1e-15));

    // Same matrix from the operator-basis expansion, term by term.
    Matrix4 expanded = 0.25 * kron(Matrix2::identity(), Matrix2::identity());
    expanded += 0.25 * 0.3 * kron(pauli_x(), pauli_x());
    expanded += 0.25 * -0.4 * kron(pauli_y(), pauli_y());
    expanded += 0.25 * 0.56 * kron(pauli_z(), pauli_z());
    REQUIRE(m.max_abs_diff(expanded) <= 1e-15);
}

TEST_CASE("unphysical coefficients are rejected") {
    REQUIRE_FALSE(is_physical({1.0, 1.0, 1.0}));
    REQUIRE_THROWS_AS(bell_to_density({1.0, 1.0, 1.0}), PhysicalityViolation);
}

TEST_CASE("coefficient extraction inverts construction") {
    REQUIRE(density_to_bell(bell_to_density({0, 0, 0})) ==
            BellDiagonalCoeffs{0.0, 0.0, 0.0});

    const BellDiagonalCoeffs back = density_to_bell(bell_to_density(kExample));
    REQUIRE(std::abs(back.c1 - 0.3) <= 1e-12);
    REQUIRE(std::abs(back.c2 + 0.4) <= 1e-12);
    REQUIRE(std::abs(back.c3 - 0.56) <= 1e-12);
}

TEST_CASE("round trip holds across random physical states") {
    for (const auto &c : testutil::random_states(1000, 101)) {
        const BellDiagonalCoeffs back = density_to_bell(bell_to_density(c));
        REQUIRE(std::abs(back.c1 - c.c1) <= 1e-12);
        REQUIRE(std::abs(back.c2 - c.c2) <= 1e-12);
        REQUIRE(std::abs(back.c3 - c.c3) <= 1e-12);
    }
}

TEST_CASE("a damped state with unpaired diagonal is not recognized") {
    // One-sided amplitude damping at half strength moves population off the
    // paired pattern; extraction must refuse it.
    const double root_half = std::sqrt(0.5);
    Matrix4 m;
    m(0, 0) = 0.445;
    m(1, 1) = 0.305;
    m(2, 2) = 0.055;
    m(3, 3) = 0.195;
    m(0, 3) = m(3, 0) = 0.7 * root_half / 4.0;
    m(1, 2) = m(2, 1) = -0.1 * root_half / 4.0;
    const TwoQubitDensity rho(m);
    REQUIRE_FALSE(try_density_to_bell(rho).has_value());
    REQUIRE_THROWS_AS(density_to_bell(rho), NotBellDiagonal);
}

TEST_CASE("state eigenvalues match the four closed-form expressions") {
    const auto ev = bell_to_density(kExample).eigenvalues();
    REQUIRE(ev[0] == Catch::Approx(0.085).margin(1e-12));
    REQUIRE(ev[1] == Catch::Approx(0.135).margin(1e-12));
    REQUIRE(ev[2] == Catch::Approx(0.215).margin(1e-12));
    REQUIRE(ev[3] == Catch::Approx(0.565).margin(1e-12));

    for (const auto &c : testutil::random_states(300, 103)) {
        auto want = bell_eigenvalues(c);
        std::sort(want.begin(), want.end());
        const auto got = bell_to_density(c).eigenvalues();
        for (int i = 0; i < 4; ++i)
            REQUIRE(std::abs(got[i] - want[i]) <= 1e-12);
    }
}

TEST_CASE("density matrix validation rejects bad input") {
    Matrix4 skew;
    skew(0, 0) = skew(1, 1) = skew(2, 2) = skew(3, 3) = 0.25;
    skew(0, 1) = 0.1; // missing the mirrored entry
    REQUIRE_THROWS_AS(TwoQubitDensity(skew), NotHermitian);

    const Matrix4 half = 0.5 * Matrix4::identity();
    REQUIRE_THROWS_AS(TwoQubitDensity(half), PhysicalityViolation);

    Matrix4 indefinite;
    indefinite(0, 0) = 1.5;
    indefinite(1, 1) = -0.5;
    REQUIRE_THROWS_AS(TwoQubitDensity(indefinite), PhysicalityViolation);
}

TEST_CASE("dephase keeps the diagonal and kills the rest") {
    const TwoQubitDensity diag(0.25 * Matrix4::identity());
    REQUIRE(dephase(diag).matrix().max_abs_diff(diag.matrix()) == 0.0);

    const Matrix4 pure = dephase(bell_to_density({1, -1, 1})).matrix();
    Matrix4 want;
    want(0, 0) = want(3, 3) = 0.5;
    REQUIRE(pure.max_abs_diff(want) == 0.0);

    for (const auto &c : testutil::random_states(100, 107)) {
        const TwoQubitDensity rho = bell_to_density(c);
        const TwoQubitDensity d = dephase(rho);
        for (int i = 0; i < 4; ++i) {
            const double want_d =
                i == 0 || i == 3 ? (1 + c.c3) / 4.0 : (1 - c.c3) / 4.0;
            REQUIRE(std::abs(d.matrix()(i, i).real() - want_d) <= 1e-15);
        }
        REQUIRE(dephase(d).matrix().max_abs_diff(d.matrix()) == 0.0);
        REQUIRE(std::abs(d.matrix().trace().real() - 1.0) <= 1e-12);
    }
}

TEST_CASE("entropy of reference states") {
    REQUIRE(von_neumann_entropy(TwoQubitDensity(0.25 * Matrix4::identity())) ==
            Catch::Approx(2.0).margin(1e-12));
    REQUIRE(von_neumann_entropy(bell_to_density({1, -1, 1})) ==
            Catch::Approx(0.0).margin(1e-12));

    double want = 0.0;
    for (double ev : {0.085, 0.135, 0.215, 0.565})
        want -= ev * std::log2(ev);
    REQUIRE(von_neumann_entropy(bell_to_density(kExample)) ==
            Catch::Approx(want).margin(1e-12));
}

TEST_CASE("entropy stays within two qubits' worth of bits") {
    for (const auto &c : testutil::random_states(300, 109)) {
        const double s = von_neumann_entropy(bell_to_density(c));
        REQUIRE(s >= 0.0);
        REQUIRE(s <= 2.0 + 1e-12);
    }
}

TEST_CASE("xlog2x handles the zero limit") {
    REQUIRE(xlog2x(0.0) == 0.0);
    REQUIRE(xlog2x(-1e-12) == 0.0);
    REQUIRE(xlog2x(0.5) == Catch::Approx(-0.5).margin(1e-15));
    REQUIRE(xlog2x(1.0) == 0.0);
}
