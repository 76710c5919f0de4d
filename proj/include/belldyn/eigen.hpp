#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

#include "belldyn/errors.hpp"
#include "belldyn/matrix.hpp"

namespace belldyn {

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kJacobiOffDiagTol = 1e-14;
inline constexpr int kJacobiMaxSweeps = 50;

namespace detail {

template <std::size_t N>
inline double off_diagonal_frobenius(const Matrix<N> &m) {
    double s = 0.0;
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c)
            if (r != c)
                s += std::norm(m(r, c));
    return std::sqrt(s);
}

// One complex Jacobi rotation annihilating the (p,q) entry. The pivot phase
// is absorbed into the rotation so the 2x2 subproblem reduces to the real
// symmetric case.
template <std::size_t N>
inline void jacobi_rotate(Matrix<N> &a, std::size_t p, std::size_t q) {
    const Complex beta = a(p, q);
    const double b = std::abs(beta);
    if (b < 1e-300)
        return;
    const double alpha = a(p, p).real();
    const double gamma = a(q, q).real();
    const double tau = (gamma - alpha) / (2.0 * b);
    const double t = (tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                 : -1.0 / (-tau + std::sqrt(1.0 + tau * tau)));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    const Complex phase = beta / b; // e^{i arg beta}

    Matrix<N> r = Matrix<N>::identity();
    r(p, p) = c;
    r(p, q) = s;
    r(q, p) = -s * std::conj(phase);
    r(q, q) = c * std::conj(phase);
    a = r.adjoint() * a * r;
}

} // namespace detail

// Eigenvalues of a complex Hermitian matrix, ascending, by cyclic Jacobi
// rotations. Sweeps run until the off-diagonal Frobenius mass drops below
// kJacobiOffDiagTol (at most kJacobiMaxSweeps; a handful suffices at these
// sizes). Throws NotHermitian when max |m - m†| exceeds kHermitianTol.
template <std::size_t N>
inline std::array<double, N> eigenvalues_hermitian(const Matrix<N> &m) {
    if (!m.all_finite())
        throw NotHermitian("matrix has non-finite entries");
    if (hermiticity_defect(m) > kHermitianTol)
        throw NotHermitian("matrix is not Hermitian within tolerance");

    // Work on the exactly Hermitian part; the defect is within tolerance.
    Matrix<N> a = 0.5 * (m + m.adjoint());
    for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
        if (detail::off_diagonal_frobenius(a) < kJacobiOffDiagTol)
            break;
        for (std::size_t p = 0; p + 1 < N; ++p)
            for (std::size_t q = p + 1; q < N; ++q)
                detail::jacobi_rotate(a, p, q);
    }

    std::array<double, N> ev;
    for (std::size_t i = 0; i < N; ++i)
        ev[i] = a(i, i).real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

} // namespace belldyn
