#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "belldyn/eigen.hpp"
#include "belldyn/errors.hpp"
#include "belldyn/matrix.hpp"

namespace belldyn {

inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = -1e-10;
inline constexpr double kPhysicalityTol = -1e-12;
inline constexpr double kBellRecognitionTol = 1e-9;

// Correlation triple (c1, c2, c3) of a Bell-diagonal two-qubit state
//   rho = (I (x) I + sum_i c_i sigma_i (x) sigma_i) / 4.
struct BellDiagonalCoeffs {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;

    bool operator==(const BellDiagonalCoeffs &) const = default;
};

// The four eigenvalues of the associated density matrix, one per Bell state,
// in a fixed (unsorted) order.
inline std::array<double, 4> bell_eigenvalues(const BellDiagonalCoeffs &c) {
    return {(1.0 - c.c1 - c.c2 - c.c3) / 4.0, (1.0 - c.c1 + c.c2 + c.c3) / 4.0,
            (1.0 + c.c1 - c.c2 + c.c3) / 4.0, (1.0 + c.c1 + c.c2 - c.c3) / 4.0};
}

inline bool is_physical(const BellDiagonalCoeffs &c) {
    for (double ev : bell_eigenvalues(c))
        if (ev < kPhysicalityTol)
            return false;
    return true;
}

namespace detail {

// Bell-diagonal matrix assembled entrywise, without any physicality gate.
// Used both as the construction backend and as the recognition reference.
inline Matrix4 bell_matrix(const BellDiagonalCoeffs &c) {
    Matrix4 m;
    m(0, 0) = m(3, 3) = (1.0 + c.c3) / 4.0;
    m(1, 1) = m(2, 2) = (1.0 - c.c3) / 4.0;
    m(0, 3) = m(3, 0) = (c.c1 - c.c2) / 4.0;
    m(1, 2) = m(2, 1) = (c.c1 + c.c2) / 4.0;
    return m;
}

} // namespace detail

// Validated 4x4 density matrix: Hermitian and unit-trace within 1e-10,
// eigenvalues no lower than -1e-10. Immutable after construction.
class TwoQubitDensity {
  public:
    explicit TwoQubitDensity(const Matrix4 &m) : m_(m) {
        if (!m.all_finite())
            throw NotHermitian("density matrix has non-finite entries");
        if (hermiticity_defect(m) > kHermitianTol)
            throw NotHermitian("density matrix is not Hermitian within tolerance");
        if (std::abs(m.trace() - Complex(1.0, 0.0)) > kTraceTol)
            throw PhysicalityViolation("density matrix trace differs from 1");
        const auto ev = eigenvalues_hermitian(m);
        if (ev.front() < kPsdTol)
            throw PhysicalityViolation("density matrix has a negative eigenvalue: " +
                                       std::to_string(ev.front()));
    }

    const Matrix4 &matrix() const { return m_; }

    std::array<double, 4> eigenvalues() const { return eigenvalues_hermitian(m_); }

  private:
    Matrix4 m_;
};

// rho = (I (x) I + sum_i c_i sigma_i (x) sigma_i) / 4. Rejects coefficient
// triples whose Bell-state weights would go negative.
inline TwoQubitDensity bell_to_density(const BellDiagonalCoeffs &c) {
    if (!is_physical(c))
        throw PhysicalityViolation("Bell-diagonal coefficients are unphysical");
    return TwoQubitDensity(detail::bell_matrix(c));
}

// Correlation extraction c_i = Tr(rho sigma_i (x) sigma_i) without the
// recognition gate; empty optional when rho is not Bell-diagonal.
inline std::optional<BellDiagonalCoeffs> try_density_to_bell(const TwoQubitDensity &rho) {
    const Matrix4 &m = rho.matrix();
    BellDiagonalCoeffs c;
    c.c1 = (m(0, 3) + m(1, 2) + m(2, 1) + m(3, 0)).real();
    c.c2 = (-m(0, 3) + m(1, 2) + m(2, 1) - m(3, 0)).real();
    c.c3 = (m(0, 0) - m(1, 1) - m(2, 2) + m(3, 3)).real();
    if (m.max_abs_diff(detail::bell_matrix(c)) > kBellRecognitionTol)
        return std::nullopt;
    return c;
}

inline BellDiagonalCoeffs density_to_bell(const TwoQubitDensity &rho) {
    auto c = try_density_to_bell(rho);
    if (!c)
        throw NotBellDiagonal("density matrix is not Bell-diagonal within tolerance");
    return *c;
}

// Full dephasing in the computational basis: keep the diagonal.
inline TwoQubitDensity dephase(const TwoQubitDensity &rho) {
    Matrix4 m;
    for (std::size_t i = 0; i < 4; ++i)
        m(i, i) = rho.matrix()(i, i).real();
    return TwoQubitDensity(m);
}

// x log2(x) with the 0 log 0 = 0 convention; round-off slightly below zero
// is treated as zero.
inline double xlog2x(double x) {
    if (x <= 0.0)
        return 0.0;
    return x * std::log2(x);
}

// Von Neumann entropy in bits. Eigenvalues within the PSD tolerance below
// zero are clamped before the log.
inline double von_neumann_entropy(const TwoQubitDensity &rho) {
    double s = 0.0;
    for (double ev : rho.eigenvalues())
        s -= xlog2x(ev);
    return s;
}

} // namespace belldyn
