#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "belldyn/errors.hpp"
#include "belldyn/state.hpp"

namespace belldyn {

// A scan counts as frozen when its values span no more than this.
inline constexpr double kFrozenTol = 1e-9;

// Entropy differences can land a hair below zero; anything this close is
// treated as exact zero.
inline constexpr double kEntropyClampTol = 1e-10;

enum class CoherenceMeasure { L1, RelEnt };

inline const char *measure_name(CoherenceMeasure m) {
    return m == CoherenceMeasure::L1 ? "C_l1" : "C_r";
}

// Sum of moduli of the off-diagonal entries.
inline double c_l1(const TwoQubitDensity &rho) {
    const Matrix4 &m = rho.matrix();
    double sum = 0.0;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            if (r != c)
                sum += std::abs(m(r, c));
    return sum;
}

// Bell-diagonal specialization: the four off-diagonal entries pair up into
// |c1+c2|/4 and |c1-c2|/4 twice each, and the resulting half-sum collapses
// to max(|c1|,|c2|). The max form is evaluated because it is exact: a map
// that leaves the dominant coefficient alone leaves the measure bit-equal.
inline double c_l1_bell(const BellDiagonalCoeffs &c) {
    return std::max(std::abs(c.c1), std::abs(c.c2));
}

namespace detail {

inline double clamp_coherence(double v) {
    if (v < 0.0 && v >= -kEntropyClampTol)
        return 0.0;
    return v;
}

} // namespace detail

// Entropy of the dephased state minus entropy of the state, in bits.
inline double c_rel(const TwoQubitDensity &rho) {
    return detail::clamp_coherence(von_neumann_entropy(dephase(rho)) -
                                   von_neumann_entropy(rho));
}

// Bell-diagonal specialization, evaluated termwise: quarter-weighted
// x*log2(x) over the four combinations 1 +/- c1 +/- c2 +/- c3 minus the
// half-weighted terms in 1 +/- c3 coming from the dephased spectrum.
inline double c_rel_bell(const BellDiagonalCoeffs &c) {
    const double quarter =
        xlog2x(1.0 - c.c1 - c.c2 - c.c3) + xlog2x(1.0 - c.c1 + c.c2 + c.c3) +
        xlog2x(1.0 + c.c1 - c.c2 + c.c3) + xlog2x(1.0 + c.c1 + c.c2 - c.c3);
    const double half = xlog2x(1.0 + c.c3) + xlog2x(1.0 - c.c3);
    return detail::clamp_coherence(0.25 * quarter - 0.5 * half);
}

struct FrozenReport {
    bool is_frozen = false;
    double max_deviation = 0.0;
    CoherenceMeasure measure = CoherenceMeasure::L1;
    std::size_t grid_size = 0;
};

// Spread (max minus min) of coherence values over a scan. Grid points ride
// along only for context; the verdict depends on the values alone.
inline FrozenReport frozen_scan(const std::vector<std::pair<double, double>> &values,
                                CoherenceMeasure measure) {
    if (values.size() < 2)
        throw EmptyInput("frozen scan needs at least two samples");
    double lo = values.front().second;
    double hi = lo;
    for (const auto &[grid_point, value] : values) {
        (void)grid_point;
        lo = std::min(lo, value);
        hi = std::max(hi, value);
    }
    FrozenReport report;
    report.max_deviation = hi - lo;
    report.is_frozen = report.max_deviation <= kFrozenTol;
    report.measure = measure;
    report.grid_size = values.size();
    return report;
}

} // namespace belldyn
