#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "belldyn/errors.hpp"
#include "belldyn/matrix.hpp"
#include "belldyn/state.hpp"

namespace belldyn {

inline constexpr double kCompletenessTol = 1e-12;
inline constexpr long kIterationCap = 10000;

// Single-qubit noise channels. BF/PF/BPF flip through sigma_1/sigma_3/sigma_2
// with probability p/2, DEP contracts the whole Bloch vector, GAD mixes
// damping toward both poles (weight p, damping gamma), AD damps toward |0>,
// ID is the identity channel.
enum class ChannelKind { BF, PF, BPF, DEP, GAD, AD, ID };

inline const char *channel_name(ChannelKind k) {
    switch (k) {
    case ChannelKind::BF:
        return "bf";
    case ChannelKind::PF:
        return "pf";
    case ChannelKind::BPF:
        return "bpf";
    case ChannelKind::DEP:
        return "dep";
    case ChannelKind::GAD:
        return "gad";
    case ChannelKind::AD:
        return "ad";
    default:
        return "id";
    }
}

struct ChannelParams {
    double p = 0.0;     // decoherence probability
    double gamma = 0.0; // GAD damping; ignored elsewhere
};

// Kraus operators of a qubit channel. The factory below always produces a
// complete set; the struct itself does not enforce completeness so that
// truncated sets can be constructed and measured.
struct KrausSet {
    std::vector<Matrix2> ops;
};

// Which qubit of the pair a one-sided channel acts on.
enum class Side { First, Second };

// Max-norm of sum_k E_k† E_k - I.
inline double completeness_defect(const KrausSet &k) {
    Matrix2 s;
    for (const auto &e : k.ops)
        s += e.adjoint() * e;
    return s.max_abs_diff(Matrix2::identity());
}

namespace detail {

inline void require_unit_range(double v, const char *name) {
    if (!(v >= 0.0 && v <= 1.0))
        throw ParamOutOfRange(std::string(name) + " must lie in [0,1], got " +
                              std::to_string(v));
}

} // namespace detail

// Kraus operators for the supported channels. BF/PF/BPF and AD have two
// operators, DEP and GAD four, ID one. Endpoints p, gamma in {0,1} are
// admitted as analytic limits.
inline KrausSet kraus_set(ChannelKind kind, ChannelParams params) {
    detail::require_unit_range(params.p, "p");
    if (kind == ChannelKind::GAD)
        detail::require_unit_range(params.gamma, "gamma");

    const double p = params.p;
    KrausSet set;
    switch (kind) {
    case ChannelKind::BF:
        set.ops = {std::sqrt(1.0 - p / 2.0) * Matrix2::identity(),
                   std::sqrt(p / 2.0) * pauli_x()};
        break;
    case ChannelKind::PF:
        set.ops = {std::sqrt(1.0 - p / 2.0) * Matrix2::identity(),
                   std::sqrt(p / 2.0) * pauli_z()};
        break;
    case ChannelKind::BPF:
        set.ops = {std::sqrt(1.0 - p / 2.0) * Matrix2::identity(),
                   std::sqrt(p / 2.0) * pauli_y()};
        break;
    case ChannelKind::DEP:
        set.ops = {std::sqrt(1.0 - p) * Matrix2::identity(),
                   std::sqrt(p / 3.0) * pauli_x(), std::sqrt(p / 3.0) * pauli_y(),
                   std::sqrt(p / 3.0) * pauli_z()};
        break;
    case ChannelKind::GAD: {
        const double g = params.gamma;
        Matrix2 e0, e1, e2, e3;
        e0(0, 0) = 1.0;
        e0(1, 1) = std::sqrt(1.0 - g);
        e1(0, 1) = std::sqrt(g);
        e2(0, 0) = std::sqrt(1.0 - g);
        e2(1, 1) = 1.0;
        e3(1, 0) = std::sqrt(g);
        set.ops = {std::sqrt(p) * e0, std::sqrt(p) * e1, std::sqrt(1.0 - p) * e2,
                   std::sqrt(1.0 - p) * e3};
        break;
    }
    case ChannelKind::AD: {
        Matrix2 e0, e1;
        e0(0, 0) = 1.0;
        e0(1, 1) = std::sqrt(1.0 - p);
        e1(0, 1) = std::sqrt(p);
        set.ops = {e0, e1};
        break;
    }
    case ChannelKind::ID:
        set.ops = {Matrix2::identity()};
        break;
    }
    return set;
}

// rho -> sum_k (E_k (x) I) rho (E_k (x) I)† for Side::First,
// with I (x) E_k for Side::Second.
inline TwoQubitDensity apply_one_side(const TwoQubitDensity &rho, const KrausSet &k,
                                      Side side) {
    const Matrix2 id = Matrix2::identity();
    Matrix4 out;
    for (const auto &e : k.ops) {
        const Matrix4 op =
            side == Side::First ? kron(e, id) : kron(id, e);
        out += op * rho.matrix() * op.adjoint();
    }
    return TwoQubitDensity(out);
}

// rho -> sum_{i,j} (E_i (x) F_j) rho (E_i (x) F_j)†. Factorizes as the
// one-sided maps composed in either order.
inline TwoQubitDensity apply_both(const TwoQubitDensity &rho, const KrausSet &ka,
                                  const KrausSet &kb) {
    Matrix4 out;
    for (const auto &e : ka.ops)
        for (const auto &f : kb.ops) {
            const Matrix4 op = kron(e, f);
            out += op * rho.matrix() * op.adjoint();
        }
    return TwoQubitDensity(out);
}

// n-fold one-sided application; n = 0 is the identity. Iteration is capped:
// this engine exists to verify closed forms, which take over for large n.
inline TwoQubitDensity apply_n(const TwoQubitDensity &rho, const KrausSet &k,
                               Side side, long n) {
    if (n < 0)
        throw ParamOutOfRange("application count must be non-negative");
    if (n > kIterationCap)
        throw IterationCapExceeded("application count " + std::to_string(n) +
                                   " exceeds cap " + std::to_string(kIterationCap));
    TwoQubitDensity out = rho;
    for (long i = 0; i < n; ++i)
        out = apply_one_side(out, k, side);
    return out;
}

} // namespace belldyn
