#pragma once

#include <cmath>
#include <string>

#include "belldyn/channels.hpp"
#include "belldyn/errors.hpp"
#include "belldyn/state.hpp"

namespace belldyn {

// Magnitudes below this flush to exactly zero in closed-form powers.
inline constexpr double kPowerFlushTol = 1e-300;

struct RateParams {
    double p = 0.0;
    double q = 0.0;
};

enum class SamePair { PfPf, BfBf, BpfBpf };
enum class DiffPair { BfPf, BfBpf, PfBpf };

inline const char *same_pair_name(SamePair s) {
    switch (s) {
    case SamePair::PfPf:
        return "PF-PF";
    case SamePair::BfBf:
        return "BF-BF";
    default:
        return "BPF-BPF";
    }
}

inline const char *diff_pair_name(DiffPair d) {
    switch (d) {
    case DiffPair::BfPf:
        return "BF-PF";
    case DiffPair::BfBpf:
        return "BF-BPF";
    default:
        return "PF-BPF";
    }
}

// One tabulated coefficient map: a single channel applied once or n times,
// or a channel per qubit (same or different types) applied once or n times.
class MapFamily {
  public:
    enum class Tag { Single, NFold, BisideSame, BisideSameN, BisideDiff, BisideDiffN };

    static MapFamily single(ChannelKind kind) {
        return MapFamily(Tag::Single, kind, 1);
    }

    static MapFamily nfold(ChannelKind kind, long n) {
        return MapFamily(Tag::NFold, kind, n);
    }

    static MapFamily biside_same(SamePair pair) {
        return MapFamily(Tag::BisideSame, pair, 1);
    }

    static MapFamily biside_same_n(SamePair pair, long n) {
        return MapFamily(Tag::BisideSameN, pair, n);
    }

    static MapFamily biside_diff(DiffPair pair) {
        return MapFamily(Tag::BisideDiff, pair, 1);
    }

    static MapFamily biside_diff_n(DiffPair pair, long n) {
        return MapFamily(Tag::BisideDiffN, pair, n);
    }

    Tag tag() const { return tag_; }
    ChannelKind kind() const { return kind_; }
    SamePair same_pair() const { return same_; }
    DiffPair diff_pair() const { return diff_; }
    long count() const { return n_; }

    bool is_biside() const {
        return tag_ != Tag::Single && tag_ != Tag::NFold;
    }

    std::string name() const {
        switch (tag_) {
        case Tag::Single:
            return std::string("single:") + channel_name(kind_);
        case Tag::NFold:
            return std::string("nfold:") + channel_name(kind_);
        case Tag::BisideSame:
            return std::string("pair:") + same_pair_name(same_);
        case Tag::BisideSameN:
            return std::string("pair_n:") + same_pair_name(same_);
        case Tag::BisideDiff:
            return std::string("pair:") + diff_pair_name(diff_);
        default:
            return std::string("pair_n:") + diff_pair_name(diff_);
        }
    }

  private:
    MapFamily(Tag tag, ChannelKind kind, long n) : tag_(tag), kind_(kind), n_(n) {
        if (kind == ChannelKind::AD || kind == ChannelKind::ID)
            throw UnsupportedCombination(
                std::string(channel_name(kind)) +
                " has no tabulated coefficient map");
        check_count();
    }

    MapFamily(Tag tag, SamePair pair, long n) : tag_(tag), same_(pair), n_(n) {
        check_count();
    }

    MapFamily(Tag tag, DiffPair pair, long n) : tag_(tag), diff_(pair), n_(n) {
        check_count();
    }

    void check_count() const {
        if (n_ < 0)
            throw ParamOutOfRange("application count must be non-negative");
    }

    Tag tag_;
    ChannelKind kind_ = ChannelKind::ID;
    SamePair same_ = SamePair::PfPf;
    DiffPair diff_ = DiffPair::BfPf;
    long n_ = 1;
};

namespace detail {

inline double flushed_pow(double base, double exponent) {
    const double v = std::pow(base, exponent);
    return std::abs(v) < kPowerFlushTol ? 0.0 : v;
}

struct Factors {
    double f1, f2, f3;
};

inline Factors single_channel_factors(ChannelKind kind, double p, long n) {
    const double nn = static_cast<double>(n);
    const double u = 1.0 - p;
    switch (kind) {
    case ChannelKind::BF:
        return {1.0, flushed_pow(u, 2.0 * nn), flushed_pow(u, 2.0 * nn)};
    case ChannelKind::PF:
        return {flushed_pow(u, 2.0 * nn), flushed_pow(u, 2.0 * nn), 1.0};
    case ChannelKind::BPF:
        return {flushed_pow(u, 2.0 * nn), 1.0, flushed_pow(u, 2.0 * nn)};
    case ChannelKind::DEP: {
        const double d = flushed_pow(1.0 - 4.0 * p / 3.0, nn);
        return {d, d, d};
    }
    default: // GAD; the damping rate is swept and reported as p
        return {flushed_pow(u, nn), flushed_pow(u, nn), flushed_pow(u, 2.0 * nn)};
    }
}

inline Factors biside_same_factors(SamePair pair, double p, double q, long n) {
    const double w = flushed_pow((1.0 - p) * (1.0 - q), static_cast<double>(n));
    switch (pair) {
    case SamePair::PfPf:
        return {w, w, 1.0};
    case SamePair::BfBf:
        return {1.0, w, w};
    default: // BPF-BPF
        return {w, 1.0, w};
    }
}

inline Factors biside_diff_factors(DiffPair pair, double p, double q, long n) {
    const double nn = static_cast<double>(n);
    const double un = flushed_pow(1.0 - p, nn);
    const double vn = flushed_pow(1.0 - q, nn);
    const double uv = flushed_pow((1.0 - p) * (1.0 - q), nn);
    switch (pair) {
    case DiffPair::BfPf:
        return {vn, uv, un};
    case DiffPair::BfBpf:
        return {vn, un, uv};
    default: // PF-BPF
        return {uv, un, vn};
    }
}

} // namespace detail

// Evaluates the family's coefficient map. Every factor has magnitude <= 1,
// so physical inputs stay physical; a violation is asserted, not clamped,
// because it would mean a factor formula is wrong.
inline BellDiagonalCoeffs map_coeffs(const MapFamily &family,
                                     const BellDiagonalCoeffs &c,
                                     const RateParams &rates) {
    detail::require_unit_range(rates.p, "p");
    if (family.is_biside())
        detail::require_unit_range(rates.q, "q");
    if (!is_physical(c))
        throw PhysicalityViolation("input coefficients are unphysical");

    detail::Factors f{1.0, 1.0, 1.0};
    switch (family.tag()) {
    case MapFamily::Tag::Single:
    case MapFamily::Tag::NFold:
        f = detail::single_channel_factors(family.kind(), rates.p, family.count());
        break;
    case MapFamily::Tag::BisideSame:
    case MapFamily::Tag::BisideSameN:
        f = detail::biside_same_factors(family.same_pair(), rates.p, rates.q,
                                        family.count());
        break;
    case MapFamily::Tag::BisideDiff:
    case MapFamily::Tag::BisideDiffN:
        f = detail::biside_diff_factors(family.diff_pair(), rates.p, rates.q,
                                        family.count());
        break;
    }

    const BellDiagonalCoeffs out{f.f1 * c.c1, f.f2 * c.c2, f.f3 * c.c3};
    if (!is_physical(out))
        throw PhysicalityViolation("mapped coefficients are unphysical");
    return out;
}

namespace detail {

inline TwoQubitDensity adc_matrix(const BellDiagonalCoeffs &c, double un,
                                  double un_half) {
    Matrix4 m;
    m(0, 0) = (2.0 - (1.0 - c.c3) * un) / 4.0;
    m(1, 1) = (2.0 - (1.0 + c.c3) * un) / 4.0;
    m(2, 2) = (1.0 - c.c3) * un / 4.0;
    m(3, 3) = (1.0 + c.c3) * un / 4.0;
    m(0, 3) = m(3, 0) = (c.c1 - c.c2) * un_half / 4.0;
    m(1, 2) = m(2, 1) = (c.c1 + c.c2) * un_half / 4.0;
    return TwoQubitDensity(m);
}

} // namespace detail

// Output of the first qubit passing once through amplitude damping:
// off-diagonals scale by (1-p)^(1/2), excited-row population flows upward.
inline TwoQubitDensity adc_state(const BellDiagonalCoeffs &c, double p) {
    detail::require_unit_range(p, "p");
    if (!is_physical(c))
        throw PhysicalityViolation("input coefficients are unphysical");
    return detail::adc_matrix(c, 1.0 - p, std::sqrt(1.0 - p));
}

// n-fold amplitude damping on the first qubit, in closed form: (1-p)^n on
// populations and (1-p)^(n/2) on coherences. Exact powers, no iteration.
inline TwoQubitDensity adc_state_n(const BellDiagonalCoeffs &c, double p, long n) {
    detail::require_unit_range(p, "p");
    if (n < 0)
        throw ParamOutOfRange("application count must be non-negative");
    if (!is_physical(c))
        throw PhysicalityViolation("input coefficients are unphysical");
    const double nn = static_cast<double>(n);
    return detail::adc_matrix(c, detail::flushed_pow(1.0 - p, nn),
                              detail::flushed_pow(1.0 - p, nn / 2.0));
}

// n-fold amplitude damping on both qubits (same p). Trace is exactly one:
// x + 2y + (1+c3)(1-p)^(2n) telescopes to 4.
inline TwoQubitDensity adc_state_biside_n(const BellDiagonalCoeffs &c, double p,
                                          long n) {
    detail::require_unit_range(p, "p");
    if (n < 0)
        throw ParamOutOfRange("application count must be non-negative");
    if (!is_physical(c))
        throw PhysicalityViolation("input coefficients are unphysical");
    const double nn = static_cast<double>(n);
    const double un = detail::flushed_pow(1.0 - p, nn);
    const double u2n = detail::flushed_pow(1.0 - p, 2.0 * nn);
    const double x = 4.0 - 4.0 * un + (1.0 + c.c3) * u2n;
    const double y = 2.0 * un - (1.0 + c.c3) * u2n;

    Matrix4 m;
    m(0, 0) = x / 4.0;
    m(1, 1) = m(2, 2) = y / 4.0;
    m(3, 3) = (1.0 + c.c3) * u2n / 4.0;
    m(0, 3) = m(3, 0) = (c.c1 - c.c2) * un / 4.0;
    m(1, 2) = m(2, 1) = (c.c1 + c.c2) * un / 4.0;
    return TwoQubitDensity(m);
}

} // namespace belldyn
