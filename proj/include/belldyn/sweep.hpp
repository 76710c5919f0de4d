#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "belldyn/channel_spec.hpp"
#include "belldyn/channels.hpp"
#include "belldyn/closedform.hpp"
#include "belldyn/coherence.hpp"
#include "belldyn/errors.hpp"
#include "belldyn/state.hpp"

namespace belldyn {

inline constexpr const char *kVersion = "0.1.0";

// Conventions agree only below this; used by the consistency report.
inline constexpr double kConsistencyTol = 1e-12;

enum class Engine { ClosedForm, Oracle };

inline const char *engine_name(Engine e) {
    return e == Engine::ClosedForm ? "closedform" : "oracle";
}

struct MeasureSet {
    bool l1 = true;
    bool rel = true;
};

struct SweepConfig {
    BellDiagonalCoeffs state{0.3, -0.4, 0.56};
    ChannelSpecAST spec;
    std::vector<double> p_grid{0.0};
    std::vector<double> q_grid{0.0};
    std::vector<long> n_list{1};
    Engine engine = Engine::ClosedForm;
    MeasureSet measures;
    std::string note; // extra metadata line; empty when unused
};

struct SampleRow {
    double p = 0.0;
    double q = 0.0;
    long n = 1;
    std::optional<BellDiagonalCoeffs> coeffs; // absent when not Bell-diagonal
    std::optional<double> l1;
    std::optional<double> rel;
};

// Arithmetic grid over [a, b]. When (b-a) is a whole number of steps the
// points come from the affine interpolation formula, so endpoints and
// interior rationals (0.75 on a 0.01 grid, say) are exact doubles.
inline std::vector<double> make_grid(double a, double b, double step) {
    if (!(a >= 0.0 && b <= 1.0 && a <= b))
        throw ParamOutOfRange("grid bounds must satisfy 0 <= a <= b <= 1");
    if (a == b)
        return {a};
    if (!(step > 0.0))
        throw ParamOutOfRange("grid step must be positive");
    const auto count =
        static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
    const bool spans = std::abs(a + static_cast<double>(count - 1) * step - b) <=
                       1e-9 * std::max(1.0, step);
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double di = static_cast<double>(i);
        if (spans && count > 1) {
            const double dn = static_cast<double>(count - 1);
            grid[i] = (a * (dn - di) + b * di) / dn;
        } else {
            grid[i] = a + di * step;
        }
    }
    return grid;
}

namespace detail {

inline double resolve_rate(const RateVar &rate, double p, double q) {
    switch (rate.kind) {
    case RateVar::Kind::P:
        return p;
    case RateVar::Kind::Q:
        return q;
    default:
        return rate.value;
    }
}

inline ChannelParams params_for(ChannelKind kind, double rate) {
    // GAD sweeps its damping rate at balanced excitation weight.
    if (kind == ChannelKind::GAD)
        return ChannelParams{0.5, rate};
    return ChannelParams{rate, 0.0};
}

inline bool is_pauli_kind(ChannelKind k) {
    return k == ChannelKind::BF || k == ChannelKind::PF || k == ChannelKind::BPF;
}

inline SamePair same_pair_of(ChannelKind k) {
    switch (k) {
    case ChannelKind::PF:
        return SamePair::PfPf;
    case ChannelKind::BF:
        return SamePair::BfBf;
    default:
        return SamePair::BpfBpf;
    }
}

// Supported unordered pairs; diff_pair_first names the channel whose rate
// plays p in the closed form. Channels on different qubits commute, so only
// the pairing matters, not which physical side carries which channel.
inline std::optional<DiffPair> diff_pair_of(ChannelKind a, ChannelKind b) {
    const auto has = [&](ChannelKind x, ChannelKind y) {
        return (a == x && b == y) || (a == y && b == x);
    };
    if (has(ChannelKind::BF, ChannelKind::PF))
        return DiffPair::BfPf;
    if (has(ChannelKind::BF, ChannelKind::BPF))
        return DiffPair::BfBpf;
    if (has(ChannelKind::PF, ChannelKind::BPF))
        return DiffPair::PfBpf;
    return std::nullopt;
}

inline ChannelKind diff_pair_first(DiffPair pair) {
    switch (pair) {
    case DiffPair::BfPf:
    case DiffPair::BfBpf:
        return ChannelKind::BF;
    default:
        return ChannelKind::PF;
    }
}

struct Evaluated {
    std::optional<BellDiagonalCoeffs> coeffs;
    std::optional<TwoQubitDensity> rho; // set exactly when coeffs is not
};

struct ActiveSide {
    ChannelKind kind;
    double rate;
    long count; // reps times the sweep's n
};

inline Evaluated eval_closedform(const std::vector<ActiveSide> &sides,
                                 const BellDiagonalCoeffs &state) {
    Evaluated out;
    if (sides.empty()) {
        out.coeffs = state;
        return out;
    }
    if (sides.size() == 1) {
        const ActiveSide &s = sides.front();
        if (s.kind == ChannelKind::AD) {
            out.rho = adc_state_n(state, s.rate, s.count);
            return out;
        }
        out.coeffs = map_coeffs(MapFamily::nfold(s.kind, s.count), state,
                                RateParams{s.rate, 0.0});
        return out;
    }

    const ActiveSide &a = sides[0];
    const ActiveSide &b = sides[1];
    if (a.count != b.count)
        throw UnsupportedCombination(
            "two-qubit closed forms require equal application counts per side");

    if (a.kind == ChannelKind::AD && b.kind == ChannelKind::AD) {
        if (a.rate != b.rate)
            throw UnsupportedCombination(
                "two-qubit amplitude damping closed form requires equal rates");
        out.rho = adc_state_biside_n(state, a.rate, a.count);
        return out;
    }
    if (is_pauli_kind(a.kind) && is_pauli_kind(b.kind)) {
        if (a.kind == b.kind) {
            out.coeffs = map_coeffs(
                MapFamily::biside_same_n(same_pair_of(a.kind), a.count), state,
                RateParams{a.rate, b.rate});
            return out;
        }
        const auto pair = diff_pair_of(a.kind, b.kind);
        const bool a_first = a.kind == diff_pair_first(*pair);
        out.coeffs = map_coeffs(
            MapFamily::biside_diff_n(*pair, a.count), state,
            RateParams{a_first ? a.rate : b.rate, a_first ? b.rate : a.rate});
        return out;
    }
    throw UnsupportedCombination(
        std::string("no tabulated closed form for ") + channel_name(a.kind) +
        " paired with " + channel_name(b.kind));
}

inline TwoQubitDensity eval_oracle(const std::vector<ActiveSide> &sides_a_b,
                                   const std::vector<Side> &targets,
                                   const BellDiagonalCoeffs &state) {
    TwoQubitDensity rho = bell_to_density(state);
    for (std::size_t i = 0; i < sides_a_b.size(); ++i) {
        const ActiveSide &s = sides_a_b[i];
        rho = apply_n(rho, kraus_set(s.kind, params_for(s.kind, s.rate)),
                      targets[i], s.count);
    }
    return rho;
}

} // namespace detail

// One row per (n, p, q), in that lexicographic order. The closed-form engine
// evaluates tabulated maps; the oracle engine conjugates Kraus operators,
// each listed channel acting on its own qubit.
inline std::vector<SampleRow> run_sweep(const SweepConfig &cfg) {
    if (cfg.p_grid.empty() || cfg.q_grid.empty())
        throw EmptyInput("sweep grids must be non-empty");
    if (cfg.n_list.empty())
        throw EmptyInput("sweep needs at least one application count");
    if (!cfg.spec.side_a && !cfg.spec.side_b)
        throw SemanticError("channel spec has no sides");
    if (!is_physical(cfg.state))
        throw PhysicalityViolation("sweep state is unphysical");

    const bool with_coeffs = !cfg.spec.has_ad();
    std::vector<SampleRow> rows;
    rows.reserve(cfg.n_list.size() * cfg.p_grid.size() * cfg.q_grid.size());

    std::vector<long> counts = cfg.n_list;
    std::sort(counts.begin(), counts.end());

    for (long n : counts) {
        if (n < 0)
            throw ParamOutOfRange("application count must be non-negative");
        for (double p : cfg.p_grid) {
            for (double q : cfg.q_grid) {
                std::vector<detail::ActiveSide> sides;
                std::vector<Side> targets;
                if (cfg.spec.side_a && cfg.spec.side_a->kind != ChannelKind::ID) {
                    const SideSpec &s = *cfg.spec.side_a;
                    sides.push_back({s.kind, detail::resolve_rate(s.rate, p, q),
                                     s.reps * n});
                    targets.push_back(Side::First);
                }
                if (cfg.spec.side_b && cfg.spec.side_b->kind != ChannelKind::ID) {
                    const SideSpec &s = *cfg.spec.side_b;
                    sides.push_back({s.kind, detail::resolve_rate(s.rate, p, q),
                                     s.reps * n});
                    targets.push_back(Side::Second);
                }

                detail::Evaluated ev;
                if (cfg.engine == Engine::ClosedForm) {
                    ev = detail::eval_closedform(sides, cfg.state);
                } else {
                    TwoQubitDensity rho =
                        detail::eval_oracle(sides, targets, cfg.state);
                    if (with_coeffs)
                        ev.coeffs = density_to_bell(rho);
                    else
                        ev.rho = std::move(rho);
                }

                SampleRow row;
                row.p = p;
                row.q = q;
                row.n = n;
                if (ev.coeffs) {
                    row.coeffs = *ev.coeffs;
                    if (cfg.measures.l1)
                        row.l1 = c_l1_bell(*ev.coeffs);
                    if (cfg.measures.rel)
                        row.rel = c_rel_bell(*ev.coeffs);
                } else {
                    if (cfg.measures.l1)
                        row.l1 = c_l1(*ev.rho);
                    if (cfg.measures.rel)
                        row.rel = c_rel(*ev.rho);
                }
                rows.push_back(row);
            }
        }
    }
    return rows;
}

namespace detail {

inline std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    std::string s = buf;
    if (s == "-0")
        s = "0";
    return s;
}

} // namespace detail

// '#'-prefixed metadata, one header line, then one line per row; 12
// significant digits, empty cells for absent values, LF endings throughout.
inline void emit_csv(const std::vector<SampleRow> &rows, const SweepConfig &cfg,
                     std::ostream &os) {
    os << "# belldyn " << kVersion << "\n";
    os << "# state: " << detail::format_real(cfg.state.c1) << ","
       << detail::format_real(cfg.state.c2) << ","
       << detail::format_real(cfg.state.c3) << "\n";
    os << "# spec: " << render(cfg.spec) << "\n";
    os << "# engine: " << engine_name(cfg.engine) << "\n";
    if (!cfg.note.empty())
        os << "# note: " << cfg.note << "\n";
    os << "p,q,n,c1,c2,c3,C_l1,C_r\n";
    for (const SampleRow &row : rows) {
        os << detail::format_real(row.p) << ',' << detail::format_real(row.q)
           << ',' << row.n << ',';
        if (row.coeffs)
            os << detail::format_real(row.coeffs->c1) << ','
               << detail::format_real(row.coeffs->c2) << ','
               << detail::format_real(row.coeffs->c3) << ',';
        else
            os << ",,,";
        if (row.l1)
            os << detail::format_real(*row.l1);
        os << ',';
        if (row.rel)
            os << detail::format_real(*row.rel);
        os << '\n';
    }
    if (!os)
        throw IOFailure("failed writing CSV stream");
}

inline std::string csv_string(const std::vector<SampleRow> &rows,
                              const SweepConfig &cfg) {
    std::ostringstream os;
    emit_csv(rows, cfg, os);
    return os.str();
}

struct LabeledConfig {
    std::string label; // empty for single-config presets
    SweepConfig config;
};

namespace detail {

inline SweepConfig preset_config(const std::string &spec_text, bool l1_measure,
                                 std::vector<long> n_list, bool uses_q) {
    SweepConfig cfg;
    cfg.spec = parse_channel_spec(spec_text);
    cfg.p_grid = make_grid(0.0, 1.0, 0.01);
    cfg.q_grid = uses_q ? make_grid(0.0, 1.0, 0.01) : std::vector<double>{0.0};
    cfg.n_list = std::move(n_list);
    cfg.measures = l1_measure ? MeasureSet{true, false} : MeasureSet{false, true};
    if (spec_text.find("gad") != std::string::npos)
        cfg.note = "p (= gamma for GAD)";
    return cfg;
}

inline std::vector<LabeledConfig> single_channel_family(bool l1_measure) {
    std::vector<LabeledConfig> out;
    for (const char *name : {"bf", "pf", "bpf", "dep", "gad", "ad"})
        out.push_back({name, preset_config(std::string("A:") + name + "(p)",
                                           l1_measure, {1}, false)});
    return out;
}

inline std::vector<LabeledConfig> biside_same_family(std::vector<long> n_list) {
    std::vector<LabeledConfig> out;
    for (const char *name : {"bf", "pf", "bpf"})
        out.push_back({std::string(name) + name,
                       preset_config(std::string("A:") + name + "(p); B:" +
                                         name + "(q)",
                                     false, n_list, true)});
    return out;
}

} // namespace detail

// Every preset sweeps the worked example state (0.3,-0.4,0.56) with the
// closed-form engine over p (and q where two channels act) from 0 to 1 in
// steps of 0.01.
inline std::vector<LabeledConfig> figure_preset(const std::string &name) {
    using detail::preset_config;
    if (name == "fig1a")
        return detail::single_channel_family(false);
    if (name == "fig1b")
        return detail::single_channel_family(true);
    if (name == "fig2a" || name == "fig2b" || name == "fig2c" ||
        name == "fig2d" || name == "fig2e" || name == "fig2f") {
        static const char *kChannels[] = {"bf", "pf", "bpf", "dep", "gad", "ad"};
        const char *ch = kChannels[name[4] - 'a'];
        return {{"", preset_config(std::string("A:") + ch + "(p)", false,
                                   {1, 2, 3, 10, 100}, false)}};
    }
    if (name == "fig3")
        return {{"", preset_config("A:ad(p); B:ad(p)", false, {1, 2, 3, 10, 100},
                                   false)}};
    if (name == "fig4")
        return detail::biside_same_family({1});
    if (name == "fig5a")
        return detail::biside_same_family({10});
    if (name == "fig5b")
        return detail::biside_same_family({100});
    if (name == "fig6a")
        return {{"", preset_config("A:bf(p); B:pf(q)", false, {1}, true)}};
    if (name == "fig6b")
        return {{"", preset_config("A:bf(p); B:bpf(q)", false, {1}, true)}};
    if (name == "fig6c")
        return {{"", preset_config("A:pf(p); B:bpf(q)", false, {1}, true)}};
    if (name == "fig7a")
        return {{"", preset_config("A:bf(p)^10; B:pf(q)^10", false, {1}, true)}};
    if (name == "fig7b")
        return {{"", preset_config("A:bf(p)^10; B:bpf(q)^10", false, {1}, true)}};
    if (name == "fig7c")
        return {{"", preset_config("A:pf(p)^10; B:bpf(q)^10", false, {1}, true)}};
    throw UnknownPreset("unknown figure preset '" + name + "'");
}

inline const std::vector<std::string> &figure_preset_names() {
    static const std::vector<std::string> names = {
        "fig1a", "fig1b", "fig2a", "fig2b", "fig2c", "fig2d",
        "fig2e", "fig2f", "fig3",  "fig4",  "fig5a", "fig5b",
        "fig6a", "fig6b", "fig6c", "fig7a", "fig7b", "fig7c"};
    return names;
}

enum class Convention { OneSided, BothSidesEq4, Neither };

inline const char *convention_name(Convention c) {
    switch (c) {
    case Convention::OneSided:
        return "one_sided";
    case Convention::BothSidesEq4:
        return "both_sides_eq4";
    default:
        return "neither";
    }
}

struct ConsistencyRow {
    std::string table_row;
    Convention convention = Convention::Neither;
    double max_deviation_one_sided = 0.0;
    double max_deviation_both = 0.0;
};

namespace detail {

inline std::vector<BellDiagonalCoeffs> random_physical_states(int count,
                                                              unsigned seed) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<BellDiagonalCoeffs> states;
    states.reserve(static_cast<std::size_t>(count));
    while (states.size() < static_cast<std::size_t>(count)) {
        BellDiagonalCoeffs c{dist(gen), dist(gen), dist(gen)};
        if (is_physical(c))
            states.push_back(c);
    }
    return states;
}

// Applies `kind` to both qubits at once: the double Kraus sum over
// E_i (x) E_j, the literal two-qubit form of a single-channel operation.
inline TwoQubitDensity apply_both_same(const TwoQubitDensity &rho,
                                       ChannelKind kind, double rate) {
    const KrausSet k = kraus_set(kind, params_for(kind, rate));
    return apply_both(rho, k, k);
}

struct FamilyOracles {
    // closed(c, p, q, n) -> matrix of the tabulated result
    std::function<Matrix4(const BellDiagonalCoeffs &, double, double, long)>
        closed;
    // one / both (rho0, p, q, n) -> oracle results under the two conventions
    std::function<TwoQubitDensity(const TwoQubitDensity &, double, double, long)>
        one_sided;
    std::function<TwoQubitDensity(const TwoQubitDensity &, double, double, long)>
        both_sides;
    std::vector<long> ns;
    bool uses_q = false;
};

inline ConsistencyRow probe_family(const std::string &id,
                                   const FamilyOracles &fam,
                                   const std::vector<BellDiagonalCoeffs> &states,
                                   const std::vector<double> &grid) {
    ConsistencyRow row;
    row.table_row = id;
    const std::vector<double> q_grid =
        fam.uses_q ? grid : std::vector<double>{0.0};
    for (const BellDiagonalCoeffs &c : states) {
        const TwoQubitDensity rho0 = bell_to_density(c);
        for (long n : fam.ns) {
            for (double p : grid) {
                for (double q : q_grid) {
                    const Matrix4 want = fam.closed(c, p, q, n);
                    row.max_deviation_one_sided = std::max(
                        row.max_deviation_one_sided,
                        want.max_abs_diff(fam.one_sided(rho0, p, q, n).matrix()));
                    row.max_deviation_both = std::max(
                        row.max_deviation_both,
                        want.max_abs_diff(fam.both_sides(rho0, p, q, n).matrix()));
                }
            }
        }
    }
    const bool one_ok = row.max_deviation_one_sided <= kConsistencyTol;
    const bool both_ok = row.max_deviation_both <= kConsistencyTol;
    if (one_ok && both_ok)
        row.convention =
            row.max_deviation_one_sided <= row.max_deviation_both
                ? Convention::OneSided
                : Convention::BothSidesEq4;
    else if (one_ok)
        row.convention = Convention::OneSided;
    else if (both_ok)
        row.convention = Convention::BothSidesEq4;
    else
        row.convention = Convention::Neither;
    return row;
}

} // namespace detail

// Adjudicates, for every tabulated closed form, whether it matches the
// Kraus oracle acting once on the designated qubit(s) per application
// (one_sided) or acting on both qubits per application (both_sides_eq4),
// reporting max entrywise deviations over random states and a rate grid.
inline std::vector<ConsistencyRow> consistency_report(int state_samples = 5,
                                                      double grid_step = 0.25) {
    if (!(grid_step > 0.0 && grid_step <= 0.5))
        throw ParamOutOfRange("grid step must lie in (0, 0.5]");
    if (state_samples < 1)
        throw ParamOutOfRange("need at least one state sample");

    const auto states =
        detail::random_physical_states(state_samples, 0x5eedu);
    const auto grid = make_grid(0.0, 1.0, grid_step);
    const std::vector<long> once = {1};
    const std::vector<long> counts = {0, 1, 2, 3, 5};

    std::vector<ConsistencyRow> rows;

    const auto add = [&](const std::string &id, detail::FamilyOracles fam) {
        rows.push_back(detail::probe_family(id, fam, states, grid));
    };

    for (ChannelKind kind : {ChannelKind::BF, ChannelKind::PF, ChannelKind::BPF,
                             ChannelKind::DEP, ChannelKind::GAD}) {
        const auto one = [kind](const TwoQubitDensity &rho, double p, double,
                                long n) {
            return apply_n(rho, kraus_set(kind, detail::params_for(kind, p)),
                           Side::First, n);
        };
        const auto both = [kind](const TwoQubitDensity &rho, double p, double,
                                 long n) {
            TwoQubitDensity out = rho;
            for (long i = 0; i < n; ++i)
                out = detail::apply_both_same(out, kind, p);
            return out;
        };

        detail::FamilyOracles single_fam;
        single_fam.closed = [kind](const BellDiagonalCoeffs &c, double p, double,
                                   long) {
            return bell_to_density(
                       map_coeffs(MapFamily::single(kind), c, RateParams{p, 0.0}))
                .matrix();
        };
        single_fam.one_sided = one;
        single_fam.both_sides = both;
        single_fam.ns = once;
        add(std::string("single:") + channel_name(kind), single_fam);

        detail::FamilyOracles nfold_fam;
        nfold_fam.closed = [kind](const BellDiagonalCoeffs &c, double p, double,
                                  long n) {
            return bell_to_density(
                       map_coeffs(MapFamily::nfold(kind, n), c,
                                  RateParams{p, 0.0}))
                .matrix();
        };
        nfold_fam.one_sided = one;
        nfold_fam.both_sides = both;
        nfold_fam.ns = counts;
        add(std::string("nfold:") + channel_name(kind), nfold_fam);
    }

    const auto biside_oracles = [&](ChannelKind ka, ChannelKind kb,
                                    detail::FamilyOracles &fam) {
        fam.one_sided = [ka, kb](const TwoQubitDensity &rho, double p, double q,
                                 long n) {
            TwoQubitDensity out = apply_n(
                rho, kraus_set(ka, detail::params_for(ka, p)), Side::First, n);
            return apply_n(out, kraus_set(kb, detail::params_for(kb, q)),
                           Side::Second, n);
        };
        fam.both_sides = [ka, kb](const TwoQubitDensity &rho, double p, double q,
                                  long n) {
            TwoQubitDensity out = rho;
            for (long i = 0; i < n; ++i) {
                out = detail::apply_both_same(out, ka, p);
                out = detail::apply_both_same(out, kb, q);
            }
            return out;
        };
        fam.uses_q = true;
    };

    for (SamePair pair : {SamePair::PfPf, SamePair::BfBf, SamePair::BpfBpf}) {
        const ChannelKind kind = pair == SamePair::PfPf    ? ChannelKind::PF
                                 : pair == SamePair::BfBf ? ChannelKind::BF
                                                          : ChannelKind::BPF;
        detail::FamilyOracles pair_fam;
        pair_fam.closed = [pair](const BellDiagonalCoeffs &c, double p, double q,
                                 long) {
            return bell_to_density(map_coeffs(MapFamily::biside_same(pair), c,
                                              RateParams{p, q}))
                .matrix();
        };
        biside_oracles(kind, kind, pair_fam);
        pair_fam.ns = once;
        add(std::string("pair:") + same_pair_name(pair), pair_fam);

        detail::FamilyOracles pair_n_fam;
        pair_n_fam.closed = [pair](const BellDiagonalCoeffs &c, double p,
                                   double q, long n) {
            return bell_to_density(map_coeffs(MapFamily::biside_same_n(pair, n),
                                              c, RateParams{p, q}))
                .matrix();
        };
        biside_oracles(kind, kind, pair_n_fam);
        pair_n_fam.ns = counts;
        add(std::string("pair_n:") + same_pair_name(pair), pair_n_fam);
    }

    for (DiffPair pair : {DiffPair::BfPf, DiffPair::BfBpf, DiffPair::PfBpf}) {
        const ChannelKind ka = detail::diff_pair_first(pair);
        const ChannelKind kb = pair == DiffPair::BfPf ? ChannelKind::PF
                                                      : ChannelKind::BPF;
        detail::FamilyOracles pair_fam;
        pair_fam.closed = [pair](const BellDiagonalCoeffs &c, double p, double q,
                                 long) {
            return bell_to_density(map_coeffs(MapFamily::biside_diff(pair), c,
                                              RateParams{p, q}))
                .matrix();
        };
        biside_oracles(ka, kb, pair_fam);
        pair_fam.ns = once;
        add(std::string("pair:") + diff_pair_name(pair), pair_fam);

        detail::FamilyOracles pair_n_fam;
        pair_n_fam.closed = [pair](const BellDiagonalCoeffs &c, double p,
                                   double q, long n) {
            return bell_to_density(map_coeffs(MapFamily::biside_diff_n(pair, n),
                                              c, RateParams{p, q}))
                .matrix();
        };
        biside_oracles(ka, kb, pair_n_fam);
        pair_n_fam.ns = counts;
        add(std::string("pair_n:") + diff_pair_name(pair), pair_n_fam);
    }

    {
        const auto one_ad = [](const TwoQubitDensity &rho, double p, double,
                               long n) {
            return apply_n(rho, kraus_set(ChannelKind::AD, ChannelParams{p, 0}),
                           Side::First, n);
        };
        const auto both_ad = [](const TwoQubitDensity &rho, double p, double,
                                long n) {
            TwoQubitDensity out = rho;
            for (long i = 0; i < n; ++i)
                out = detail::apply_both_same(out, ChannelKind::AD, p);
            return out;
        };

        detail::FamilyOracles adc;
        adc.closed = [](const BellDiagonalCoeffs &c, double p, double, long) {
            return adc_state(c, p).matrix();
        };
        adc.one_sided = one_ad;
        adc.both_sides = both_ad;
        adc.ns = once;
        add("adc", adc);

        detail::FamilyOracles adc_n;
        adc_n.closed = [](const BellDiagonalCoeffs &c, double p, double,
                          long n) {
            return adc_state_n(c, p, n).matrix();
        };
        adc_n.one_sided = one_ad;
        adc_n.both_sides = both_ad;
        adc_n.ns = counts;
        add("adc_n", adc_n);

        detail::FamilyOracles adc_nn;
        adc_nn.closed = [](const BellDiagonalCoeffs &c, double p, double,
                           long n) {
            return adc_state_biside_n(c, p, n).matrix();
        };
        adc_nn.one_sided = [](const TwoQubitDensity &rho, double p, double,
                              long n) {
            const KrausSet k = kraus_set(ChannelKind::AD, ChannelParams{p, 0});
            TwoQubitDensity out = apply_n(rho, k, Side::First, n);
            return apply_n(out, k, Side::Second, n);
        };
        adc_nn.both_sides = [](const TwoQubitDensity &rho, double p, double,
                               long n) {
            TwoQubitDensity out = rho;
            for (long i = 0; i < n; ++i) {
                out = detail::apply_both_same(out, ChannelKind::AD, p);
                out = detail::apply_both_same(out, ChannelKind::AD, p);
            }
            return out;
        };
        adc_nn.ns = counts;
        add("adc_nn", adc_nn);
    }

    return rows;
}

inline void emit_consistency_csv(const std::vector<ConsistencyRow> &rows,
                                 std::ostream &os) {
    os << "table_row,convention,dev_one_sided,dev_both\n";
    for (const ConsistencyRow &row : rows)
        os << row.table_row << ',' << convention_name(row.convention) << ','
           << detail::format_real(row.max_deviation_one_sided) << ','
           << detail::format_real(row.max_deviation_both) << '\n';
    if (!os)
        throw IOFailure("failed writing consistency CSV");
}

} // namespace belldyn
