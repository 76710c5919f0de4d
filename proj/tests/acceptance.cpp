// End-to-end acceptance checks. Each check prints exactly one PASS/FAIL line;
// the exit status is zero only if every check passed. argv[1] names the CLI
// binary used by the artifact check.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "belldyn/belldyn.hpp"

#include "test_util.hpp"

namespace {

using namespace belldyn;

const BellDiagonalCoeffs kState{0.3, -0.4, 0.56};

int failures = 0;
std::string cli_path;

void check(bool cond, const std::string &what) {
    if (!cond)
        throw std::runtime_error(what);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void criterion(int id, const char *label, const std::function<void()> &body) {
    try {
        body();
        std::printf("PASS %2d  %s\n", id, label);
    } catch (const std::exception &e) {
        ++failures;
        std::printf("FAIL %2d  %s: %s\n", id, label, e.what());
    }
    std::fflush(stdout);
}

SweepConfig bpf_sweep(Engine engine) {
    SweepConfig cfg;
    cfg.spec = parse_channel_spec("A:bpf(p)");
    cfg.p_grid = make_grid(0.0, 1.0, 0.01);
    cfg.engine = engine;
    return cfg;
}

void criterion_frozen_l1() {
    for (Engine engine : {Engine::ClosedForm, Engine::Oracle}) {
        const auto rows = run_sweep(bpf_sweep(engine));
        check(rows.size() == 101, "expected 101 rows");
        for (const SampleRow &row : rows)
            check(std::abs(*row.l1 - 0.4) <= 1e-12,
                  std::string(engine_name(engine)) + " l1 drifted to " +
                      fmt(*row.l1) + " at p=" + fmt(row.p));
    }
}

void criterion_measure_dependence() {
    const auto rows = run_sweep(bpf_sweep(Engine::ClosedForm));
    for (std::size_t i = 1; i < rows.size(); ++i)
        check(*rows[i].rel - *rows[i - 1].rel <= 1e-12,
              "relative entropy rose at p=" + fmt(rows[i].p));
    const double drop = *rows.front().rel - *rows.back().rel;
    check(drop > 0.01,
          "endpoint drop is " + fmt(drop) + ", the required margin is 0.01");
}

void criterion_dep_dip() {
    SweepConfig cfg;
    cfg.spec = parse_channel_spec("A:dep(p)");
    cfg.p_grid = make_grid(0.0, 1.0, 0.01);
    const auto rows = run_sweep(cfg);

    std::size_t argmin = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (*rows[i].rel < *rows[argmin].rel)
            argmin = i;
    check(argmin == 75, "minimum sits at p=" + fmt(rows[argmin].p) +
                            " instead of p=0.75");
    check(*rows[75].rel <= 1e-12,
          "minimum is " + fmt(*rows[75].rel) + ", not zero");
    check(*rows.front().rel > 0.0, "relative entropy vanished at p=0");
    check(*rows.back().rel > 0.0, "relative entropy vanished at p=1");

    SweepConfig many = cfg;
    many.p_grid = {1.0};
    many.n_list = {100};
    const auto tail = run_sweep(many);
    check(*tail[0].rel <= 1e-10,
          "100-fold value at p=1 is " + fmt(*tail[0].rel));
}

void criterion_conventions() {
    const auto rows = consistency_report(5, 0.25);
    check(rows.size() == 25, "expected 25 families");

    const auto find = [&](const std::string &id) -> const ConsistencyRow & {
        for (const auto &row : rows)
            if (row.table_row == id)
                return row;
        throw std::runtime_error("missing family " + id);
    };

    for (const auto &row : rows) {
        check(row.convention != Convention::Neither,
              "family " + row.table_row + " matched no convention (one-sided " +
                  fmt(row.max_deviation_one_sided) + ", both " +
                  fmt(row.max_deviation_both) + ")");
        const double best = std::min(row.max_deviation_one_sided,
                                     row.max_deviation_both);
        check(best <= 1e-12, "family " + row.table_row +
                                 " deviates by " + fmt(best));
    }

    for (const char *id : {"single:dep", "nfold:dep", "adc", "adc_n", "adc_nn"})
        check(find(id).convention == Convention::OneSided,
              std::string(id) + " is not classified one_sided");
    for (const char *id :
         {"single:bf", "single:pf", "single:bpf", "single:gad"})
        check(find(id).convention == Convention::BothSidesEq4,
              std::string(id) + " is not classified both_sides_eq4");
}

void criterion_damping_closed_forms() {
    const TwoQubitDensity rho0 = bell_to_density(kState);
    for (double p : make_grid(0.0, 1.0, 0.1)) {
        const KrausSet k = kraus_set(ChannelKind::AD, ChannelParams{p, 0.0});
        TwoQubitDensity one = rho0;
        TwoQubitDensity both = rho0;
        for (long n = 0; n <= 10; ++n) {
            if (n > 0) {
                one = apply_one_side(one, k, Side::First);
                both = apply_both(both, k, k);
            }
            const double dev_one =
                adc_state_n(kState, p, n).matrix().max_abs_diff(one.matrix());
            check(dev_one <= 1e-12, "one-sided damping deviates by " +
                                        fmt(dev_one) + " at p=" + fmt(p) +
                                        ", n=" + std::to_string(n));
            const double dev_both = adc_state_biside_n(kState, p, n)
                                        .matrix()
                                        .max_abs_diff(both.matrix());
            check(dev_both <= 1e-12, "two-sided damping deviates by " +
                                         fmt(dev_both) + " at p=" + fmt(p) +
                                         ", n=" + std::to_string(n));
        }
    }
}

void criterion_cptp() {
    const auto grid = make_grid(0.0, 1.0, 0.1);
    const std::vector<ChannelKind> kinds = {
        ChannelKind::BF,  ChannelKind::PF,  ChannelKind::BPF, ChannelKind::DEP,
        ChannelKind::GAD, ChannelKind::AD,  ChannelKind::ID};

    for (ChannelKind kind : kinds)
        for (double p : grid) {
            if (kind == ChannelKind::GAD) {
                for (double g : grid)
                    check(completeness_defect(kraus_set(kind, {p, g})) <= 1e-12,
                          "incomplete Kraus set for gad");
            } else {
                check(completeness_defect(kraus_set(kind, {p, 0.0})) <= 1e-12,
                      std::string("incomplete Kraus set for ") +
                          channel_name(kind));
            }
        }

    std::mt19937 gen(20260818u);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (ChannelKind kind : kinds)
        for (const BellDiagonalCoeffs &c : testutil::random_states(50, 97u)) {
            const KrausSet k = kraus_set(kind, {unit(gen), unit(gen)});
            // Construction re-checks Hermiticity, trace, and positivity.
            const TwoQubitDensity out =
                apply_one_side(bell_to_density(c), k, Side::First);
            check(std::abs(out.matrix().trace().real() - 1.0) <= 1e-12,
                  std::string("trace drift under ") + channel_name(kind));
        }
}

void criterion_fixed_points() {
    const BellDiagonalCoeffs pure{1.0, -1.0, 1.0};
    const BellDiagonalCoeffs max_mixed{0.0, 0.0, 0.0};

    check(std::abs(c_l1_bell(pure) - 1.0) <= 1e-12, "l1 of the pure state");
    check(std::abs(c_rel_bell(pure) - 1.0) <= 1e-12,
          "relative entropy of the pure state");
    check(std::abs(c_l1(bell_to_density(pure)) - 1.0) <= 1e-12,
          "matrix-route l1 of the pure state");
    check(std::abs(c_rel(bell_to_density(pure)) - 1.0) <= 1e-12,
          "matrix-route relative entropy of the pure state");

    check(c_l1_bell(max_mixed) <= 1e-12, "l1 of the maximally mixed state");
    check(c_rel_bell(max_mixed) <= 1e-12,
          "relative entropy of the maximally mixed state");
    check(c_l1(bell_to_density(max_mixed)) <= 1e-12,
          "matrix-route l1 of the maximally mixed state");
    check(c_rel(bell_to_density(max_mixed)) <= 1e-12,
          "matrix-route relative entropy of the maximally mixed state");

    check(std::abs(von_neumann_entropy(bell_to_density(max_mixed)) - 2.0) <=
              1e-12,
          "entropy of the maximally mixed state");

    for (const BellDiagonalCoeffs &c : testutil::random_states(1000, 11u)) {
        const double direct = c_rel_bell(c);
        const double via_matrix = c_rel(bell_to_density(c));
        check(std::abs(direct - via_matrix) <= 1e-10,
              "entropy routes disagree by " + fmt(direct - via_matrix));
    }
}

void criterion_pair_ordering() {
    const auto grid = make_grid(0.0, 1.0, 0.05);
    for (double p : grid)
        for (double q : grid) {
            const RateParams r{p, q};
            const double bpf = c_rel_bell(
                map_coeffs(MapFamily::biside_same(SamePair::BpfBpf), kState, r));
            const double bf = c_rel_bell(
                map_coeffs(MapFamily::biside_same(SamePair::BfBf), kState, r));
            const double pf = c_rel_bell(
                map_coeffs(MapFamily::biside_same(SamePair::PfPf), kState, r));
            check(bpf >= bf - 1e-12, "bpf pair below bf pair at p=" + fmt(p) +
                                         ", q=" + fmt(q));
            check(bf >= pf - 1e-12, "bf pair below pf pair at p=" + fmt(p) +
                                        ", q=" + fmt(q));
        }

    const double corner = c_rel_bell(
        map_coeffs(MapFamily::biside_same(SamePair::PfPf), kState, {1.0, 1.0}));
    check(corner <= 1e-12, "pf pair keeps coherence " + fmt(corner) +
                               " at p=q=1");
}

void criterion_figure_artifacts() {
    namespace fs = std::filesystem;
    check(!cli_path.empty(), "no CLI binary path was supplied");

    const fs::path dir = fs::temp_directory_path() / "belldyn_acceptance_figs";
    std::error_code ec;
    fs::remove_all(dir, ec);
    fs::create_directories(dir);

    for (const std::string &name : figure_preset_names()) {
        const std::string cmd = "\"" + cli_path + "\" figure " + name +
                                " --out-dir \"" + dir.string() +
                                "\" > /dev/null";
        check(std::system(cmd.c_str()) == 0, "figure command failed for " +
                                                 name);

        for (const LabeledConfig &lc : figure_preset(name)) {
            const std::string file =
                lc.label.empty() ? name + ".csv" : name + "_" + lc.label +
                                                       ".csv";
            std::ifstream in(dir / file);
            check(in.good(), "missing artifact " + file);

            std::string line;
            bool seen_header = false;
            std::size_t data_rows = 0;
            while (std::getline(in, line)) {
                if (!seen_header) {
                    if (!line.empty() && line[0] == '#')
                        continue;
                    check(line == "p,q,n,c1,c2,c3,C_l1,C_r",
                          "unexpected header in " + file);
                    seen_header = true;
                } else {
                    check(std::count(line.begin(), line.end(), ',') == 7,
                          "malformed row in " + file + ": " + line);
                    ++data_rows;
                }
            }
            check(seen_header, "no header in " + file);

            const std::size_t expected = lc.config.n_list.size() *
                                         lc.config.p_grid.size() *
                                         lc.config.q_grid.size();
            check(data_rows == expected,
                  file + " has " + std::to_string(data_rows) + " rows, wanted " +
                      std::to_string(expected));
        }
    }
}

void criterion_parser_corpus() {
    const std::vector<std::string> valid = {
        "A:bf(p)",
        "A:pf(q)",
        "A:bpf(p)^3",
        "B:dep(q)",
        "A:gad(p); B:gad(q)",
        "A:ad(p); B:ad(p)",
        "A:id()",
        "  a : BF ( P ) ^ 2  ",
        "B:pf(q)^3; A:bf(p)",
        "A:pf(0.25)",
        "A:bf(1)",
        "A:dep(0); B:dep(1)",
    };
    const std::vector<std::string> invalid = {
        "",
        "A:bpf(p); A:pf(q)",
        "C:bf(p)",
        "A:xyz(p)",
        "A:bf",
        "A:bf(p",
        "A:bf(r)",
        "A:bf()",
        "A:bf(p)^0",
        "A:bf(1.5)",
        "A:bf(p) trailing",
    };

    for (const std::string &text : valid) {
        const ChannelSpecAST ast = parse_channel_spec(text);
        const ChannelSpecAST again = parse_channel_spec(render(ast));
        check(again == ast, "round trip changed \"" + text + "\"");
    }

    for (const std::string &text : invalid) {
        try {
            parse_channel_spec(text);
            throw std::runtime_error("accepted \"" + text + "\"");
        } catch (const ParseError &e) {
            check(e.offset() <= text.size(),
                  "offset out of range for \"" + text + "\"");
            check(!e.expected().empty(),
                  "no expected tokens for \"" + text + "\"");
        } catch (const SemanticError &) {
            // positioned rejection of a grammatical but meaningless spec
        }
    }
}

} // namespace

int main(int argc, char **argv) {
    if (argc > 1)
        cli_path = argv[1];

    criterion(1, "l1 coherence frozen at 0.4 across the sweep, both engines",
              criterion_frozen_l1);
    criterion(2, "relative entropy never rises and drops by more than 0.01",
              criterion_measure_dependence);
    criterion(3, "depolarizing relative entropy bottoms out at p=0.75",
              criterion_dep_dip);
    criterion(4, "every coefficient family matches a Kraus convention",
              criterion_conventions);
    criterion(5, "damping closed forms track the iterated Kraus oracle",
              criterion_damping_closed_forms);
    criterion(6, "all seven channels are complete and density-preserving",
              criterion_cptp);
    criterion(7, "coherence measures hit their analytic fixed points",
              criterion_fixed_points);
    criterion(8, "paired same-type flips order their relative entropies",
              criterion_pair_ordering);
    criterion(9, "every figure preset writes well-formed CSV artifacts",
              criterion_figure_artifacts);
    criterion(10, "spec corpus round-trips and rejects with positions",
              criterion_parser_corpus);

    if (failures == 0)
        std::printf("all 10 criteria passed\n");
    else
        std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
