// Command-line front end: parameter sweeps, figure-data presets, frozen
// detection, and the channel-convention consistency report, all as CSV.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "belldyn/belldyn.hpp"

namespace {

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t at = text.find(sep, start);
        if (at == std::string::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, at - start));
        start = at + 1;
    }
}

double parse_double(const std::string &text, const char *what) {
    const char *start = text.c_str();
    char *end = nullptr;
    const double v = std::strtod(start, &end);
    if (end == start || *end != '\0')
        throw belldyn::SemanticError(std::string("invalid ") + what + " '" +
                                     text + "'");
    return v;
}

belldyn::BellDiagonalCoeffs parse_state(const std::string &text) {
    const auto parts = split(text, ',');
    if (parts.size() != 3)
        throw belldyn::SemanticError(
            "state must be three comma-separated coefficients");
    return {parse_double(parts[0], "coefficient"),
            parse_double(parts[1], "coefficient"),
            parse_double(parts[2], "coefficient")};
}

std::vector<double> parse_grid(const std::string &text) {
    const auto parts = split(text, ':');
    if (parts.size() != 3)
        throw belldyn::SemanticError("grid must have the form a:b:step");
    return belldyn::make_grid(parse_double(parts[0], "grid bound"),
                              parse_double(parts[1], "grid bound"),
                              parse_double(parts[2], "grid step"));
}

std::vector<long> parse_n_list(const std::string &text) {
    std::vector<long> out;
    for (const std::string &part : split(text, ',')) {
        const double v = parse_double(part, "application count");
        const long n = static_cast<long>(v);
        if (static_cast<double>(n) != v || n < 0)
            throw belldyn::SemanticError(
                "application counts must be non-negative integers");
        out.push_back(n);
    }
    return out;
}

belldyn::MeasureSet parse_measures(const std::string &text) {
    belldyn::MeasureSet m{false, false};
    for (const std::string &part : split(text, ',')) {
        if (part == "l1")
            m.l1 = true;
        else if (part == "rel")
            m.rel = true;
        else
            throw belldyn::SemanticError("unknown measure '" + part +
                                         "' (expected l1 or rel)");
    }
    if (!m.l1 && !m.rel)
        throw belldyn::SemanticError("at least one measure is required");
    return m;
}

belldyn::Engine parse_engine(const std::string &text) {
    if (text == "closedform")
        return belldyn::Engine::ClosedForm;
    if (text == "oracle")
        return belldyn::Engine::Oracle;
    throw belldyn::SemanticError("unknown engine '" + text +
                                 "' (expected closedform or oracle)");
}

void write_csv_file(const std::vector<belldyn::SampleRow> &rows,
                    const belldyn::SweepConfig &cfg,
                    const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw belldyn::IOFailure("cannot open '" + path.string() +
                                 "' for writing");
    belldyn::emit_csv(rows, cfg, out);
    out.close();
    if (!out)
        throw belldyn::IOFailure("failed writing '" + path.string() + "'");
}

struct SweepArgs {
    std::string state = "0.3,-0.4,0.56";
    std::string spec;
    std::string engine = "closedform";
    std::string measures = "l1,rel";
    std::string p_grid;
    std::string q_grid;
    std::string n_list;
    std::string out;
};

belldyn::SweepConfig build_config(const SweepArgs &args) {
    belldyn::SweepConfig cfg;
    cfg.state = parse_state(args.state);
    cfg.spec = belldyn::parse_channel_spec(args.spec);
    cfg.engine = parse_engine(args.engine);
    cfg.measures = parse_measures(args.measures);

    // A rate variable no channel uses collapses to a single grid point,
    // so row counts track only the swept variables.
    if (!args.p_grid.empty())
        cfg.p_grid = parse_grid(args.p_grid);
    else
        cfg.p_grid = cfg.spec.uses_p() ? belldyn::make_grid(0.0, 1.0, 0.01)
                                       : std::vector<double>{0.0};
    if (!args.q_grid.empty())
        cfg.q_grid = parse_grid(args.q_grid);
    else
        cfg.q_grid = cfg.spec.uses_q() ? belldyn::make_grid(0.0, 1.0, 0.01)
                                       : std::vector<double>{0.0};
    if (!args.n_list.empty())
        cfg.n_list = parse_n_list(args.n_list);
    return cfg;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Bell-diagonal two-qubit decoherence: sweeps, figure data, "
                 "frozen-coherence detection, convention consistency"};
    app.set_version_flag("--version",
                         std::string("belldyn ") + belldyn::kVersion);
    app.require_subcommand(1);

    SweepArgs sweep_args;
    CLI::App *sweep = app.add_subcommand("sweep", "Run one parameter sweep");
    sweep->add_option("--state", sweep_args.state,
                      "Initial coefficients c1,c2,c3");
    sweep->add_option("--spec", sweep_args.spec, "Channel spec, e.g. A:bpf(p)")
        ->required();
    sweep->add_option("--engine", sweep_args.engine, "closedform or oracle");
    sweep->add_option("--measures", sweep_args.measures,
                      "Comma list from {l1, rel}");
    sweep->add_option("--p-grid", sweep_args.p_grid, "p grid as a:b:step");
    sweep->add_option("--q-grid", sweep_args.q_grid, "q grid as a:b:step");
    sweep->add_option("--n", sweep_args.n_list,
                      "Comma list of application counts");
    sweep->add_option("--out", sweep_args.out, "Output CSV path")->required();
    sweep->callback([&] {
        const belldyn::SweepConfig cfg = build_config(sweep_args);
        write_csv_file(belldyn::run_sweep(cfg), cfg, sweep_args.out);
    });

    std::string figure_name;
    std::string out_dir;
    CLI::App *figure =
        app.add_subcommand("figure", "Emit CSV data for a figure preset");
    figure->add_option("preset", figure_name, "Preset name, e.g. fig1b")
        ->required();
    figure->add_option("--out-dir", out_dir, "Directory for the CSV files")
        ->required();
    figure->callback([&] {
        const auto configs = belldyn::figure_preset(figure_name);
        std::filesystem::create_directories(out_dir);
        for (const belldyn::LabeledConfig &lc : configs) {
            const std::string file =
                lc.label.empty() ? figure_name + ".csv"
                                 : figure_name + "_" + lc.label + ".csv";
            const auto path = std::filesystem::path(out_dir) / file;
            write_csv_file(belldyn::run_sweep(lc.config), lc.config, path);
            std::cout << "wrote " << path.string() << "\n";
        }
    });

    SweepArgs frozen_args;
    std::string frozen_measure = "l1";
    CLI::App *frozen = app.add_subcommand(
        "frozen", "Report whether coherence stays constant over a sweep");
    frozen->add_option("--state", frozen_args.state,
                       "Initial coefficients c1,c2,c3");
    frozen->add_option("--spec", frozen_args.spec, "Channel spec")->required();
    frozen->add_option("--engine", frozen_args.engine, "closedform or oracle");
    frozen->add_option("--measure", frozen_measure, "l1 or rel");
    frozen->add_option("--p-grid", frozen_args.p_grid, "p grid as a:b:step");
    frozen->add_option("--q-grid", frozen_args.q_grid, "q grid as a:b:step");
    frozen->add_option("--n", frozen_args.n_list,
                       "Comma list of application counts");
    frozen->callback([&] {
        if (frozen_measure != "l1" && frozen_measure != "rel")
            throw belldyn::SemanticError("unknown measure '" + frozen_measure +
                                         "' (expected l1 or rel)");
        const bool want_l1 = frozen_measure == "l1";
        frozen_args.measures = frozen_measure;
        const belldyn::SweepConfig cfg = build_config(frozen_args);
        const auto rows = belldyn::run_sweep(cfg);
        std::vector<std::pair<double, double>> values;
        values.reserve(rows.size());
        for (const belldyn::SampleRow &row : rows)
            values.emplace_back(row.p, want_l1 ? *row.l1 : *row.rel);
        const belldyn::FrozenReport report = belldyn::frozen_scan(
            values, want_l1 ? belldyn::CoherenceMeasure::L1
                            : belldyn::CoherenceMeasure::RelEnt);
        std::cout << "measure: " << belldyn::measure_name(report.measure)
                  << "\ngrid_size: " << report.grid_size << "\nmax_deviation: "
                  << belldyn::detail::format_real(report.max_deviation)
                  << "\nis_frozen: " << (report.is_frozen ? "true" : "false")
                  << "\n";
    });

    double step = 0.25;
    int samples = 5;
    std::string consistency_out;
    CLI::App *consistency = app.add_subcommand(
        "check-consistency",
        "Compare every closed form against one-sided and two-sided oracles");
    consistency->add_option("--step", step, "Rate grid step in (0, 0.5]");
    consistency->add_option("--samples", samples, "Random input states");
    consistency->add_option("--out", consistency_out,
                            "Also write the report to this CSV file");
    consistency->callback([&] {
        const auto rows = belldyn::consistency_report(samples, step);
        belldyn::emit_consistency_csv(rows, std::cout);
        if (!consistency_out.empty()) {
            std::ofstream out(consistency_out, std::ios::binary);
            if (!out)
                throw belldyn::IOFailure("cannot open '" + consistency_out +
                                         "' for writing");
            belldyn::emit_consistency_csv(rows, out);
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const belldyn::UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const belldyn::NumericalError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
