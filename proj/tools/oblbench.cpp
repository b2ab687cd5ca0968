// oblbench: run opposition-augmented KNN benchmarks, export opposed point
// pairs, and validate dataset files.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

#include "obl/obl.hpp"

namespace {

obl::DatasetSpec make_spec(const std::string& path, const std::string& label_column,
                           const std::string& delimiter, bool has_header) {
    obl::DatasetSpec spec;
    spec.id = path;
    spec.path = path;
    if (label_column == "last")
        spec.label_column = std::monostate{};
    else if (!label_column.empty() &&
             std::isdigit(static_cast<unsigned char>(label_column[0])))
        spec.label_column = static_cast<std::size_t>(std::stoul(label_column));
    else
        spec.label_column = label_column;
    if (delimiter == "tab") spec.delimiter = '\t';
    else if (delimiter.size() == 1) spec.delimiter = delimiter[0];
    else throw obl::ParseError("delimiter must be a single character or 'tab'");
    spec.has_header = has_header;
    return spec;
}

int cmd_run(const std::string& config_path, std::size_t workers,
            const std::string& output_override, std::optional<std::uint64_t> seed_override) {
    obl::ExperimentConfig cfg = obl::load_experiment_config(config_path);
    if (!output_override.empty()) cfg.output_dir = output_override;
    if (seed_override) cfg.cv.seed.seed = *seed_override;
    obl::ExperimentResult res = obl::run_experiment(cfg, workers);
    std::size_t ok = 0;
    for (const auto& c : res.cells)
        if (c.report) ++ok;
    std::cout << ok << "/" << res.cells.size() << " cells completed; reports in "
              << cfg.output_dir << "\n";
    for (const auto& c : res.cells)
        if (!c.report)
            std::cerr << "failed: " << cfg.datasets[c.dataset].id << " x "
                      << cfg.algorithms[c.algorithm].id << ": " << c.error << "\n";
    if (!res.friedman_note.empty())
        std::cerr << "friedman skipped: " << res.friedman_note << "\n";
    return res.any_failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Opposition-based data transformation benchmark harness for KNN"};
    app.require_subcommand(1);

    std::string config_path, dataset_path, out_path, scheme_name = "global";
    std::string label_column = "last", delimiter = ",";
    bool has_header = false;
    std::size_t p = 3, workers = 0;
    std::string output_override;
    std::uint64_t seed_value = 0;
    bool seed_set = false;

    auto* run = app.add_subcommand("run", "run an experiment grid from a config file");
    run->add_option("config", config_path, "experiment config file")->required();
    run->add_option("--workers", workers, "worker threads (0 = hardware)");
    run->add_option("--output-dir", output_override, "override [experiment] output_dir");
    auto* seed_opt = run->add_option("--seed", seed_value, "override [experiment] seed");

    auto* oppose = app.add_subcommand("oppose", "export (original, opposite) row pairs");
    oppose->add_option("dataset", dataset_path, "CSV dataset file")->required();
    oppose->add_option("--scheme", scheme_name, "global|classwise|localized");
    oppose->add_option("--p", p, "neighbor count for localized scheme");
    oppose->add_option("--out", out_path, "output CSV path")->required();
    oppose->add_option("--label-column", label_column, "last, index, or header name");
    oppose->add_option("--delimiter", delimiter, "cell delimiter (or 'tab')");
    oppose->add_flag("--header", has_header, "dataset has a header row");

    auto* validate = app.add_subcommand("validate", "check a dataset file's invariants");
    validate->add_option("dataset", dataset_path, "CSV dataset file")->required();
    validate->add_option("--label-column", label_column, "last, index, or header name");
    validate->add_option("--delimiter", delimiter, "cell delimiter (or 'tab')");
    validate->add_flag("--header", has_header, "dataset has a header row");

    CLI11_PARSE(app, argc, argv);
    seed_set = seed_opt->count() > 0;

    try {
        if (run->parsed()) {
            return cmd_run(config_path, workers, output_override,
                           seed_set ? std::optional<std::uint64_t>(seed_value)
                                    : std::nullopt);
        }
        if (oppose->parsed()) {
            obl::DatasetSpec spec = make_spec(dataset_path, label_column, delimiter,
                                              has_header);
            obl::LabeledDataset ds = obl::load_csv(spec);
            ds.features = obl::impute(ds.features, obl::ImputePolicy{});
            obl::OblScheme scheme = obl::detail::parse_scheme(scheme_name, p);
            obl::export_pairs(ds, scheme, out_path);
            std::cout << "wrote " << 2 * ds.features.rows() << " rows to " << out_path
                      << "\n";
            return 0;
        }
        if (validate->parsed()) {
            obl::DatasetSpec spec = make_spec(dataset_path, label_column, delimiter,
                                              has_header);
            obl::LabeledDataset ds = obl::load_csv(spec);
            ds.features = obl::impute(ds.features, obl::ImputePolicy{});
            auto violations = obl::validate_dataset(ds);
            if (violations.empty()) {
                std::cout << "ok: " << ds.features.rows() << " samples, "
                          << ds.features.cols() << " features, "
                          << ds.labels.n_classes() << " classes\n";
                return 0;
            }
            for (const auto& v : violations) std::cerr << "violation: " << v << "\n";
            return 1;
        }
    } catch (const obl::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const obl::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
