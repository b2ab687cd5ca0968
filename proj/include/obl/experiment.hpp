#pragma once

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "obl/config.hpp"
#include "obl/csv.hpp"
#include "obl/evaluation.hpp"
#include "obl/rankstats.hpp"

namespace obl {

struct CellResult {
    std::size_t dataset = 0;
    std::size_t algorithm = 0;
    std::optional<EvalReport> report;
    std::string error;
};

struct ExperimentResult {
    std::vector<CellResult> cells;  // dataset-major order
    std::optional<FriedmanResult> friedman_accuracy;
    std::optional<FriedmanResult> friedman_f1;
    std::optional<FriedmanResult> friedman_runtime;
    std::string friedman_note;
    bool any_failed = false;
};

namespace detail {

inline std::string fixed4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

inline void write_table(const std::string& path, const ExperimentConfig& cfg,
                        const std::vector<CellResult>& cells,
                        double EvalReport::* field) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "dataset";
    for (const auto& a : cfg.algorithms) out << ',' << a.id;
    out << '\n';
    const std::size_t na = cfg.algorithms.size();
    for (std::size_t d = 0; d < cfg.datasets.size(); ++d) {
        out << cfg.datasets[d].id;
        for (std::size_t a = 0; a < na; ++a) {
            const CellResult& c = cells[d * na + a];
            out << ',' << (c.report ? fixed4((*c.report).*field) : std::string("FAILED"));
        }
        out << '\n';
    }
}

inline std::optional<FriedmanResult> try_friedman(const ExperimentConfig& cfg,
                                                  const std::vector<CellResult>& cells,
                                                  double EvalReport::* field,
                                                  bool higher_is_better,
                                                  std::string& note) {
    ScoreMatrix sm;
    sm.higher_is_better = higher_is_better;
    const std::size_t na = cfg.algorithms.size();
    for (std::size_t d = 0; d < cfg.datasets.size(); ++d) {
        std::vector<double> row;
        bool complete = true;
        for (std::size_t a = 0; a < na; ++a) {
            const CellResult& c = cells[d * na + a];
            if (!c.report) { complete = false; break; }
            row.push_back((*c.report).*field);
        }
        if (complete) sm.scores.push_back(std::move(row));
    }
    try {
        return friedman(sm);
    } catch (const DegenerateInput& e) {
        note = e.what();
        return std::nullopt;
    }
}

}  // namespace detail

inline ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                       std::size_t n_workers = 0) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.output_dir);

    const std::size_t na = cfg.algorithms.size();
    ExperimentResult result;
    result.cells.resize(cfg.datasets.size() * na);

    // Load each dataset once; a load failure marks the whole row failed.
    std::vector<std::optional<LabeledDataset>> data(cfg.datasets.size());
    std::vector<std::string> load_errors(cfg.datasets.size());
    for (std::size_t d = 0; d < cfg.datasets.size(); ++d) {
        try {
            data[d] = load_csv(cfg.datasets[d]);
        } catch (const std::exception& e) {
            load_errors[d] = e.what();
        }
    }

    // Cells are independent; run them on a bounded worker pool.
    if (n_workers == 0)
        n_workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    std::atomic<std::size_t> next{0};
    const std::size_t total = result.cells.size();
    auto worker = [&] {
        for (;;) {
            std::size_t idx = next.fetch_add(1);
            if (idx >= total) return;
            std::size_t d = idx / na, a = idx % na;
            CellResult& cell = result.cells[idx];
            cell.dataset = d;
            cell.algorithm = a;
            if (!data[d]) {
                cell.error = load_errors[d];
                continue;
            }
            const AlgorithmSpec& alg = cfg.algorithms[a];
            PipelineConfig pc;
            pc.scaler_kind = cfg.scaler_kind;
            pc.n_select = cfg.datasets[d].n_select;
            pc.scheme = alg.scheme;
            pc.mode = alg.mode;
            pc.renormalize_opposites = cfg.renormalize_opposites;
            pc.k = alg.k;
            pc.weighted = alg.weighted;
            pc.seed = cfg.cv.seed;
            try {
                EvalReport rep = cross_validate(*data[d], pc, cfg.cv);
                rep.dataset_id = cfg.datasets[d].id;
                rep.algorithm_id = alg.id;
                cell.report = std::move(rep);
            } catch (const std::exception& e) {
                cell.error = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < std::min(n_workers, total); ++t)
        pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    for (const auto& c : result.cells)
        if (!c.report) result.any_failed = true;

    detail::write_table(cfg.output_dir + "/accuracy.csv", cfg, result.cells,
                        &EvalReport::mean_accuracy);
    detail::write_table(cfg.output_dir + "/f1.csv", cfg, result.cells,
                        &EvalReport::mean_f1);
    detail::write_table(cfg.output_dir + "/runtime.csv", cfg, result.cells,
                        &EvalReport::mean_runtime_s);

    result.friedman_accuracy = detail::try_friedman(
        cfg, result.cells, &EvalReport::mean_accuracy, true, result.friedman_note);
    result.friedman_f1 = detail::try_friedman(cfg, result.cells, &EvalReport::mean_f1,
                                              true, result.friedman_note);
    result.friedman_runtime = detail::try_friedman(
        cfg, result.cells, &EvalReport::mean_runtime_s, false, result.friedman_note);

    {
        std::ofstream out(cfg.output_dir + "/friedman.csv");
        out << "metric,algorithm,mean_rank,statistic,dof,p_value\n";
        auto emit = [&](const char* metric, const std::optional<FriedmanResult>& fr) {
            if (!fr) return;
            for (std::size_t a = 0; a < na; ++a)
                out << metric << ',' << cfg.algorithms[a].id << ','
                    << detail::fixed4(fr->mean_ranks[a]) << ','
                    << detail::fixed4(fr->statistic) << ',' << fr->dof << ','
                    << detail::fixed4(fr->p_value) << '\n';
        };
        emit("accuracy", result.friedman_accuracy);
        emit("f1", result.friedman_f1);
        emit("runtime", result.friedman_runtime);
    }

    {
        std::ofstream out(cfg.output_dir + "/manifest.txt");
        out << "seed = " << cfg.cv.seed.seed << "\nfolds = " << cfg.cv.n_folds
            << "\nruns = " << cfg.cv.n_runs << "\n";
        out << "datasets =";
        for (const auto& d : cfg.datasets) out << ' ' << d.id;
        out << "\nalgorithms =";
        for (const auto& a : cfg.algorithms) out << ' ' << a.id;
        out << "\n";
        for (const auto& c : result.cells)
            if (!c.report)
                out << "failed: " << cfg.datasets[c.dataset].id << " x "
                    << cfg.algorithms[c.algorithm].id << ": " << c.error << "\n";
    }

    return result;
}

}  // namespace obl
