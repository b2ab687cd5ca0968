#pragma once

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "obl/csv.hpp"
#include "obl/evaluation.hpp"
#include "obl/pipeline.hpp"

namespace obl {

struct AlgorithmSpec {
    std::string id;
    std::size_t k = 3;
    bool weighted = false;
    std::optional<OblScheme> scheme;
    AugmentMode mode = AugmentMode::augment;
};

struct ExperimentConfig {
    std::vector<DatasetSpec> datasets;
    std::vector<AlgorithmSpec> algorithms;
    CvPlan cv;
    std::string output_dir = "out";
    ScalerKind scaler_kind = ScalerKind::zscore;
    bool renormalize_opposites = true;
};

namespace detail {

// Flat "[section] / key = value" file; section headers may carry a name,
// e.g. "[dataset zoo]".
struct IniSection {
    std::string kind;
    std::string name;
    std::map<std::string, std::string> values;
};

inline std::vector<IniSection> parse_ini(std::istream& in) {
    std::vector<IniSection> sections;
    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[' && t.back() == ']') {
            std::string inner = trim(t.substr(1, t.size() - 2));
            IniSection s;
            std::size_t sp = inner.find(' ');
            if (sp == std::string::npos) {
                s.kind = inner;
            } else {
                s.kind = inner.substr(0, sp);
                s.name = trim(inner.substr(sp + 1));
            }
            sections.push_back(std::move(s));
            continue;
        }
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ParseError("config line is neither section nor key=value: " + t);
        if (sections.empty()) throw ParseError("config key before any [section]: " + t);
        sections.back().values[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    return sections;
}

inline bool parse_bool(const std::string& v) {
    std::string t = lower(v);
    if (t == "true" || t == "1" || t == "yes") return true;
    if (t == "false" || t == "0" || t == "no") return false;
    throw ParseError("not a boolean: " + v);
}

inline OblScheme parse_scheme(const std::string& v, std::size_t p) {
    std::string t = lower(v);
    if (t == "global") return OblScheme{OblKind::global, p};
    if (t == "classwise") return OblScheme{OblKind::classwise, p};
    if (t == "localized" || t == "localized_classwise")
        return OblScheme{OblKind::localized_classwise, p};
    throw ParseError("unknown scheme: " + v);
}

}  // namespace detail

inline ExperimentConfig parse_experiment_config(std::istream& in) {
    ExperimentConfig cfg;
    for (const auto& sec : detail::parse_ini(in)) {
        auto get = [&](const std::string& key) -> std::optional<std::string> {
            auto it = sec.values.find(key);
            if (it == sec.values.end()) return std::nullopt;
            return it->second;
        };
        if (sec.kind == "experiment") {
            if (auto v = get("output_dir")) cfg.output_dir = *v;
            if (auto v = get("folds")) cfg.cv.n_folds = std::stoul(*v);
            if (auto v = get("runs")) cfg.cv.n_runs = std::stoul(*v);
            if (auto v = get("seed")) cfg.cv.seed.seed = std::stoull(*v);
            if (auto v = get("scaler")) {
                std::string t = detail::lower(*v);
                if (t == "zscore") cfg.scaler_kind = ScalerKind::zscore;
                else if (t == "minmax") cfg.scaler_kind = ScalerKind::minmax;
                else if (t == "robust") cfg.scaler_kind = ScalerKind::robust;
                else throw ParseError("unknown scaler: " + *v);
            }
            if (auto v = get("renormalize_opposites"))
                cfg.renormalize_opposites = detail::parse_bool(*v);
        } else if (sec.kind == "dataset") {
            DatasetSpec ds;
            ds.id = sec.name;
            if (ds.id.empty()) throw ParseError("[dataset] section needs a name");
            if (auto v = get("path")) ds.path = *v;
            else throw ParseError("dataset " + ds.id + " has no path");
            if (auto v = get("label_column")) {
                if (*v == "last") ds.label_column = std::monostate{};
                else if (!v->empty() && std::isdigit(static_cast<unsigned char>((*v)[0])))
                    ds.label_column = static_cast<std::size_t>(std::stoul(*v));
                else ds.label_column = *v;
            }
            if (auto v = get("delimiter")) {
                if (*v == "tab") ds.delimiter = '\t';
                else if (*v == "semicolon") ds.delimiter = ';';
                else if (v->size() == 1) ds.delimiter = (*v)[0];
                else throw ParseError("bad delimiter for dataset " + ds.id);
            }
            if (auto v = get("has_header")) ds.has_header = detail::parse_bool(*v);
            if (auto v = get("n_select")) ds.n_select = std::stoul(*v);
            cfg.datasets.push_back(std::move(ds));
        } else if (sec.kind == "algorithm") {
            AlgorithmSpec a;
            a.id = sec.name;
            if (a.id.empty()) throw ParseError("[algorithm] section needs a name");
            if (auto v = get("k")) a.k = std::stoul(*v);
            if (auto v = get("weighted")) a.weighted = detail::parse_bool(*v);
            std::size_t p = 3;
            if (auto v = get("p")) p = std::stoul(*v);
            if (auto v = get("scheme")) a.scheme = detail::parse_scheme(*v, p);
            if (auto v = get("mode")) {
                std::string t = detail::lower(*v);
                if (t == "augment") a.mode = AugmentMode::augment;
                else if (t == "replace") a.mode = AugmentMode::replace;
                else throw ParseError("unknown mode: " + *v);
            }
            cfg.algorithms.push_back(std::move(a));
        } else {
            throw ParseError("unknown config section [" + sec.kind + "]");
        }
    }
    if (cfg.datasets.empty()) throw ParseError("config defines no datasets");
    if (cfg.algorithms.empty()) throw ParseError("config defines no algorithms");
    for (std::size_t i = 0; i < cfg.algorithms.size(); ++i)
        for (std::size_t j = i + 1; j < cfg.algorithms.size(); ++j)
            if (cfg.algorithms[i].id == cfg.algorithms[j].id)
                throw ParseError("duplicate algorithm id: " + cfg.algorithms[i].id);
    return cfg;
}

inline ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    return parse_experiment_config(in);
}

}  // namespace obl
