#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "obl/core.hpp"
#include "obl/opposition.hpp"

namespace obl {

struct DatasetSpec {
    std::string id;
    std::string path;
    // label column: "last", a 0-based index, or a header name
    std::variant<std::monostate, std::size_t, std::string> label_column;  // monostate = last
    char delimiter = ',';
    bool has_header = false;
    std::optional<std::size_t> n_select;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

inline bool is_missing_token(const std::string& cell) {
    std::string t = lower(trim(cell));
    return t.empty() || t == "na" || t == "?" || t == "nan";
}

inline std::vector<std::string> split_line(const std::string& line, char delim) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == delim) {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    cells.push_back(cur);
    return cells;
}

}  // namespace detail

inline LabeledDataset load_csv(const DatasetSpec& spec) {
    std::ifstream in(spec.path);
    if (!in) throw IoError("cannot open dataset file: " + spec.path);

    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::string line;
    std::size_t lineno = 0;
    std::size_t width = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::trim(line).empty()) continue;
        std::vector<std::string> cells = detail::split_line(line, spec.delimiter);
        if (first && spec.has_header) {
            header = cells;
            width = cells.size();
            first = false;
            continue;
        }
        if (first) {
            width = cells.size();
            first = false;
        } else if (cells.size() != width) {
            throw ParseError("ragged row at line " + std::to_string(lineno) + " in " +
                             spec.path);
        }
        rows.push_back(std::move(cells));
    }
    if (rows.empty()) throw EmptyInput("empty dataset: " + spec.path);

    std::size_t label_col;
    if (std::holds_alternative<std::monostate>(spec.label_column)) {
        label_col = width - 1;
    } else if (std::holds_alternative<std::size_t>(spec.label_column)) {
        label_col = std::get<std::size_t>(spec.label_column);
        if (label_col >= width) throw ParseError("label column index out of range");
    } else {
        const std::string& name = std::get<std::string>(spec.label_column);
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw ParseError("label column '" + name + "' not in header");
        label_col = static_cast<std::size_t>(it - header.begin());
    }

    const std::size_t d = width - 1;
    FeatureMatrix x(rows.size(), d);
    LabelVector y;
    std::map<std::string, int> class_ids;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::size_t jj = 0;
        for (std::size_t c = 0; c < width; ++c) {
            const std::string cell = detail::trim(rows[i][c]);
            if (c == label_col) {
                auto [it, inserted] =
                    class_ids.emplace(cell, static_cast<int>(class_ids.size()));
                if (inserted) y.class_names.push_back(cell);
                y.labels.push_back(it->second);
                continue;
            }
            if (detail::is_missing_token(cell)) {
                x(i, jj++) = std::numeric_limits<double>::quiet_NaN();
                continue;
            }
            try {
                std::size_t pos = 0;
                double v = std::stod(cell, &pos);
                if (pos != cell.size()) throw std::invalid_argument(cell);
                x(i, jj++) = v;
            } catch (const std::exception&) {
                throw ParseError("unparseable cell at line " +
                                 std::to_string(i + 1 + (spec.has_header ? 1 : 0)) +
                                 " column " + std::to_string(c + 1) + ": '" + cell + "'");
            }
        }
    }
    // class ids follow first-appearance order; re-encode is already dense
    return LabeledDataset{std::move(x), std::move(y)};
}

// CSV of (original, opposite) row pairs for external plotting.
inline void export_pairs(const LabeledDataset& ds, const OblScheme& scheme,
                         const std::string& out_path) {
    LabeledDataset opp;
    switch (scheme.kind) {
        case OblKind::global:
            opp = LabeledDataset{oppose_global(ds.features, compute_bounds(ds.features)),
                                 ds.labels};
            break;
        case OblKind::classwise:
            opp = oppose_classwise(ds);
            break;
        case OblKind::localized_classwise:
            opp = oppose_localized(ds, scheme.p);
            break;
    }
    std::ofstream out(out_path);
    if (!out) throw IoError("cannot write " + out_path);
    out << "row_id,kind,class";
    for (std::size_t j = 0; j < ds.features.cols(); ++j) out << ",f" << j;
    out << '\n';
    out.precision(17);
    auto emit = [&](const LabeledDataset& d, const char* kind) {
        for (std::size_t i = 0; i < d.features.rows(); ++i) {
            out << i << ',' << kind << ','
                << d.labels.class_names[static_cast<std::size_t>(d.labels.labels[i])];
            for (std::size_t j = 0; j < d.features.cols(); ++j)
                out << ',' << d.features(i, j);
            out << '\n';
        }
    };
    emit(ds, "original");
    emit(opp, "opposite");
    if (!out) throw IoError("write failure on " + out_path);
}

}  // namespace obl
