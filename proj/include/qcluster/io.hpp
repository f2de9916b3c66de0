#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "qcluster/axioms.hpp"
#include "qcluster/error.hpp"
#include "qcluster/partitioning.hpp"
#include "qcluster/similarity.hpp"
#include "qcluster/tree.hpp"

// Text formats use 1-based point ids; everything in memory is 0-based.

namespace qcluster {

enum class InputFormat { Edges, Matrix };

inline InputFormat parse_format(const std::string& name) {
    if (name == "edges") {
        return InputFormat::Edges;
    }
    if (name == "matrix") {
        return InputFormat::Matrix;
    }
    detail::fail(ErrorKind::Input, "unknown input format '" + name + "' (expected edges or matrix)");
}

namespace detail {

inline std::string at_line(const std::string& what, std::size_t line) {
    return what + " at line " + std::to_string(line);
}

inline std::optional<double> parse_real(const std::string& token) {
    if (token.empty()) {
        return std::nullopt;
    }
    char* end = nullptr;
    const double value = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

inline std::optional<std::size_t> parse_id(const std::string& token) {
    if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos || token.size() > 9) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(std::stoul(token));
}

inline std::string trim(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = text.find_last_not_of(" \t\r");
    return text.substr(first, last - first + 1);
}

inline bool skippable(const std::string& line) {
    const std::string t = trim(line);
    return t.empty() || t.front() == '#';
}

/// Comma-separated numeric grid, one row per non-blank line.
inline std::vector<std::vector<double>> read_grid(std::istream& in, std::vector<std::size_t>& row_lines) {
    std::vector<std::vector<double>> rows;
    std::string line;
    for (std::size_t number = 1; std::getline(in, line); ++number) {
        if (skippable(line)) {
            continue;
        }
        std::vector<double> row;
        std::stringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            const auto value = parse_real(trim(cell));
            require(value.has_value(), ErrorKind::Input, at_line("parse failure", number));
            row.push_back(*value);
        }
        rows.push_back(std::move(row));
        row_lines.push_back(number);
    }
    const std::size_t n = rows.size();
    for (std::size_t r = 0; r < n; ++r) {
        require(rows[r].size() == n, ErrorKind::Input,
                at_line("expected " + std::to_string(n) + " columns, found " + std::to_string(rows[r].size()),
                        row_lines[r]));
    }
    return rows;
}

}  // namespace detail

/// "i j w" per line for every pair i < j; n is the largest id seen.
inline SimilarityInstance parse_edges(std::istream& in) {
    std::map<std::pair<std::size_t, std::size_t>, double> weights;
    std::size_t n = 0;
    std::string line;
    for (std::size_t number = 1; std::getline(in, line); ++number) {
        if (detail::skippable(line)) {
            continue;
        }
        std::istringstream fields(line);
        std::string a, b, w, extra;
        fields >> a >> b >> w;
        detail::require(!w.empty() && !(fields >> extra), ErrorKind::Input,
                        detail::at_line("parse failure (expected 'i j w')", number));
        const auto i = detail::parse_id(a);
        const auto j = detail::parse_id(b);
        const auto weight = detail::parse_real(w);
        detail::require(i && j && weight, ErrorKind::Input, detail::at_line("parse failure", number));
        detail::require(*i >= 1 && *i < *j, ErrorKind::Input,
                        detail::at_line("pair must satisfy 1 <= i < j", number));
        detail::require(*weight > 0.0, ErrorKind::Input, detail::at_line("non-positive weight", number));
        detail::require(weights.emplace(std::make_pair(*i - 1, *j - 1), *weight).second, ErrorKind::Input,
                        detail::at_line("duplicate pair", number));
        n = std::max(n, *j);
    }
    detail::require(n >= 2, ErrorKind::Input, "input has no pairs");
    std::vector<double> upper;
    upper.reserve(pair_count(n));
    for (Point i = 0; i < n; ++i) {
        for (Point j = i + 1; j < n; ++j) {
            const auto it = weights.find({i, j});
            detail::require(it != weights.end(), ErrorKind::Input,
                            "missing pair " + std::to_string(i + 1) + " " + std::to_string(j + 1));
            upper.push_back(it->second);
        }
    }
    return SimilarityInstance(n, std::move(upper));
}

/// Symmetric n x n CSV grid; the diagonal is ignored.
inline SimilarityInstance parse_matrix(std::istream& in) {
    std::vector<std::size_t> lines;
    const auto rows = detail::read_grid(in, lines);
    const std::size_t n = rows.size();
    detail::require(n >= 2, ErrorKind::Input, "matrix needs at least two rows");
    std::vector<double> upper;
    upper.reserve(pair_count(n));
    for (Point i = 0; i < n; ++i) {
        for (Point j = i + 1; j < n; ++j) {
            detail::require(std::abs(rows[i][j] - rows[j][i]) <= 1e-9, ErrorKind::Input,
                            detail::at_line("asymmetric matrix (column " + std::to_string(j + 1) + ")", lines[i]));
            detail::require(rows[i][j] > 0.0, ErrorKind::Input, detail::at_line("non-positive weight", lines[i]));
            upper.push_back(rows[i][j]);
        }
    }
    return SimilarityInstance(n, std::move(upper));
}

inline SimilarityInstance parse_instance(std::istream& in, InputFormat format) {
    return format == InputFormat::Edges ? parse_edges(in) : parse_matrix(in);
}

namespace detail {
inline std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), ErrorKind::Input, "cannot open '" + path + "'");
    return in;
}
}  // namespace detail

inline SimilarityInstance load_instance(const std::string& path, InputFormat format) {
    std::ifstream in = detail::open_input(path);
    return parse_instance(in, format);
}

/// CSV covariance matrix; definiteness is checked by GaussianModel.
inline Eigen::MatrixXd parse_covariance(std::istream& in) {
    std::vector<std::size_t> lines;
    const auto rows = detail::read_grid(in, lines);
    detail::require(!rows.empty(), ErrorKind::Input, "covariance matrix is empty");
    const auto n = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd out(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            out(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    }
    return out;
}

inline Eigen::MatrixXd load_covariance(const std::string& path) {
    std::ifstream in = detail::open_input(path);
    return parse_covariance(in);
}

// ---------------------------------------------------------------------------
// JSON output
// ---------------------------------------------------------------------------

using Json = nlohmann::json;

namespace detail {

inline void write_json(const Json& value, std::string& out) {
    switch (value.type()) {
        case Json::value_t::object: {
            out += '{';
            bool first = true;
            for (const auto& [key, item] : value.items()) {
                if (!first) {
                    out += ',';
                }
                first = false;
                out += Json(key).dump();
                out += ':';
                write_json(item, out);
            }
            out += '}';
            return;
        }
        case Json::value_t::array: {
            out += '[';
            for (std::size_t i = 0; i < value.size(); ++i) {
                if (i > 0) {
                    out += ',';
                }
                write_json(value[i], out);
            }
            out += ']';
            return;
        }
        case Json::value_t::number_float: {
            char buffer[64];
            std::snprintf(buffer, sizeof buffer, "%.9f", value.get<double>());
            out += buffer;
            return;
        }
        default: out += value.dump();
    }
}

}  // namespace detail

/// Compact JSON with sorted keys and every real printed with 9 decimals.
inline std::string dump_json(const Json& value) {
    std::string out;
    detail::write_json(value, out);
    return out;
}

inline Json to_json(const Partitioning& p) {
    Json blocks = Json::array();
    for (const auto& block : p.blocks()) {
        Json members = Json::array();
        for (Point q : block) {
            members.push_back(q + 1);
        }
        blocks.push_back(std::move(members));
    }
    return blocks;
}

inline Json to_json(const std::vector<Edge>& edges) {
    Json out = Json::array();
    for (const Edge& e : edges) {
        out.push_back(Json{{"u", e.u + 1}, {"v", e.v + 1}, {"w", e.weight}});
    }
    return out;
}

inline Json to_json(const SimilarityInstance& s) {
    return Json{{"n", s.n()}, {"edges", to_json(s.edges())}};
}

inline Json to_json(const Counterexample& c) {
    Json out{{"instance", to_json(c.instance)},
             {"k", c.k},
             {"expected", to_json(c.expected)},
             {"actual", to_json(c.actual)},
             {"note", c.note}};
    out["transformed"] = c.transformed ? to_json(*c.transformed) : Json(nullptr);
    out["alpha"] = c.alpha ? Json(*c.alpha) : Json(nullptr);
    return out;
}

inline Json to_json(const PropertyReport& r) {
    Json out{{"function", r.function_name},
             {"property", to_string(r.property)},
             {"verdict", to_string(r.verdict)},
             {"trials", r.trials}};
    out["counterexample"] = r.counterexample ? to_json(*r.counterexample) : Json(nullptr);
    if (r.discarded > 0) {
        out["discarded"] = r.discarded;
    }
    return out;
}

}  // namespace qcluster
