#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "coarsekit/error.hpp"
#include "coarsekit/graph.hpp"
#include "coarsekit/host.hpp"
#include "coarsekit/kernel.hpp"
#include "coarsekit/metric.hpp"
#include "coarsekit/rep.hpp"
#include "coarsekit/treelift.hpp"

namespace coarsekit {

using nlohmann::json;

/// Fixed 12-decimal rendering; all numeric file output goes through this so
/// repeat runs are byte-identical.
inline std::string fmt_fixed(double x) {
    if (!std::isfinite(x)) return x > 0 ? "inf" : (x < 0 ? "-inf" : "nan");
    if (x == 0.0) x = 0.0; // normalize -0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12f", x);
    return buf;
}

/// Doubles destined for JSON reports are quantized through the fixed
/// formatter so serialization is stable.
inline double quantize(double x) {
    if (!std::isfinite(x)) return x;
    return std::atof(fmt_fixed(x).c_str());
}

// ---------------------------------------------------------------------------
// graph files: JSON {"n":int,"edges":[[u,v],...]} or whitespace edge list

inline json graph_to_json(const FiniteGraph& g) {
    json edges = json::array();
    for (auto [u, v] : g.edges()) edges.push_back(json::array({u, v}));
    return json{{"n", g.vertex_count()}, {"edges", edges}};
}

inline FiniteGraph graph_from_json(const json& j) {
    if (!j.contains("n") || !j.contains("edges"))
        throw Error("graph_from_json: expected {\"n\": int, \"edges\": [[u,v],...]}");
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return FiniteGraph(j.at("n").get<int>(), std::move(edges));
}

/// Whitespace token pairs; vertex count is 1 + the largest index.
inline FiniteGraph graph_from_edge_list_text(const std::string& text) {
    std::istringstream in(text);
    std::vector<int> tokens;
    int t;
    while (in >> t) tokens.push_back(t);
    if (tokens.size() % 2 != 0)
        throw Error("graph_from_edge_list_text: odd number of vertex tokens");
    std::vector<std::pair<int, int>> edges;
    int n = 0;
    for (std::size_t i = 0; i + 1 < tokens.size(); i += 2) {
        edges.emplace_back(tokens[i], tokens[i + 1]);
        n = std::max({n, tokens[i] + 1, tokens[i + 1] + 1});
    }
    return FiniteGraph(n, std::move(edges));
}

inline FiniteGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("load_graph: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{')
        return graph_from_json(json::parse(text));
    return graph_from_edge_list_text(text);
}

inline void save_graph(const FiniteGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("save_graph: cannot open " + path);
    out << graph_to_json(g).dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// metric / kernel CSV

/// Metric matrix with a header row of point labels.
inline std::string metric_to_csv(const FiniteMetricSpace& m) {
    std::ostringstream out;
    const int n = m.point_count();
    for (int j = 0; j < n; ++j) out << (j ? "," : "") << "p" << j;
    out << "\n";
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) out << (j ? "," : "") << fmt_fixed(m.at(i, j));
        out << "\n";
    }
    return out.str();
}

inline std::string kernel_to_csv(const Kernel& k) {
    std::ostringstream out;
    const int n = k.point_count();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) out << (j ? "," : "") << fmt_fixed(k.at(i, j));
        out << "\n";
    }
    return out.str();
}

namespace detail {

inline std::vector<std::vector<double>> parse_csv_matrix(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        bool numeric = true;
        while (std::getline(ls, cell, ',')) {
            try {
                std::size_t used = 0;
                const double v = std::stod(cell, &used);
                row.push_back(v);
            } catch (...) {
                numeric = false;
                break;
            }
        }
        if (!numeric) continue; // header row of labels
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace detail

inline FiniteMetricSpace metric_from_csv(const std::string& text) {
    const auto rows = detail::parse_csv_matrix(text);
    const int n = static_cast<int>(rows.size());
    if (n == 0) throw Error("metric_from_csv: no numeric rows");
    FiniteMetricSpace m(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n)
            throw Error("metric_from_csv: row " + std::to_string(i) + " has " +
                        std::to_string(rows[static_cast<std::size_t>(i)].size()) + " cells, expected " +
                        std::to_string(n));
        for (int j = 0; j < n; ++j)
            m.set(i, j, rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    }
    return m;
}

inline Kernel kernel_from_csv(const std::string& text) {
    const FiniteMetricSpace m = metric_from_csv(text);
    return Kernel(m.point_count(), m.raw());
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("read_file: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw Error("write_file: cannot open " + path);
    out << content;
}

// ---------------------------------------------------------------------------
// host spaces: JSON {"host_metric": <csv path>, "Z": [indices], "pieces": [[indices],...]}

inline json host_space_to_json(const HostSpace& h, const std::string& metric_csv_path) {
    json pieces = json::array();
    for (const auto& p : h.z_pieces) pieces.push_back(p);
    return json{{"host_metric", metric_csv_path}, {"Z", h.z}, {"pieces", pieces}};
}

/// Loads a host space; the host_metric field is a path to a metric CSV,
/// resolved relative to the JSON file's directory.
inline HostSpace host_space_from_json(const json& j, const std::string& base_dir = "") {
    HostSpace h;
    std::string ref = j.at("host_metric").get<std::string>();
    if (!base_dir.empty() && !ref.empty() && ref.front() != '/') ref = base_dir + "/" + ref;
    h.metric = metric_from_csv(read_file(ref));
    for (const auto& z : j.at("Z")) h.z.push_back(z.get<int>());
    std::sort(h.z.begin(), h.z.end());
    for (const auto& pj : j.at("pieces")) {
        std::vector<int> piece;
        for (const auto& v : pj) piece.push_back(v.get<int>());
        h.z_pieces.push_back(std::move(piece));
    }
    const int n = h.metric.point_count();
    for (int z : h.z)
        if (z < 0 || z >= n) throw Error("host_space_from_json: Z index " + std::to_string(z) +
                                         " outside the host metric");
    return h;
}

// ---------------------------------------------------------------------------
// tree embedding export: JSON list of {vertex, support: [edge ids]}

inline json embedding_to_json(const TreeEmbedding& emb) {
    json out = json::array();
    for (std::size_t v = 0; v < emb.xi.size(); ++v)
        out.push_back({{"vertex", static_cast<int>(v)}, {"support", emb.xi[v].support}});
    return out;
}

// ---------------------------------------------------------------------------
// group algebra elements: JSON {"terms": [{"word": "T S T^-1", "coeff": [num, den]}, ...]}

inline GroupAlgebraElement element_from_json(const json& j) {
    GroupAlgebraElement x;
    for (const auto& term : j.at("terms")) {
        const auto& coeff = term.at("coeff");
        x.add(parse_sl2_word(term.at("word").get<std::string>()),
              Rational(coeff.at(0).get<long long>(), coeff.at(1).get<long long>()));
    }
    return x;
}

// ---------------------------------------------------------------------------
// report fragments shared by the CLI and the test suites

inline json verdict_to_json(const CndVerdict& v) {
    json j;
    j["verdict"] = v.is_cnd() ? "CND" : "NOT_CND";
    j["max_eig"] = quantize(v.max_eigenvalue);
    if (!v.witness.empty()) {
        json w = json::array();
        for (double t : v.witness) w.push_back(quantize(t));
        j["witness"] = w;
        j["witness_value"] = quantize(v.witness_value);
    }
    return j;
}

} // namespace coarsekit
