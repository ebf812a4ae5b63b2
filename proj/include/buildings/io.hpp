#pragma once

// JSON encodings of instances, quotient trees and Tits diagrams, plus DOT export
// and atomic file writes. Rationals are always "p/q" strings.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "buildings/error.hpp"
#include "buildings/exact.hpp"
#include "buildings/metric_tree.hpp"
#include "buildings/titsdiagram.hpp"
#include "buildings/treefold/instance.hpp"

namespace buildings::io {

using nlohmann::json;

inline Rational rational_from(const json& j) {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    throw Error(ErrorCode::ParseError, "expected a \"p/q\" rational, got " + j.dump());
}

inline json to_json(const Rational& r) { return r.str(); }

template <class T>
T field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("field '") + key + "': " + e.what());
    }
}

inline json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Writes to a sibling temporary file and renames it into place.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out.flush()) throw std::runtime_error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

// ---- instances

inline json instance_to_json(const treefold::Instance& inst) {
    const auto& E = inst.ends();
    json corners = json::array();
    for (auto [a, b, c] : inst.triples()) {
        json on_line = json::object();
        for (auto [x, y, z] : {std::array{a, b, c}, std::array{a, c, b}, std::array{b, c, a}})
            on_line[E[x] + E[y]] = {{"toward_" + E[x], to_json(inst.corner(x, y, z))},
                                    {"toward_" + E[y], to_json(inst.corner(y, x, z))}};
        corners.push_back({{"triple", {E[a], E[b], E[c]}}, {"side", to_json(inst.side(a, b, c))}, {"on_line", on_line}});
    }
    return {{"ends", E}, {"corners", corners}};
}

inline treefold::Instance instance_from_json(const json& j) {
    auto ends = field<std::vector<std::string>>(j, "ends");
    treefold::InstanceBuilder b(ends);
    auto corners = j.contains("corners") ? j.at("corners") : json::array();
    if (!corners.is_array()) throw Error(ErrorCode::ParseError, "'corners' must be an array");
    for (const auto& c : corners) {
        auto triple = field<std::vector<std::string>>(c, "triple");
        if (triple.size() != 3) throw Error(ErrorCode::ParseError, "a triple needs three ends");
        for (const auto& e : triple)
            if (std::find(ends.begin(), ends.end(), e) == ends.end())
                throw Error(ErrorCode::ParseError, "triple names unknown end '" + e + "'");
        b.side(triple[0], triple[1], triple[2], rational_from(c.at("side")));
        const json& lines = c.contains("on_line") ? c.at("on_line") : json();
        if (!lines.is_object() || lines.size() != 3)
            throw Error(ErrorCode::ParseError, "'on_line' must describe the three lines of the triple");
        for (const auto& [key, val] : lines.items()) {
            // a key is the concatenation of two of the triple's names, in either order
            std::vector<std::pair<std::string, std::string>> matches;
            for (int i = 0; i < 3; ++i)
                for (int k = 0; k < 3; ++k)
                    if (i != k && triple[i] + triple[k] == key) matches.emplace_back(triple[i], triple[k]);
            if (matches.size() != 1)
                throw Error(ErrorCode::ParseError, "line key '" + key + "' is " + (matches.empty() ? "unknown" : "ambiguous"));
            auto [x, y] = matches.front();
            std::string z;
            for (const auto& e : triple)
                if (e != x && e != y) z = e;
            b.corner(x, y, z, rational_from(field<json>(val, ("toward_" + x).c_str())));
            b.corner(y, x, z, rational_from(field<json>(val, ("toward_" + y).c_str())));
        }
    }
    return b.build();
}

inline json point_to_json(const treefold::PointRef& p) { return {{"line", {p.a, p.b}}, {"t", to_json(p.t)}}; }

// ---- quotient trees

inline json tree_to_json(const QuotientTree& t) {
    json nodes = json::array(), edges = json::array(), charts = json::array(), metric = json::array();
    for (int v = 0; v < t.node_count; ++v)
        nodes.push_back({{"id", v}, {"label", v < static_cast<int>(t.node_labels.size()) ? t.node_labels[v] : ""}});
    for (const auto& e : t.edges) edges.push_back({{"u", e.u}, {"v", e.v}, {"length", to_json(e.length)}});
    for (const auto& c : t.charts) {
        json pts = json::array();
        for (const auto& [v, x] : c.nodes) pts.push_back({v, to_json(x)});
        charts.push_back({{"line", {c.first, c.second}}, {"nodes", pts}});
    }
    for (const auto& row : t.metric) {
        json r = json::array();
        for (const auto& x : row) r.push_back(to_json(x));
        metric.push_back(r);
    }
    return {{"nodes", nodes}, {"edges", edges}, {"ends", t.end_nodes}, {"charts", charts}, {"metric", metric}};
}

inline QuotientTree tree_from_json(const json& j) {
    QuotientTree t;
    for (const auto& n : field<json>(j, "nodes")) {
        if (field<int>(n, "id") != t.node_count) throw Error(ErrorCode::ParseError, "node ids must be 0..n-1 in order");
        t.add_node();
        t.node_labels.push_back(n.value("label", std::string()));
    }
    auto node = [&](const json& v) {
        int id = v.get<int>();
        if (id < 0 || id >= t.node_count) throw Error(ErrorCode::ParseError, "unknown node id " + v.dump());
        return id;
    };
    try {
        for (const auto& e : field<json>(j, "edges")) t.add_edge(node(e.at("u")), node(e.at("v")), rational_from(e.at("length")));
        const json ends = field<json>(j, "ends");
        for (const auto& [name, v] : ends.items()) t.end_nodes[name] = node(v);
        for (const auto& c : field<json>(j, "charts")) {
            auto line = c.at("line").get<std::vector<std::string>>();
            if (line.size() != 2) throw Error(ErrorCode::ParseError, "a chart line needs two ends");
            QuotientTree::ChartImage ch{line[0], line[1], {}};
            for (const auto& p : c.at("nodes")) ch.nodes.emplace_back(node(p.at(0)), rational_from(p.at(1)));
            t.charts.push_back(std::move(ch));
        }
        for (const auto& row : field<json>(j, "metric")) {
            std::vector<Rational> r;
            for (const auto& x : row) r.push_back(rational_from(x));
            t.metric.push_back(std::move(r));
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    return t;
}

inline std::string tree_to_dot(const QuotientTree& t) {
    std::ostringstream os;
    os << "graph quotient {\n  node [shape=circle];\n";
    for (int v = 0; v < t.node_count; ++v)
        os << "  n" << v << " [label=\"" << (v < static_cast<int>(t.node_labels.size()) ? t.node_labels[v] : "") << "\"];\n";
    for (const auto& e : t.edges) os << "  n" << e.u << " -- n" << e.v << " [label=\"" << e.length << "\"];\n";
    for (const auto& [name, v] : t.end_nodes) {
        os << "  end_" << name << " [shape=plaintext, label=\"" << name << "\"];\n";
        os << "  n" << v << " -- end_" << name << " [style=dashed];\n";
    }
    os << "}\n";
    return os.str();
}

// ---- Tits diagrams: {"family":"E","rank":7,"dual":false,"encircled":[1,6]} with Bourbaki labels

inline TitsDiagram diagram_from_json(const json& j) {
    TitsDiagram d;
    d.spec.family = parse_family(field<std::string>(j, "family"));
    d.spec.rank = field<int>(j, "rank");
    d.spec.dual = j.value("dual", false);
    for (int label : field<std::vector<int>>(j, "encircled")) d.encircled.insert(label - 1);
    d.check();
    return d;
}

inline json diagram_to_json(const TitsDiagram& d) {
    return {{"family", std::string(1, family_letter(d.spec.family))},
            {"rank", d.spec.rank},
            {"dual", d.spec.dual},
            {"encircled", d.encircled_labels()}};
}

inline json vector_to_json(const RationalVector& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(to_json(x));
    return out;
}

}  // namespace buildings::io
