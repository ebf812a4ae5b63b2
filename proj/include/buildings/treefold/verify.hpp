#pragma once

// Independent checks that a folded quotient is an R-tree carrying the lines as
// geodesics: tree shape, chart isometry, chart overlaps, common charts, metric,
// four-point condition and ends.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "buildings/exact.hpp"
#include "buildings/metric_tree.hpp"
#include "buildings/treefold/instance.hpp"

namespace buildings::treefold {

struct AxiomCheck {
    std::string name;
    bool passed = true;
    std::string witness;  // first counterexample, if any
};

struct TreeAxiomReport {
    std::vector<AxiomCheck> checks;

    bool ok() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
    const AxiomCheck* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

namespace detail {

inline std::string node_name(const QuotientTree& t, int v) {
    return v >= 0 && v < static_cast<int>(t.node_labels.size()) ? t.node_labels[v] : "#" + std::to_string(v);
}

}  // namespace detail

inline TreeAxiomReport verify_tree_axioms(const Instance& inst, const QuotientTree& t) {
    TreeAxiomReport rep;
    auto check = [&](const std::string& name) -> AxiomCheck& {
        rep.checks.push_back({name, true, ""});
        return rep.checks.back();
    };
    auto fail = [](AxiomCheck& c, std::string witness) {
        if (c.passed) c.witness = std::move(witness);
        c.passed = false;
    };
    auto nm = [&](int v) { return detail::node_name(t, v); };
    const int N = t.node_count;

    {
        auto& c = check("TREE_SHAPE");
        for (const auto& e : t.edges) {
            if (e.u < 0 || e.u >= N || e.v < 0 || e.v >= N) fail(c, "edge with unknown endpoint");
            else if (e.length <= 0) fail(c, "edge " + nm(e.u) + " -- " + nm(e.v) + " has length " + e.length.str());
        }
        if (c.passed && !t.is_tree())
            fail(c, std::to_string(N) + " nodes, " + std::to_string(t.edges.size()) + " edges: not connected and acyclic");
    }

    {
        auto& c = check("A1_CHART_ISOMETRY");
        for (const auto& ch : t.charts) {
            std::set<int> seen;
            for (std::size_t i = 0; i < ch.nodes.size(); ++i) {
                if (!seen.insert(ch.nodes[i].first).second)
                    fail(c, "line " + ch.first + ch.second + " meets node " + nm(ch.nodes[i].first) + " twice");
                if (i == 0) continue;
                auto [u, tu] = ch.nodes[i - 1];
                auto [v, tv] = ch.nodes[i];
                auto len = t.edge_length(u, v);
                if (!len || *len != tv - tu)
                    fail(c, "line " + ch.first + ch.second + " between " + nm(u) + " and " + nm(v) + ": chart gap " +
                                (tv - tu).str() + ", edge " + (len ? len->str() : std::string("missing")));
            }
            if (!ch.nodes.empty() && (t.end_nodes.count(ch.first) == 0 || t.end_nodes.count(ch.second) == 0 ||
                                      t.end_nodes.at(ch.first) != ch.nodes.front().first ||
                                      t.end_nodes.at(ch.second) != ch.nodes.back().first))
                fail(c, "line " + ch.first + ch.second + " does not leave along the rays of its ends");
        }
    }

    {
        auto& c = check("A2_CHART_OVERLAP");
        for (std::size_t i = 0; i < t.charts.size(); ++i)
            for (std::size_t j = i + 1; j < t.charts.size(); ++j) {
                const auto &a = t.charts[i], &b = t.charts[j];
                std::map<int, std::size_t> pos_b;
                for (std::size_t k = 0; k < b.nodes.size(); ++k) pos_b[b.nodes[k].first] = k;
                std::vector<std::size_t> ia, ib;
                for (std::size_t k = 0; k < a.nodes.size(); ++k)
                    if (auto it = pos_b.find(a.nodes[k].first); it != pos_b.end()) {
                        ia.push_back(k);
                        ib.push_back(it->second);
                    }
                if (ia.empty()) continue;
                const std::string pair = a.first + a.second + "/" + b.first + b.second;
                if (ia.back() - ia.front() + 1 != ia.size()) {
                    fail(c, "common nodes of " + pair + " are not contiguous on " + a.first + a.second);
                    continue;
                }
                std::vector<std::size_t> sb = ib;
                std::sort(sb.begin(), sb.end());
                if (sb.back() - sb.front() + 1 != sb.size()) {
                    fail(c, "common nodes of " + pair + " are not contiguous on " + b.first + b.second);
                    continue;
                }
                for (std::size_t k = 1; k < ia.size(); ++k) {
                    Rational da = a.nodes[ia[k]].second - a.nodes[ia[0]].second;
                    Rational db = abs(b.nodes[ib[k]].second - b.nodes[ib[0]].second);
                    if (da != db) fail(c, "charts " + pair + " disagree on distance " + da.str() + " vs " + db.str());
                }
            }
    }

    {
        auto& c = check("A3_COMMON_CHART");
        std::vector<std::vector<bool>> covered(N, std::vector<bool>(N, false));
        for (const auto& ch : t.charts)
            for (const auto& [u, tu] : ch.nodes)
                for (const auto& [v, tv] : ch.nodes) covered[u][v] = true;
        for (int u = 0; u < N && c.passed; ++u)
            for (int v = u + 1; v < N; ++v)
                if (!covered[u][v]) {
                    fail(c, "no line passes through both " + nm(u) + " and " + nm(v));
                    break;
                }
    }

    {
        auto& c = check("METRIC");
        if (static_cast<int>(t.metric.size()) != N) {
            fail(c, "metric has wrong size");
        } else if (rep.checks.front().passed) {
            for (int u = 0; u < N && c.passed; ++u) {
                auto d = t.distances_from(u);
                for (int v = 0; v < N; ++v)
                    if (!d[v] || *d[v] != t.metric[u][v] || t.metric[u][v] != t.metric[v][u]) {
                        fail(c, "d(" + nm(u) + ", " + nm(v) + ") = " + t.metric[u][v].str() + " but path length is " +
                                    (d[v] ? d[v]->str() : std::string("undefined")));
                        break;
                    }
            }
        }
    }

    {
        // d(x,y) + d(z,w) <= max of the other two pairings, for every quadruple
        auto& c = check("FOUR_POINT");
        if (static_cast<int>(t.metric.size()) == N) {
            const auto& d = t.metric;
            for (int x = 0; x < N && c.passed; ++x)
                for (int y = x + 1; y < N && c.passed; ++y)
                    for (int z = y + 1; z < N && c.passed; ++z)
                        for (int w = z + 1; w < N && c.passed; ++w) {
                            Rational s1 = d[x][y] + d[z][w], s2 = d[x][z] + d[y][w], s3 = d[x][w] + d[y][z];
                            // the two largest sums must coincide
                            Rational lo = min(s1, min(s2, s3)), hi = max(s1, max(s2, s3));
                            Rational mid = s1 + s2 + s3 - lo - hi;
                            if (mid != hi)
                                fail(c, "(" + nm(x) + ", " + nm(y) + ", " + nm(z) + ", " + nm(w) + "): sums " + s1.str() +
                                            ", " + s2.str() + ", " + s3.str());
                        }
        }
    }

    {
        auto& c = check("ENDS");
        std::set<std::string> expected(inst.ends().begin(), inst.ends().end()), got;
        for (const auto& [e, v] : t.end_nodes) {
            got.insert(e);
            if (v < 0 || v >= N) fail(c, "ray of " + e + " leaves from unknown node");
        }
        if (got != expected) fail(c, "rays do not match the ends of the instance");
        for (int a = 0; a < inst.size(); ++a)
            for (int b = a + 1; b < inst.size(); ++b)
                if (!t.chart(inst.ends()[a], inst.ends()[b]))
                    fail(c, "no chart for line " + inst.ends()[a] + inst.ends()[b]);
    }
    return rep;
}

}  // namespace buildings::treefold
