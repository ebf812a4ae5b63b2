#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "buildings/error.hpp"
#include "buildings/exact.hpp"

namespace buildings {

/// Union-find with an orientation bit relative to the class root.
class ParityUnionFind {
public:
    explicit ParityUnionFind(std::size_t n = 0) : parent_(n), parity_(n, 0), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t add() {
        parent_.push_back(parent_.size());
        parity_.push_back(0);
        rank_.push_back(0);
        return parent_.size() - 1;
    }

    std::size_t size() const { return parent_.size(); }

    /// root and parity of x relative to root
    std::pair<std::size_t, int> find(std::size_t x) {
        int p = 0;
        std::size_t r = x;
        while (parent_[r] != r) {
            p ^= parity_[r];
            r = parent_[r];
        }
        // path compression
        int q = p;
        while (parent_[x] != x) {
            std::size_t next = parent_[x];
            int px = parity_[x];
            parent_[x] = r;
            parity_[x] = q;
            q ^= px;
            x = next;
        }
        return {r, p};
    }

    std::size_t root(std::size_t x) { return find(x).first; }

    /// Joins x and y with relative parity `rel`; returns false on a parity conflict.
    bool unite(std::size_t x, std::size_t y, int rel = 0) {
        auto [rx, px] = find(x);
        auto [ry, py] = find(y);
        if (rx == ry) return (px ^ py) == rel;
        if (rank_[rx] < rank_[ry]) {
            std::swap(rx, ry);
            std::swap(px, py);
        }
        parent_[ry] = rx;
        parity_[ry] = px ^ py ^ rel;
        if (rank_[rx] == rank_[ry]) ++rank_[rx];
        return true;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<int> parity_;
    std::vector<int> rank_;
};

/// Finite metric tree with one ray per end. Nodes are 0..node_count-1.
struct MetricTree {
    struct Edge {
        int u;
        int v;
        Rational length;
    };

    int node_count = 0;
    std::vector<Edge> edges;
    std::map<std::string, int> end_nodes;

    int add_node() { return node_count++; }
    void add_edge(int u, int v, Rational length) { edges.push_back({u, v, length}); }

    std::vector<std::vector<std::pair<int, std::size_t>>> adjacency() const {
        std::vector<std::vector<std::pair<int, std::size_t>>> adj(node_count);
        for (std::size_t i = 0; i < edges.size(); ++i) {
            adj[edges[i].u].emplace_back(edges[i].v, i);
            adj[edges[i].v].emplace_back(edges[i].u, i);
        }
        return adj;
    }

    /// Path lengths from `source` along first-discovered paths (exact on trees).
    std::vector<std::optional<Rational>> distances_from(int source) const {
        auto adj = adjacency();
        std::vector<std::optional<Rational>> dist(node_count);
        dist[source] = Rational(0);
        std::queue<int> q;
        q.push(source);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (auto [v, e] : adj[u]) {
                if (dist[v]) continue;
                dist[v] = *dist[u] + edges[e].length;
                q.push(v);
            }
        }
        return dist;
    }

    /// Node sequence of the tree path from a to b; empty if disconnected.
    std::vector<int> path(int a, int b) const {
        auto adj = adjacency();
        std::vector<int> parent(node_count, -2);
        parent[a] = -1;
        std::queue<int> q;
        q.push(a);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            if (u == b) break;
            for (auto [v, e] : adj[u]) {
                if (parent[v] != -2) continue;
                parent[v] = u;
                q.push(v);
            }
        }
        if (parent[b] == -2) return {};
        std::vector<int> out;
        for (int x = b; x != -1; x = parent[x]) out.push_back(x);
        std::reverse(out.begin(), out.end());
        return out;
    }

    std::optional<Rational> edge_length(int u, int v) const {
        for (const auto& e : edges)
            if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) return e.length;
        return std::nullopt;
    }

    bool is_tree() const {
        if (node_count == 0) return false;
        if (edges.size() + 1 != static_cast<std::size_t>(node_count)) return false;
        ParityUnionFind uf(node_count);
        for (const auto& e : edges)
            if (uf.root(e.u) == uf.root(e.v)) return false;
            else uf.unite(e.u, e.v);
        return true;
    }
};

/// The folded tree: nodes are classes of special points, plus per-line chart images
/// and the node metric read off the charts.
struct QuotientTree : MetricTree {
    struct ChartImage {
        std::string first;   // lexicographically smaller end
        std::string second;
        std::vector<std::pair<int, Rational>> nodes;  // in increasing chart coordinate
    };

    std::vector<ChartImage> charts;
    std::vector<std::string> node_labels;            // representative special point
    std::vector<std::vector<Rational>> metric;       // node-to-node distances

    const ChartImage* chart(const std::string& a, const std::string& b) const {
        for (const auto& c : charts)
            if ((c.first == a && c.second == b) || (c.first == b && c.second == a)) return &c;
        return nullptr;
    }
};

/// Post-hoc corruption used as a negative control: changes one edge length and the
/// corresponding metric entry without touching the rest of the metric.
inline void perturb_edge_length(QuotientTree& t, std::size_t edge, const Rational& delta) {
    auto& e = t.edges.at(edge);
    e.length += delta;
    if (!t.metric.empty()) {
        t.metric[e.u][e.v] += delta;
        t.metric[e.v][e.u] += delta;
    }
}

}  // namespace buildings
