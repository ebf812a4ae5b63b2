#pragma once

// Folding the union of all lines into a tree: lines mx and my are glued along
// the part of the ray toward m lying below the far half of the side of triangle
// mxy (combing up to the split point, elementary equivalence beyond it).

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "buildings/error.hpp"
#include "buildings/exact.hpp"
#include "buildings/metric_tree.hpp"
#include "buildings/treefold/instance.hpp"

namespace buildings::treefold {

inline constexpr std::size_t kDefaultBreakpointCap = 200'000;

/// Lines mx and my agree on points with b_m <= bound; below `split` this is combing.
struct Identification {
    int m;
    int x;
    int y;
    Rational split;
    Rational bound;
};

/// Breakpoint closure plus the resulting point and interval classes.
class FoldComputation {
public:
    explicit FoldComputation(const Instance& inst, std::size_t cap = kDefaultBreakpointCap)
        : inst_(inst), frames_(inst) {
        const int n = inst.size();
        for (int m = 0; m < n; ++m)
            for (int x = 0; x < n; ++x)
                for (int y = x + 1; y < n; ++y) {
                    if (x == m || y == m) continue;
                    Rational split = frames_.beta(m, x, y);
                    ids_.push_back({m, x, y, split, split + inst.side(m, x, y) / 2});
                }
        close(cap);
        classify();
    }

    const Instance& instance() const { return inst_; }
    const Frames& frames() const { return frames_; }
    const std::vector<Identification>& identifications() const { return ids_; }

    /// Sorted breakpoints of each line.
    const std::vector<Rational>& breakpoints(int line) const { return points_[line]; }

    /// Global id of a breakpoint, or -1 if t is not a breakpoint of that line.
    long point_id(int line, const Rational& t) const {
        const auto& v = points_[line];
        auto it = std::lower_bound(v.begin(), v.end(), t);
        if (it == v.end() || *it != t) return -1;
        return static_cast<long>(offset_[line] + (it - v.begin()));
    }

    std::size_t point_class(std::size_t pid) { return points_uf_.root(pid); }

    /// Image of a point of line mx on line my under the identification, if in range.
    std::optional<Rational> image(const Identification& id, bool forward, const Rational& t) const {
        int from = forward ? id.x : id.y, to = forward ? id.y : id.x;
        Rational b = frames_.b(id.m, from, t);
        if (b > id.bound) return std::nullopt;
        return frames_.t(id.m, to, b);
    }

    QuotientTree quotient() const { return quotient_; }

private:
    void close(std::size_t cap) {
        const int L = inst_.line_count();
        std::vector<std::set<Rational>> pts(L);
        for (auto [a, b, c] : inst_.triples())
            for (auto [x, y, z] : {std::array{a, b, c}, std::array{a, c, b}, std::array{b, c, a}}) {
                const Rational &lo = inst_.corner(x, y, z), &hi = inst_.corner(y, x, z);
                auto& s = pts[inst_.line_id(x, y)];
                s.insert(lo);
                s.insert(hi);
                s.insert((lo + hi) / 2);
            }
        for (auto& s : pts)
            if (s.empty()) s.insert(Rational(0));

        std::size_t total = 0;
        for (const auto& s : pts) total += s.size();
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& id : ids_)
                for (bool fwd : {true, false}) {
                    int from = inst_.line_id(id.m, fwd ? id.x : id.y), to = inst_.line_id(id.m, fwd ? id.y : id.x);
                    for (const Rational& t : pts[from]) {
                        auto img = image(id, fwd, t);
                        if (!img) continue;
                        if (pts[to].insert(*img).second) {
                            changed = true;
                            if (++total > cap)
                                throw Error(ErrorCode::FoldMismatch,
                                            "breakpoint closure exceeds cap of " + std::to_string(cap));
                        }
                    }
                }
        }
        std::size_t off = 0;
        for (const auto& s : pts) {
            offset_.push_back(off);
            points_.emplace_back(s.begin(), s.end());
            off += s.size();
        }
        points_uf_ = ParityUnionFind(off);
    }

    std::string describe(int line, const Rational& t) const {
        auto [a, b] = inst_.line_ends(line);
        return inst_.ends()[a] + inst_.ends()[b] + ":" + t.str();
    }

    void classify() {
        const int L = inst_.line_count();
        const auto& E = inst_.ends();
        std::vector<std::size_t> ioff;  // interval ids: line offset, index i for [t_i, t_{i+1}]
        std::size_t total = 0;
        for (int l = 0; l < L; ++l) {
            ioff.push_back(total);
            total += points_[l].size() - 1;
        }
        ParityUnionFind iv(total);

        for (const auto& id : ids_) {
            int lx = inst_.line_id(id.m, id.x), ly = inst_.line_id(id.m, id.y);
            const bool flip = Instance::dir(id.m, id.x) != Instance::dir(id.m, id.y);
            const auto& px = points_[lx];
            std::vector<long> img(px.size(), -1);
            for (std::size_t i = 0; i < px.size(); ++i) {
                auto t = image(id, true, px[i]);
                if (!t) continue;
                long j = point_id(ly, *t);
                if (j < 0) throw Error(ErrorCode::FoldMismatch, "breakpoint closure incomplete at " + describe(ly, *t));
                img[i] = j;
                points_uf_.unite(offset_[lx] + i, static_cast<std::size_t>(j));
            }
            for (std::size_t i = 0; i + 1 < px.size(); ++i) {
                if (img[i] < 0 || img[i + 1] < 0) continue;
                long j0 = img[i] - static_cast<long>(offset_[ly]), j1 = img[i + 1] - static_cast<long>(offset_[ly]);
                if (std::abs(j0 - j1) != 1)
                    throw Error(ErrorCode::FoldMismatch, "interval image is not an interval on " + describe(ly, px[i]));
                if (!iv.unite(ioff[lx] + i, ioff[ly] + std::min(j0, j1), flip ? 1 : 0))
                    throw Error(ErrorCode::FoldMismatch, "orientation conflict gluing lines " + E[id.m] + E[id.x] +
                                                             " and " + E[id.m] + E[id.y]);
            }
        }

        // a line must embed: distinct breakpoints stay distinct
        for (int l = 0; l < L; ++l) {
            std::set<std::size_t> seen;
            for (std::size_t i = 0; i < points_[l].size(); ++i)
                if (!seen.insert(points_uf_.root(offset_[l] + i)).second)
                    throw Error(ErrorCode::FoldMismatch, "fold is not injective on line at " + describe(l, points_[l][i]));
        }

        // nodes
        std::map<std::size_t, int> node_of;
        QuotientTree& q = quotient_;
        for (int l = 0; l < L; ++l)
            for (std::size_t i = 0; i < points_[l].size(); ++i) {
                auto r = points_uf_.root(offset_[l] + i);
                if (node_of.emplace(r, q.node_count).second) {
                    q.add_node();
                    q.node_labels.push_back(describe(l, points_[l][i]));
                }
            }
        auto node = [&](int l, std::size_t i) { return node_of.at(points_uf_.root(offset_[l] + i)); };

        // edges, one per interval class; members must agree on their endpoints
        std::map<std::size_t, std::pair<int, int>> edge_ends;
        for (int l = 0; l < L; ++l)
            for (std::size_t i = 0; i + 1 < points_[l].size(); ++i) {
                auto [root, par] = iv.find(ioff[l] + i);
                int u = node(l, i), v = node(l, i + 1);
                if (par) std::swap(u, v);
                auto [it, fresh] = edge_ends.emplace(root, std::pair{u, v});
                if (fresh)
                    q.add_edge(u, v, points_[l][i + 1] - points_[l][i]);
                else if (it->second != std::pair{u, v})
                    throw Error(ErrorCode::FoldMismatch, "glued intervals disagree at " + describe(l, points_[l][i]));
            }

        // rays toward each end leave from the outermost breakpoint of every line through it
        for (int m = 0; m < inst_.size(); ++m) {
            std::optional<int> at;
            for (int x = 0; x < inst_.size(); ++x) {
                if (x == m) continue;
                int l = inst_.line_id(m, x);
                int v = m < x ? node(l, 0) : node(l, points_[l].size() - 1);
                if (at && *at != v)
                    throw Error(ErrorCode::FoldMismatch, "rays toward " + E[m] + " leave from different nodes");
                at = v;
            }
            q.end_nodes[E[m]] = *at;
        }

        for (int l = 0; l < L; ++l) {
            auto [a, b] = inst_.line_ends(l);
            QuotientTree::ChartImage c{E[a], E[b], {}};
            for (std::size_t i = 0; i < points_[l].size(); ++i) c.nodes.emplace_back(node(l, i), points_[l][i]);
            q.charts.push_back(std::move(c));
        }

        // metric read off a common chart; pairs without one fall back to the path metric
        const int N = q.node_count;
        std::vector<std::vector<std::optional<Rational>>> d(N, std::vector<std::optional<Rational>>(N));
        for (const auto& c : q.charts)
            for (const auto& [u, tu] : c.nodes)
                for (const auto& [v, tv] : c.nodes)
                    if (!d[u][v]) d[u][v] = abs(tu - tv);
        q.metric.assign(N, std::vector<Rational>(N, Rational(0)));
        for (int u = 0; u < N; ++u) {
            std::vector<std::optional<Rational>> path;
            for (int v = 0; v < N; ++v) {
                if (d[u][v]) {
                    q.metric[u][v] = *d[u][v];
                    continue;
                }
                if (path.empty()) path = q.distances_from(u);
                if (!path[v]) throw Error(ErrorCode::FoldMismatch, "quotient is disconnected");
                q.metric[u][v] = *path[v];
            }
        }
    }

    const Instance& inst_;
    Frames frames_;
    std::vector<Identification> ids_;
    std::vector<std::vector<Rational>> points_;
    std::vector<std::size_t> offset_;
    ParityUnionFind points_uf_;
    QuotientTree quotient_;
};

/// Folds a valid instance into its quotient tree. Throws CombingMismatch or FoldMismatch.
inline QuotientTree fold_quotient(const Instance& inst, std::size_t cap = kDefaultBreakpointCap) {
    return FoldComputation(inst, cap).quotient();
}

/// A point of the quotient: either a node id or a point on one of the lines.
using TreeLocation = std::variant<int, PointRef>;

namespace detail {

struct Resolved {
    std::vector<std::pair<int, Rational>> exits;  // (node, distance to it)
    std::string segment;                          // empty for a node
    Rational position;                            // along the segment
};

inline Resolved resolve(const QuotientTree& t, const TreeLocation& loc) {
    if (const int* n = std::get_if<int>(&loc)) {
        if (*n < 0 || *n >= t.node_count) throw Error(ErrorCode::UnknownPoint, "no node " + std::to_string(*n));
        return {{{*n, Rational(0)}}, "", 0};
    }
    const PointRef& p = std::get<PointRef>(loc);
    const auto* c = t.chart(p.a, p.b);
    if (!c || p.a == p.b) throw Error(ErrorCode::UnknownPoint, "no line " + p.a + p.b);
    const auto& nodes = c->nodes;
    // chart coordinates are intrinsic to the line, independent of the order a, b were given in
    if (p.t < nodes.front().second)
        return {{{nodes.front().first, nodes.front().second - p.t}}, "ray:" + c->first, nodes.front().second - p.t};
    if (p.t > nodes.back().second)
        return {{{nodes.back().first, p.t - nodes.back().second}}, "ray:" + c->second, p.t - nodes.back().second};
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].second == p.t) return {{{nodes[i].first, Rational(0)}}, "", 0};
        if (nodes[i].second < p.t && p.t < nodes[i + 1].second) {
            auto [u, tu] = nodes[i];
            auto [v, tv] = nodes[i + 1];
            int lo = std::min(u, v);
            Rational pos = lo == u ? p.t - tu : tv - p.t;
            return {{{u, p.t - tu}, {v, tv - p.t}},
                    "edge:" + std::to_string(lo) + "-" + std::to_string(std::max(u, v)),
                    pos};
        }
    }
    throw std::logic_error("unreachable chart lookup");
}

}  // namespace detail

/// Tree distance between two points of the quotient.
inline Rational quotient_distance(const QuotientTree& t, const TreeLocation& x, const TreeLocation& y) {
    auto rx = detail::resolve(t, x), ry = detail::resolve(t, y);
    if (!rx.segment.empty() && rx.segment == ry.segment) return abs(rx.position - ry.position);
    std::optional<Rational> best;
    for (const auto& [u, du] : rx.exits)
        for (const auto& [v, dv] : ry.exits) {
            Rational d = du + t.metric.at(u).at(v) + dv;
            if (!best || d < *best) best = d;
        }
    return *best;
}

}  // namespace buildings::treefold
