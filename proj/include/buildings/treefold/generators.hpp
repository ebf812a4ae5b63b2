#pragma once

// Instances produced from a metric tree with ends plus a side length per triple.
// Charts of each line are anchored at the projection of a chosen root node.

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "buildings/error.hpp"
#include "buildings/exact.hpp"
#include "buildings/metric_tree.hpp"
#include "buildings/treefold/instance.hpp"

namespace buildings::treefold {

using SideFunction = std::function<Rational(const EndId&, const EndId&, const EndId&)>;

/// Each triangle is centred on the median of its three ends; corners lie at
/// distance side/2 from it along each line.
inline Instance instance_from_tree(const MetricTree& tree, int root, const SideFunction& side) {
    std::vector<EndId> names;
    for (const auto& [name, node] : tree.end_nodes) names.push_back(name);
    InstanceBuilder builder(names);
    const auto& E = builder.ends();
    const int n = static_cast<int>(E.size());

    auto from_root = tree.distances_from(root);
    // chart coordinate of every node on the path of each line
    std::map<std::pair<int, int>, std::map<int, Rational>> chart;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            auto p = tree.path(tree.end_nodes.at(E[a]), tree.end_nodes.at(E[b]));
            if (p.empty()) throw Error(ErrorCode::BadTemplateParams, "tree is disconnected");
            std::vector<Rational> pos{0};
            for (std::size_t i = 1; i < p.size(); ++i) pos.push_back(pos.back() + *tree.edge_length(p[i - 1], p[i]));
            std::size_t proj = 0;
            for (std::size_t i = 1; i < p.size(); ++i)
                if (*from_root[p[i]] < *from_root[p[proj]]) proj = i;
            auto& c = chart[{a, b}];
            for (std::size_t i = 0; i < p.size(); ++i) c[p[i]] = pos[i] - pos[proj];
        }

    auto median = [&](int a, int b, int c) {
        auto dist_c = tree.distances_from(tree.end_nodes.at(E[c]));
        const auto& line = chart.at({std::min(a, b), std::max(a, b)});
        int best = -1;
        for (const auto& [node, t] : line)
            if (best < 0 || *dist_c[node] < *dist_c[best]) best = node;
        return best;
    };

    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) {
                Rational l = side(E[a], E[b], E[c]);
                if (l < 0) throw Error(ErrorCode::BadTemplateParams, "negative side length");
                builder.side(E[a], E[b], E[c], l);
                int med = median(a, b, c);
                for (auto [x, y] : {std::pair{a, b}, std::pair{a, c}, std::pair{b, c}}) {
                    Rational m = chart.at({x, y}).at(med);
                    // x < y, so the chart increases toward y
                    builder.corner(E[x], E[y], E[a + b + c - x - y], m - l / 2);
                    builder.corner(E[y], E[x], E[a + b + c - x - y], m + l / 2);
                }
            }
    return builder.build();
}

using Names4 = std::array<EndId, 4>;  // roles p, q, r, s
inline const Names4 kDefaultNames{"p", "q", "r", "s"};

namespace detail {

inline std::string triple_key(std::array<EndId, 3> t) {
    std::sort(t.begin(), t.end());
    return t[0] + "\x1f" + t[1] + "\x1f" + t[2];
}

/// Four ends on a line pq (p at -infinity) with r and s branching at the given
/// positions; the root sits at position 0.
inline Instance four_end_instance(const Names4& nm, const Rational& xs, const Rational& xr, const Rational& l_pqs,
                                  const Rational& l_prs, const Rational& l_pqr, const Rational& l_qrs) {
    MetricTree t;
    std::map<Rational, int> at;
    for (const Rational& x : {Rational(0), xs, xr}) at.emplace(x, 0);
    for (auto& [x, node] : at) node = t.add_node();
    for (auto it = std::next(at.begin()); it != at.end(); ++it) t.add_edge(std::prev(it)->second, it->second, it->first - std::prev(it)->first);
    const auto& [p, q, r, s] = nm;
    t.end_nodes[p] = at.begin()->second;
    t.end_nodes[q] = at.rbegin()->second;
    t.end_nodes[r] = at.at(xr);
    t.end_nodes[s] = at.at(xs);
    // r and s need their own rays if they branch at an end of the segment
    for (const EndId& e : {r, s}) {
        int node = t.end_nodes[e];
        if (node == t.end_nodes[p] || node == t.end_nodes[q]) {
            int leaf = t.add_node();
            t.add_edge(node, leaf, 1);
            t.end_nodes[e] = leaf;
        }
    }
    std::map<std::string, Rational> sides{{triple_key({p, q, s}), l_pqs},
                                          {triple_key({p, r, s}), l_prs},
                                          {triple_key({p, q, r}), l_pqr},
                                          {triple_key({q, r, s}), l_qrs}};
    return instance_from_tree(t, at.at(Rational(0)),
                              [&](const EndId& x, const EndId& y, const EndId& z) { return sides.at(triple_key({x, y, z})); });
}

inline void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::BadTemplateParams, what);
}

}  // namespace detail

/// Three ends on a single vertex; corners at -l/2 and l/2 on every line.
inline Instance gen_tripod(const Rational& l, std::array<EndId, 3> names = {"p", "q", "r"}) {
    detail::require(l >= 0, "side must be nonnegative");
    MetricTree t;
    int v = t.add_node();
    for (const auto& e : names) t.end_nodes[e] = v;
    return instance_from_tree(t, v, [&](const EndId&, const EndId&, const EndId&) { return l; });
}

/// Two ends, a single line and no triangles.
inline Instance gen_line(EndId a = "p", EndId b = "q") { return InstanceBuilder({std::move(a), std::move(b)}).build(); }

/// Disjoint s- and r-triangles along pq: s branches at a1 + ls/2, r at a2 + lr/2.
inline Instance gen_config1(const Rational& a1, const Rational& ls, const Rational& a2, const Rational& lr,
                            const Names4& names = kDefaultNames) {
    detail::require(ls >= 0 && lr >= 0, "sides must be nonnegative");
    detail::require(a1 + ls < a2, "config 1 needs a1 + ls < a2");
    return detail::four_end_instance(names, a1 + ls / 2, a2 + lr / 2, ls, ls, lr, lr);
}

/// The s-triangle on [-u, u] overlaps the r-triangle on [0, L].
inline Instance gen_config2(const Rational& u, const Rational& L, const Names4& names = kDefaultNames) {
    detail::require(u > 0, "config 2 needs u > 0");
    detail::require(2 * u <= L, "config 2 needs u <= L/2");
    return detail::four_end_instance(names, 0, L / 2, 2 * u, 2 * u, L, L);
}

/// The s-triangle [a, a + ls] sits inside the r-triangle [0, L].
inline Instance gen_config3(const Rational& L, const Rational& ls, const Rational& a, const Names4& names = kDefaultNames) {
    detail::require(ls >= 0 && a >= 0, "config 3 needs ls >= 0 and a >= 0");
    detail::require(a + ls <= L, "config 3 needs a + ls <= L");
    Rational xs = a + ls / 2, xr = L / 2;
    if (xs > xr) return detail::four_end_instance(names, xs, xr, ls, L, L, 2 * L - 2 * a - ls);
    return detail::four_end_instance(names, xs, xr, ls, 2 * a + ls, L, L);
}

/// Adds a new end `twin` branching off every line toward p at chart coordinate `cut`
/// of the line joining p to the smallest other end. The cut must lie strictly beyond
/// every corner toward p. Triangles through p and the twin are degenerate at the cut.
inline Instance gen_attach_end(const Instance& inst, const EndId& p, const EndId& twin, const Rational& cut) {
    if (inst.has_end(twin)) throw Error(ErrorCode::BadTemplateParams, "end '" + twin + "' already exists");
    const int P = inst.index_of(p);
    const int n = inst.size();
    const auto& E = inst.ends();
    Frames f(inst);
    const int x0 = P == 0 ? 1 : 0;
    const Rational b_cut = f.b(P, x0, cut);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (x == P || y == P || x == y) continue;
            detail::require(b_cut < f.b(P, x, inst.corner(P, x, y)),
                            "cut must lie beyond every corner toward " + p);
        }

    std::vector<EndId> names = E;
    names.push_back(twin);
    InstanceBuilder b(names);
    // copy everything
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                if (x == y || y == z || x == z) continue;
                b.corner(E[x], E[y], E[z], inst.corner(x, y, z)).side(E[x], E[y], E[z], inst.side(x, y, z));
            }
    // line (twin, x) reuses the chart of line (p, x), flipped if the orientation differs
    auto twin_dir = [&](int x) { return (p < E[x]) == (twin < E[x]) ? 1 : -1; };
    for (int x = 0; x < n; ++x) {
        if (x == P) continue;
        int sg = twin_dir(x);
        Rational cut_px = f.t(P, x, b_cut);
        for (int y = 0; y < n; ++y) {
            if (y == P || y == x) continue;
            // triangle {twin, x, y} copies {p, x, y}
            b.side(twin, E[x], E[y], inst.side(P, x, y));
            b.corner(twin, E[x], E[y], sg * inst.corner(P, x, y));
            b.corner(E[x], twin, E[y], sg * inst.corner(x, P, y));
            b.corner(E[x], E[y], twin, inst.corner(x, y, P));
        }
        // degenerate triangle {twin, p, x} at the cut
        b.side(twin, p, E[x], 0);
        b.corner(p, E[x], twin, cut_px).corner(E[x], p, twin, cut_px);
        b.corner(twin, E[x], p, sg * cut_px).corner(E[x], twin, p, sg * cut_px);
        b.corner(twin, p, E[x], 0).corner(p, twin, E[x], 0);
    }
    return b.build();
}

/// Conventional end names: p q r s then t..z, then a..o.
inline std::vector<EndId> default_end_names(int n) {
    static const std::string letters = "pqrstuvwxyzabcdefghijklmno";
    std::vector<EndId> out;
    for (int i = 0; i < n; ++i) {
        if (i < static_cast<int>(letters.size()))
            out.emplace_back(1, letters[i]);
        else
            out.push_back("e" + std::to_string(i));
    }
    return out;
}

/// Seeded random instance with n ends: a random template on four ends (a tripod for
/// n = 3, a bare line for n = 2) followed by random end attachments.
inline Instance gen_random(std::uint64_t seed, int n) {
    if (n < 2) throw Error(ErrorCode::BadTemplateParams, "need at least two ends");
    std::mt19937_64 rng(seed);
    auto rnd = [&](int lo, int hi, int den) {
        std::uniform_int_distribution<int> d(lo, hi);
        return Rational(d(rng), den);
    };
    auto names = default_end_names(n);
    if (n == 2) return gen_line(names[0], names[1]);
    Instance inst;
    if (n == 3) {
        inst = gen_tripod(rnd(0, 12, 2), {names[0], names[1], names[2]});
    } else {
        Names4 nm{names[0], names[1], names[2], names[3]};
        int which = std::uniform_int_distribution<int>(1, 3)(rng);
        if (which == 1) {
            Rational a1 = rnd(-6, 6, 2), ls = rnd(0, 8, 2), gap = rnd(1, 6, 2), lr = rnd(0, 8, 2);
            inst = gen_config1(a1, ls, a1 + ls + gap, lr, nm);
        } else if (which == 2) {
            Rational u = rnd(1, 6, 2), extra = rnd(0, 6, 2);
            inst = gen_config2(u, 2 * u + extra, nm);
        } else {
            Rational L = rnd(2, 12, 1), a, ls;
            do {
                a = rnd(0, static_cast<int>(L.num()) * 2, 2);
                ls = rnd(0, static_cast<int>(L.num()) * 2, 2);
            } while (a + ls > L);
            inst = gen_config3(L, ls, a, nm);
        }
    }
    for (int k = (n == 3 ? 3 : 4); k < n; ++k) {
        const auto& E = inst.ends();
        int P = std::uniform_int_distribution<int>(0, inst.size() - 1)(rng);
        Frames f(inst);
        int x0 = P == 0 ? 1 : 0;
        std::optional<Rational> lowest;
        for (int x = 0; x < inst.size(); ++x)
            for (int y = 0; y < inst.size(); ++y)
                if (x != P && y != P && x != y) {
                    Rational h = f.b(P, x, inst.corner(P, x, y));
                    if (!lowest || h < *lowest) lowest = h;
                }
        Rational b_cut = *lowest - rnd(1, 6, 2);
        inst = gen_attach_end(inst, E[P], names[k], f.t(P, x0, b_cut));
    }
    return inst;
}

}  // namespace buildings::treefold
