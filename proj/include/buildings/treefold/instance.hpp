#pragma once

// A finite set of ends together with, for every triple of ends, an equilateral
// triangle (possibly degenerate) drawn on the three lines joining them.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "buildings/error.hpp"
#include "buildings/exact.hpp"

namespace buildings::treefold {

using EndId = std::string;

/// A point on the line joining two ends, in that line's chart. Charts increase
/// toward the lexicographically larger end.
struct PointRef {
    EndId a;
    EndId b;
    Rational t;
};

class Instance {
public:
    Instance() = default;

    const std::vector<EndId>& ends() const { return ends_; }
    int size() const { return static_cast<int>(ends_.size()); }

    int index_of(const EndId& e) const {
        auto it = std::lower_bound(ends_.begin(), ends_.end(), e);
        if (it == ends_.end() || *it != e) throw Error(ErrorCode::UnknownPoint, "unknown end '" + e + "'");
        return static_cast<int>(it - ends_.begin());
    }
    bool has_end(const EndId& e) const { return std::binary_search(ends_.begin(), ends_.end(), e); }

    /// +1 when the chart of line xy increases from x toward y.
    static int dir(int x, int y) { return x < y ? 1 : -1; }

    /// Coordinate, on the chart of line xy, of the triangle {x,y,z} corner nearest x.
    const Rational& corner(int x, int y, int z) const { return corners_[cidx(x, y, z)]; }
    const Rational& side(int x, int y, int z) const { return sides_[sidx(x, y, z)]; }

    int line_count() const { return size() * (size() - 1) / 2; }
    int line_id(int x, int y) const {
        if (x > y) std::swap(x, y);
        // lines enumerated lexicographically by (x, y), x < y
        return x * size() - x * (x + 1) / 2 + (y - x - 1);
    }
    std::pair<int, int> line_ends(int id) const {
        for (int x = 0; x < size(); ++x)
            for (int y = x + 1; y < size(); ++y)
                if (line_id(x, y) == id) return {x, y};
        throw std::out_of_range("line id");
    }

    std::vector<std::array<int, 3>> triples() const {
        std::vector<std::array<int, 3>> out;
        for (int a = 0; a < size(); ++a)
            for (int b = a + 1; b < size(); ++b)
                for (int c = b + 1; c < size(); ++c) out.push_back({a, b, c});
        return out;
    }

    /// Restriction to a subset of the ends.
    Instance restrict_to(const std::vector<EndId>& subset) const;

private:
    friend class InstanceBuilder;

    std::size_t cidx(int x, int y, int z) const {
        std::size_t n = ends_.size();
        return (static_cast<std::size_t>(x) * n + y) * n + z;
    }
    std::size_t sidx(int x, int y, int z) const {
        std::array<int, 3> s{x, y, z};
        std::sort(s.begin(), s.end());
        return cidx(s[0], s[1], s[2]);
    }

    std::vector<EndId> ends_;
    std::vector<Rational> corners_;
    std::vector<Rational> sides_;
};

/// Name-keyed construction; build() checks that every triple is fully described.
class InstanceBuilder {
public:
    explicit InstanceBuilder(std::vector<EndId> ends) {
        std::sort(ends.begin(), ends.end());
        if (std::adjacent_find(ends.begin(), ends.end()) != ends.end())
            throw Error(ErrorCode::ParseError, "duplicate end name");
        for (const auto& e : ends)
            if (e.empty()) throw Error(ErrorCode::ParseError, "empty end name");
        if (ends.size() < 2) throw Error(ErrorCode::ParseError, "an instance needs at least two ends");
        inst_.ends_ = std::move(ends);
        std::size_t n = inst_.ends_.size();
        inst_.corners_.assign(n * n * n, Rational(0));
        inst_.sides_.assign(n * n * n, Rational(0));
        corner_set_.assign(n * n * n, false);
        side_set_.assign(n * n * n, false);
    }

    const std::vector<EndId>& ends() const { return inst_.ends_; }

    InstanceBuilder& side(const EndId& x, const EndId& y, const EndId& z, const Rational& l) {
        auto i = inst_.sidx(id(x), id(y), id(z));
        distinct(x, y, z);
        if (side_set_[i] && inst_.sides_[i] != l)
            throw Error(ErrorCode::ParseError, "conflicting side for triangle " + x + y + z);
        inst_.sides_[i] = l;
        side_set_[i] = true;
        return *this;
    }

    /// Corner of triangle {x,y,z} nearest x, on line xy.
    InstanceBuilder& corner(const EndId& x, const EndId& y, const EndId& z, const Rational& t) {
        distinct(x, y, z);
        auto i = inst_.cidx(id(x), id(y), id(z));
        if (corner_set_[i] && inst_.corners_[i] != t)
            throw Error(ErrorCode::ParseError, "conflicting corner (" + y + x + z + ") on line " + x + y);
        inst_.corners_[i] = t;
        corner_set_[i] = true;
        return *this;
    }

    Instance build() const {
        int n = inst_.size();
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (int c = b + 1; c < n; ++c) {
                    const auto& E = inst_.ends_;
                    if (!side_set_[inst_.sidx(a, b, c)])
                        throw Error(ErrorCode::ParseError, "missing triangle for ends " + E[a] + "," + E[b] + "," + E[c]);
                    for (auto [x, y, z] : {std::array{a, b, c}, std::array{b, a, c}, std::array{a, c, b},
                                           std::array{c, a, b}, std::array{b, c, a}, std::array{c, b, a}})
                        if (!corner_set_[inst_.cidx(x, y, z)])
                            throw Error(ErrorCode::ParseError, "missing corner toward " + E[x] + " on line " + E[x] +
                                                                   E[y] + " of triangle " + E[a] + E[b] + E[c]);
                }
        return inst_;
    }

private:
    int id(const EndId& e) const { return inst_.index_of(e); }
    static void distinct(const EndId& x, const EndId& y, const EndId& z) {
        if (x == y || y == z || x == z) throw Error(ErrorCode::ParseError, "triangle needs three distinct ends");
    }

    Instance inst_;
    std::vector<bool> corner_set_;
    std::vector<bool> side_set_;
};

inline Instance Instance::restrict_to(const std::vector<EndId>& subset) const {
    InstanceBuilder b(subset);
    const auto& E = b.ends();
    for (std::size_t i = 0; i < E.size(); ++i)
        for (std::size_t j = 0; j < E.size(); ++j)
            for (std::size_t k = 0; k < E.size(); ++k) {
                if (i == j || j == k || i == k) continue;
                int x = index_of(E[i]), y = index_of(E[j]), z = index_of(E[k]);
                b.corner(E[i], E[j], E[k], corner(x, y, z));
                b.side(E[i], E[j], E[k], side(x, y, z));
            }
    return b.build();
}

/// Each triangle has its three sides of the declared length on every line.
inline void check_equilateral(const Instance& inst) {
    for (auto [a, b, c] : inst.triples()) {
        const Rational& l = inst.side(a, b, c);
        const auto& E = inst.ends();
        if (l < 0) throw Error(ErrorCode::EquilateralViolation, "negative side for " + E[a] + E[b] + E[c]);
        for (auto [x, y, z] : {std::array{a, b, c}, std::array{a, c, b}, std::array{b, c, a}}) {
            Rational len = (inst.corner(y, x, z) - inst.corner(x, y, z)) * Instance::dir(x, y);
            if (len != l)
                throw Error(ErrorCode::EquilateralViolation, "triangle " + E[a] + E[b] + E[c] + " has side " + len.str() +
                                                                 " on line " + E[x] + E[y] + ", expected " + l.str());
        }
    }
}

/// Busemann coordinates: on line mx, b_m(t) = dir(m,x) * t + offset(m,x), increasing
/// away from m. Offsets are fixed so that the two lines of each triangle through m
/// agree at their common corner.
class Frames {
public:
    Frames() = default;

    /// Throws CombingMismatch if the corners do not admit consistent offsets.
    explicit Frames(const Instance& inst) : inst_(&inst), n_(inst.size()), offset_(n_ * n_) {
        const auto& E = inst.ends();
        for (int m = 0; m < n_; ++m) {
            std::vector<std::optional<Rational>> off(n_);
            int first = m == 0 ? 1 : 0;
            off[first] = Rational(0);
            std::vector<int> stack{first};
            // spanning tree over the other ends, then check every pair
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                for (int y = 0; y < n_; ++y) {
                    if (y == m || y == x || off[y]) continue;
                    off[y] = raw(m, x, y) + *off[x] - raw(m, y, x);
                    stack.push_back(y);
                }
            }
            for (int x = 0; x < n_; ++x) {
                if (x == m) continue;
                offset_[m * n_ + x] = *off[x];
            }
            for (int x = 0; x < n_; ++x)
                for (int y = x + 1; y < n_; ++y) {
                    if (x == m || y == m) continue;
                    if (b(m, x, inst.corner(m, x, y)) != b(m, y, inst.corner(m, y, x)))
                        throw Error(ErrorCode::CombingMismatch, "lines " + E[m] + E[x] + " and " + E[m] + E[y] +
                                                                    " split at inconsistent heights toward " + E[m]);
                }
        }
    }

    Rational b(int m, int x, const Rational& t) const { return Instance::dir(m, x) * t + offset_[m * n_ + x]; }
    Rational t(int m, int x, const Rational& b) const { return (b - offset_[m * n_ + x]) * Instance::dir(m, x); }

    /// Height of the point where lines mx and my separate.
    Rational beta(int m, int x, int y) const { return b(m, x, inst_->corner(m, x, y)); }

    /// Moves a point of line mx to line my keeping its Busemann coordinate toward m.
    Rational comb(int m, int x, int y, const Rational& t_on_mx) const { return t(m, y, b(m, x, t_on_mx)); }

private:
    Rational raw(int m, int x, int y) const { return Instance::dir(m, x) * inst_->corner(m, x, y); }

    const Instance* inst_ = nullptr;
    int n_ = 0;
    std::vector<Rational> offset_;
};

/// For each end m, the three separation heights among any three other ends must
/// have their two smallest values equal.
inline void check_ultrametric(const Instance& inst, const Frames& f) {
    const auto& E = inst.ends();
    int n = inst.size();
    for (int m = 0; m < n; ++m)
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y)
                for (int z = y + 1; z < n; ++z) {
                    if (m == x || m == y || m == z) continue;
                    std::array<Rational, 3> v{f.beta(m, x, y), f.beta(m, x, z), f.beta(m, y, z)};
                    std::sort(v.begin(), v.end());
                    if (v[0] != v[1])
                        throw Error(ErrorCode::CombingMismatch, "separation heights toward " + E[m] + " among " + E[x] +
                                                                    "," + E[y] + "," + E[z] + " are not tree-like");
                }
}

}  // namespace buildings::treefold
