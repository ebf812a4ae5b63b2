#pragma once

// Crystallographic root systems of finite type, built exactly from the Coxeter
// diagram in Bourbaki numbering. Vectors are expressed either in simple-root
// coordinates or in fundamental-weight coordinates (where the Weyl group acts
// by integer matrices).

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "buildings/error.hpp"
#include "buildings/exact.hpp"

namespace buildings {

using IntVector = std::vector<std::int64_t>;

struct IntVectorHash {
    std::size_t operator()(const IntVector& v) const noexcept {
        std::size_t h = 0xcbf29ce484222325ull;
        for (auto x : v) {
            h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

enum class Family { A, B, C, D, E, F, G };

inline char family_letter(Family f) { return "ABCDEFG"[static_cast<int>(f)]; }

inline Family parse_family(std::string_view s) {
    if (s.size() == 1 && s[0] >= 'A' && s[0] <= 'G') return static_cast<Family>(s[0] - 'A');
    throw Error(ErrorCode::InvalidType, "unknown family '" + std::string(s) + "'");
}

struct Bond {
    int a;  // 0-based node ids
    int b;
    int label;  // Coxeter label m: 3 single, 4 double, 6 triple
};

/// A finite Dynkin type. `dual` swaps long and short simple roots, which selects
/// the other crystallographic realization of a non-simply-laced Coxeter diagram.
struct DiagramSpec {
    Family family = Family::A;
    int rank = 1;
    bool dual = false;

    friend bool operator==(const DiagramSpec&, const DiagramSpec&) = default;

    bool simply_laced() const { return family == Family::A || family == Family::D || family == Family::E; }

    void check() const {
        bool ok = rank >= 1;
        switch (family) {
        case Family::A: break;
        case Family::B:
        case Family::C: ok = ok && rank >= 2; break;
        case Family::D: ok = ok && rank >= 3; break;
        case Family::E: ok = ok && rank >= 6 && rank <= 8; break;
        case Family::F: ok = ok && rank == 4; break;
        case Family::G: ok = ok && rank == 2; break;
        }
        if (ok && dual && simply_laced()) ok = false;
        if (!ok)
            throw Error(ErrorCode::InvalidType, std::string(1, family_letter(family)) + std::to_string(rank) +
                                                    (dual ? " (dual)" : "") + " is not a finite type");
    }

    /// e.g. "E7", "B5", "F4(dual)"
    std::string name() const {
        return std::string(1, family_letter(family)) + std::to_string(rank) + (dual ? "(dual)" : "");
    }

    std::vector<Bond> bonds() const {
        check();
        std::vector<Bond> out;
        auto chain = [&](int n) {
            for (int i = 0; i + 1 < n; ++i) out.push_back({i, i + 1, 3});
        };
        switch (family) {
        case Family::A: chain(rank); break;
        case Family::B:
        case Family::C:
            chain(rank);
            out.back().label = 4;
            break;
        case Family::D:
            chain(rank - 1);
            out.push_back({rank - 3, rank - 1, 3});
            break;
        case Family::E:
            out.push_back({0, 2, 3});
            out.push_back({1, 3, 3});
            for (int i = 2; i + 1 < rank; ++i) out.push_back({i, i + 1, 3});
            break;
        case Family::F:
            out = {{0, 1, 3}, {1, 2, 4}, {2, 3, 3}};
            break;
        case Family::G: out = {{0, 1, 6}}; break;
        }
        return out;
    }

    /// Squared lengths of the simple roots, long roots normalized to 2.
    std::vector<Rational> squared_lengths() const {
        check();
        std::vector<Rational> len(rank, Rational(2));
        switch (family) {
        case Family::B: len[rank - 1] = 1; break;
        case Family::C:
            std::fill(len.begin(), len.end(), Rational(1));
            len[rank - 1] = 2;
            break;
        case Family::F: len[2] = len[3] = 1; break;
        case Family::G: len[0] = Rational(2, 3); break;
        default: break;
        }
        if (dual) {
            Rational lo = *std::min_element(len.begin(), len.end());
            Rational hi = *std::max_element(len.begin(), len.end());
            for (auto& l : len) l = lo * hi / l;
        }
        return len;
    }
};

namespace detail {

inline RationalMatrix invert(RationalMatrix m) {
    const std::size_t n = m.size();
    RationalMatrix inv(n, RationalVector(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col].is_zero()) ++piv;
        if (piv == n) throw std::domain_error("singular matrix");
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        Rational p = m[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            m[col][j] /= p;
            inv[col][j] /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col].is_zero()) continue;
            Rational f = m[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                m[r][j] -= f * m[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

inline std::int64_t lcm_denominators(const RationalMatrix& m) {
    std::int64_t l = 1;
    for (const auto& row : m)
        for (const auto& x : row) l = std::lcm(l, x.den());
    return l;
}

inline std::vector<std::vector<std::int64_t>> scale_to_integers(const RationalMatrix& m, std::int64_t scale) {
    std::vector<std::vector<std::int64_t>> out(m.size(), std::vector<std::int64_t>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) out[i][j] = (m[i][j] * scale).num();
    return out;
}

inline __int128 int_bilinear(const IntVector& u, const IntVector& v, const std::vector<std::vector<std::int64_t>>& g) {
    __int128 s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0) continue;
        __int128 row = 0;
        for (std::size_t j = 0; j < v.size(); ++j) row += static_cast<__int128>(g[i][j]) * v[j];
        s += row * u[i];
    }
    return s;
}

}  // namespace detail

inline RationalVector to_rational(const IntVector& v) { return RationalVector(v.begin(), v.end()); }

/// Immutable root system data. Roots are stored in simple-root coordinates.
struct RootSystem {
    DiagramSpec spec;
    std::vector<Bond> bonds;
    std::vector<Rational> squared_lengths;
    RationalMatrix gram;                          // <alpha_i, alpha_j>
    std::vector<std::vector<std::int64_t>> cartan;  // <alpha_i, alpha_j^vee>
    RationalMatrix fundamental_weights;           // rows, simple-root coordinates
    RationalMatrix weight_gram;                   // <omega_i, omega_j>
    std::vector<IntVector> roots;                 // simple-root coordinates
    Rational long_length;                         // squared length of a long root

    // integer-scaled Gram matrices for fast exact inner products
    std::int64_t root_scale = 1;
    std::vector<std::vector<std::int64_t>> root_gram_int;
    std::int64_t weight_scale = 1;
    std::vector<std::vector<std::int64_t>> weight_gram_int;

    int rank() const { return spec.rank; }

    RationalVector simple_root(int i) const {
        RationalVector v(rank(), Rational(0));
        v.at(i) = 1;
        return v;
    }

    std::vector<RationalVector> simple_roots() const {
        std::vector<RationalVector> out;
        for (int i = 0; i < rank(); ++i) out.push_back(simple_root(i));
        return out;
    }

    /// <v, alpha_j^vee> for v in simple-root coordinates
    Rational coroot_pairing(const RationalVector& v, int j) const {
        Rational s = 0;
        for (int k = 0; k < rank(); ++k) s += v[k] * cartan[k][j];
        return s;
    }

    RationalVector reflect(const RationalVector& v, int j) const {
        RationalVector out = v;
        out[j] -= coroot_pairing(v, j);
        return out;
    }

    IntVector reflect_root(const IntVector& v, int j) const {
        IntVector out = v;
        std::int64_t p = 0;
        for (int k = 0; k < rank(); ++k) p += v[k] * cartan[k][j];
        out[j] -= p;
        return out;
    }

    /// simple-root coordinates -> fundamental-weight coordinates
    RationalVector to_weight_coords(const RationalVector& v) const {
        RationalVector out(rank(), Rational(0));
        for (int i = 0; i < rank(); ++i) out[i] = coroot_pairing(v, i);
        return out;
    }

    /// fundamental-weight coordinates -> simple-root coordinates
    RationalVector from_weight_coords(const RationalVector& w) const {
        RationalVector out(rank(), Rational(0));
        for (int i = 0; i < rank(); ++i)
            for (int k = 0; k < rank(); ++k) out[k] += w[i] * fundamental_weights[i][k];
        return out;
    }

    Rational inner(const RationalVector& u, const RationalVector& v) const { return bilinear(u, v, gram); }

    ExactCosine root_cosine(const IntVector& u, const IntVector& v) const {
        __int128 uv = detail::int_bilinear(u, v, root_gram_int);
        __int128 uu = detail::int_bilinear(u, u, root_gram_int);
        __int128 vv = detail::int_bilinear(v, v, root_gram_int);
        return cosine_from_products(Rational(detail::narrow(uv)), Rational(detail::narrow(uu)),
                                    Rational(detail::narrow(vv)));
    }

    /// Cosine between two vectors given in fundamental-weight coordinates.
    ExactCosine weight_cosine(const IntVector& u, const IntVector& v) const {
        __int128 uv = detail::int_bilinear(u, v, weight_gram_int);
        __int128 uu = detail::int_bilinear(u, u, weight_gram_int);
        __int128 vv = detail::int_bilinear(v, v, weight_gram_int);
        return cosine_from_products(Rational(detail::narrow(uv)), Rational(detail::narrow(uu)),
                                    Rational(detail::narrow(vv)));
    }

    Rational root_norm(const IntVector& r) const {
        return Rational(detail::narrow(detail::int_bilinear(r, r, root_gram_int)), root_scale);
    }

    bool is_long(const IntVector& r) const { return root_norm(r) == long_length; }

    std::vector<IntVector> long_roots() const {
        std::vector<IntVector> out;
        for (const auto& r : roots)
            if (is_long(r)) out.push_back(r);
        return out;
    }

    std::vector<IntVector> positive_roots() const {
        std::vector<IntVector> out;
        for (const auto& r : roots)
            if (std::all_of(r.begin(), r.end(), [](auto x) { return x >= 0; })) out.push_back(r);
        return out;
    }

    bool simple_root_is_long(int i) const { return squared_lengths.at(i) == long_length; }
};

/// Classical root counts, used as a cross-check of the reflection closure.
inline std::size_t classical_root_count(const DiagramSpec& s) {
    const std::size_t n = static_cast<std::size_t>(s.rank);
    switch (s.family) {
    case Family::A: return n * (n + 1);
    case Family::B:
    case Family::C: return 2 * n * n;
    case Family::D: return 2 * n * (n - 1);
    case Family::E: return n == 6 ? 72 : n == 7 ? 126 : 240;
    case Family::F: return 48;
    case Family::G: return 12;
    }
    return 0;
}

inline RootSystem build_root_system(const DiagramSpec& spec) {
    spec.check();
    RootSystem rs;
    rs.spec = spec;
    rs.bonds = spec.bonds();
    rs.squared_lengths = spec.squared_lengths();
    const int n = spec.rank;

    rs.gram.assign(n, RationalVector(n, Rational(0)));
    for (int i = 0; i < n; ++i) rs.gram[i][i] = rs.squared_lengths[i];
    for (const auto& b : rs.bonds) {
        Rational ip = -max(rs.squared_lengths[b.a], rs.squared_lengths[b.b]) / 2;
        rs.gram[b.a][b.b] = rs.gram[b.b][b.a] = ip;
    }
    rs.cartan.assign(n, std::vector<std::int64_t>(n, 0));
    RationalMatrix cartan_q(n, RationalVector(n, Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rational a = 2 * rs.gram[i][j] / rs.gram[j][j];
            if (!a.is_integer()) throw std::logic_error("non-integral Cartan entry");
            rs.cartan[i][j] = a.num();
            cartan_q[i][j] = a;
        }
    rs.fundamental_weights = detail::invert(cartan_q);
    rs.weight_gram.assign(n, RationalVector(n, Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rs.weight_gram[i][j] = bilinear(rs.fundamental_weights[i], rs.fundamental_weights[j], rs.gram);

    rs.root_scale = detail::lcm_denominators(rs.gram);
    rs.root_gram_int = detail::scale_to_integers(rs.gram, rs.root_scale);
    rs.weight_scale = detail::lcm_denominators(rs.weight_gram);
    rs.weight_gram_int = detail::scale_to_integers(rs.weight_gram, rs.weight_scale);
    rs.long_length = *std::max_element(rs.squared_lengths.begin(), rs.squared_lengths.end());

    // closure of the simple roots under simple reflections
    std::unordered_set<IntVector, IntVectorHash> seen;
    std::deque<IntVector> queue;
    for (int i = 0; i < n; ++i) {
        IntVector e(n, 0);
        e[i] = 1;
        if (seen.insert(e).second) queue.push_back(e);
    }
    while (!queue.empty()) {
        IntVector v = std::move(queue.front());
        queue.pop_front();
        for (int j = 0; j < n; ++j) {
            IntVector w = rs.reflect_root(v, j);
            if (seen.insert(w).second) queue.push_back(std::move(w));
        }
    }
    rs.roots.assign(seen.begin(), seen.end());
    std::sort(rs.roots.begin(), rs.roots.end());
    return rs;
}

/// The unique root dominating every other root coefficientwise.
inline IntVector highest_root(const RootSystem& rs) {
    const IntVector* best = nullptr;
    std::int64_t best_height = INT64_MIN;
    for (const auto& r : rs.roots) {
        std::int64_t h = std::accumulate(r.begin(), r.end(), std::int64_t{0});
        if (h > best_height) {
            best_height = h;
            best = &r;
        }
    }
    for (const auto& r : rs.roots)
        for (int i = 0; i < rs.rank(); ++i)
            if (r[i] > (*best)[i]) throw std::logic_error("root system has no dominating root (reducible?)");
    return *best;
}

struct ExtendedDiagram {
    DiagramSpec base;
    IntVector highest_root;
    /// (0-based node, bond multiplicity) for every node the affine node attaches to.
    /// Multiplicity is 4 cos^2 of the angle between -highest_root and the simple root.
    std::vector<std::pair<int, int>> affine_node_attachments;
};

inline ExtendedDiagram extended_diagram(const RootSystem& rs) {
    ExtendedDiagram ext;
    ext.base = rs.spec;
    ext.highest_root = highest_root(rs);
    IntVector neg = ext.highest_root;
    for (auto& x : neg) x = -x;
    for (int i = 0; i < rs.rank(); ++i) {
        IntVector e(rs.rank(), 0);
        e[i] = 1;
        ExactCosine c = rs.root_cosine(neg, e);
        if (c.sign() > 0) throw std::logic_error("highest root forms an acute angle with a negative simple root");
        Rational m = 4 * c.cos_squared();
        if (!m.is_integer()) throw std::logic_error("non-crystallographic angle in extended diagram");
        if (m.num() != 0) ext.affine_node_attachments.emplace_back(i, static_cast<int>(m.num()));
    }
    return ext;
}

inline constexpr std::size_t kDefaultOrbitCap = 1'000'000;

/// Orbit of a vector given in fundamental-weight coordinates (integer action).
inline std::vector<IntVector> weight_orbit(const RootSystem& rs, const IntVector& weight,
                                           std::size_t cap = kDefaultOrbitCap) {
    const int n = rs.rank();
    std::unordered_set<IntVector, IntVectorHash> seen{weight};
    std::vector<IntVector> order{weight};
    for (std::size_t head = 0; head < order.size(); ++head) {
        const IntVector cur = order[head];
        for (int j = 0; j < n; ++j) {
            if (cur[j] == 0) continue;
            IntVector next = cur;
            for (int i = 0; i < n; ++i) next[i] -= cur[j] * rs.cartan[j][i];
            if (seen.insert(next).second) {
                order.push_back(std::move(next));
                if (order.size() > cap)
                    throw Error(ErrorCode::OrbitTooLarge, "orbit exceeds cap of " + std::to_string(cap));
            }
        }
    }
    return order;
}

/// Weyl orbit of a rational vector in simple-root coordinates.
inline std::vector<RationalVector> weyl_orbit(const RootSystem& rs, const RationalVector& v,
                                              std::size_t cap = kDefaultOrbitCap) {
    RationalVector w = rs.to_weight_coords(v);
    std::int64_t scale = 1;
    for (const auto& x : w) scale = std::lcm(scale, x.den());
    IntVector wi;
    for (const auto& x : w) wi.push_back((x * scale).num());
    std::vector<RationalVector> out;
    for (const auto& o : weight_orbit(rs, wi, cap)) {
        RationalVector q;
        for (auto x : o) q.push_back(Rational(x, scale));
        out.push_back(rs.from_weight_coords(q));
    }
    return out;
}

/// Positive roots whose walls strictly separate u and v (one representative per +- pair).
inline std::vector<IntVector> separating_walls(const RootSystem& rs, const RationalVector& u, const RationalVector& v) {
    auto is_zero = [](const RationalVector& x) {
        return std::all_of(x.begin(), x.end(), [](const Rational& r) { return r.is_zero(); });
    };
    if (is_zero(u) || is_zero(v)) throw Error(ErrorCode::ZeroVector, "separating_walls of a zero vector");
    ExactCosine c = cos_between(u, v, rs.gram);
    if (is_angle(c, NamedAngle::Pi)) throw Error(ErrorCode::AntipodalPair, "vectors are antipodal");
    std::vector<IntVector> out;
    for (const auto& r : rs.positive_roots()) {
        RationalVector rq = to_rational(r);
        int su = rs.inner(rq, u).sign();
        int sv = rs.inner(rq, v).sign();
        if (su * sv < 0) out.push_back(r);
    }
    return out;
}

/// Reflection of v (simple-root coordinates) in the wall of the root r.
inline RationalVector reflect_in(const RootSystem& rs, const IntVector& r, const RationalVector& v) {
    RationalVector rq = to_rational(r);
    Rational k = 2 * rs.inner(v, rq) / rs.inner(rq, rq);
    RationalVector out = v;
    for (std::size_t i = 0; i < v.size(); ++i) out[i] -= k * rq[i];
    return out;
}

/// Permutation sigma of the nodes with -w0(alpha_i) = alpha_sigma(i).
/// w0 is found by driving the regular dominant weight rho into the antidominant
/// chamber with simple reflections and replaying the same word on each simple root.
inline std::vector<int> opposition_involution(const RootSystem& rs) {
    const int n = rs.rank();
    IntVector rho(n, 1);
    std::vector<int> word;
    for (;;) {
        int j = -1;
        for (int i = 0; i < n; ++i)
            if (rho[i] > 0) {
                j = i;
                break;
            }
        if (j < 0) break;
        std::int64_t c = rho[j];
        for (int i = 0; i < n; ++i) rho[i] -= c * rs.cartan[j][i];
        word.push_back(j);
    }
    std::vector<int> sigma(n, -1);
    for (int i = 0; i < n; ++i) {
        IntVector a(n, 0);
        a[i] = 1;
        for (int j : word) a = rs.reflect_root(a, j);
        for (int k = 0; k < n; ++k) {
            IntVector e(n, 0);
            e[k] = -1;
            if (a == e) sigma[i] = k;
        }
        if (sigma[i] < 0) throw std::logic_error("w0 does not map a simple root to a negative simple root");
    }
    return sigma;
}

/// Independent route: -w0(omega_i) is the negative of the antidominant element of the orbit of omega_i.
inline std::vector<int> opposition_involution_by_orbits(const RootSystem& rs) {
    const int n = rs.rank();
    std::vector<int> sigma(n, -1);
    for (int i = 0; i < n; ++i) {
        IntVector w(n, 0);
        w[i] = 1;
        for (const auto& o : weight_orbit(rs, w)) {
            if (std::all_of(o.begin(), o.end(), [](auto x) { return x <= 0; })) {
                for (int k = 0; k < n; ++k)
                    if (o[k] == -1) sigma[i] = k;
            }
        }
    }
    return sigma;
}

inline bool is_diagram_automorphism(const RootSystem& rs, const std::vector<int>& perm) {
    const int n = rs.rank();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (rs.cartan[i][j] != rs.cartan[perm[i]][perm[j]]) return false;
    return true;
}

}  // namespace buildings
