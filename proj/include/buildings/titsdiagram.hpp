#pragma once

// Tits diagrams (type-preserving indices): relative rank, minimal angle between
// vertices of isotropic type, and which existence results apply.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "buildings/error.hpp"
#include "buildings/exact.hpp"
#include "buildings/rootsys.hpp"

namespace buildings {

/// A Coxeter diagram with encircled (isotropic) nodes. The diagram automorphism
/// group is always trivial. Node ids are 0-based internally, Bourbaki order.
struct TitsDiagram {
    DiagramSpec spec;
    std::set<int> encircled;

    void check() const {
        spec.check();
        if (encircled.empty()) throw Error(ErrorCode::InvalidType, "a Tits diagram needs at least one encircled node");
        for (int n : encircled)
            if (n < 0 || n >= spec.rank)
                throw Error(ErrorCode::InvalidType, "encircled node " + std::to_string(n + 1) + " outside " + spec.name());
    }

    /// Bourbaki labels (1-based) of the encircled nodes
    std::vector<int> encircled_labels() const {
        std::vector<int> out;
        for (int n : encircled) out.push_back(n + 1);
        return out;
    }
};

/// Chooses the crystallographic realization in which a single encircled node is
/// a long simple root; other diagrams are returned unchanged.
inline DiagramSpec long_root_realization(const TitsDiagram& d) {
    d.check();
    DiagramSpec s = d.spec;
    if (s.simply_laced() || d.encircled.size() != 1) return s;
    int node = *d.encircled.begin();
    auto lengths = s.squared_lengths();
    Rational hi = *std::max_element(lengths.begin(), lengths.end());
    if (lengths[node] == hi) return s;
    if (s.family == Family::B)
        s.family = Family::C;
    else if (s.family == Family::C)
        s.family = Family::B;
    else
        s.dual = !s.dual;
    return s;
}

inline int relative_rank(const TitsDiagram& d) {
    d.check();
    return static_cast<int>(d.encircled.size());
}

struct AngleReport {
    ExactCosine min_cos;
    RationalVector witness_first;   // simple-root coordinates
    RationalVector witness_second;
    int relative_rank = 0;
    std::size_t orbit_union_size = 0;
    std::string realization;
    std::optional<std::string> caveat;

    std::optional<NamedAngle> named() const { return named_angle(min_cos); }
};

/// Smallest angle between two distinct vectors of the union of the Weyl orbits of
/// the encircled fundamental weights. Since the Weyl group acts isometrically and
/// transitively on each orbit, it suffices to pair each encircled fundamental
/// weight against the whole union.
inline AngleReport minimal_angle(const TitsDiagram& d, std::size_t orbit_cap = kDefaultOrbitCap) {
    d.check();
    const DiagramSpec spec = long_root_realization(d);
    const RootSystem rs = build_root_system(spec);
    const int n = spec.rank;

    std::vector<IntVector> orbit_union;
    for (int node : d.encircled) {
        IntVector w(n, 0);
        w[node] = 1;
        auto orbit = weight_orbit(rs, w, orbit_cap);
        orbit_union.insert(orbit_union.end(), orbit.begin(), orbit.end());
        if (orbit_union.size() > orbit_cap)
            throw Error(ErrorCode::OrbitTooLarge, "orbit union exceeds cap of " + std::to_string(orbit_cap));
    }

    AngleReport report;
    report.relative_rank = relative_rank(d);
    report.orbit_union_size = orbit_union.size();
    report.realization = spec.name();
    bool found = false;
    IntVector best_a, best_b;
    for (int node : d.encircled) {
        IntVector w(n, 0);
        w[node] = 1;
        for (const auto& y : orbit_union) {
            if (y == w) continue;
            ExactCosine c = rs.weight_cosine(w, y);
            if (!found || c < report.min_cos) {
                report.min_cos = c;
                best_a = w;
                best_b = y;
                found = true;
            }
        }
    }
    if (!found) throw std::logic_error("orbit union has a single vector");
    report.witness_first = rs.from_weight_coords(to_rational(best_a));
    report.witness_second = rs.from_weight_coords(to_rational(best_b));
    if (report.relative_rank >= 2)
        report.caveat = "relative rank >= 2: minimal angle taken over the union of all encircled orbits, "
                        "cross-type pairs included";
    return report;
}

/// True iff the affine node of the extended diagram is joined by a single bond to
/// the encircled node and to nothing else, i.e. the highest root is a vertex of
/// the encircled type.
inline bool long_root_vertex_check(const TitsDiagram& d) {
    d.check();
    if (d.encircled.size() != 1) throw Error(ErrorCode::NotRankOne, "long-root check needs exactly one encircled node");
    const RootSystem rs = build_root_system(long_root_realization(d));
    const auto ext = extended_diagram(rs);
    return ext.affine_node_attachments.size() == 1 && ext.affine_node_attachments[0].first == *d.encircled.begin() &&
           ext.affine_node_attachments[0].second == 1;
}

enum class Applicability { PartI, PartII, Neither };

inline std::string_view to_string(Applicability a) {
    switch (a) {
    case Applicability::PartI: return "PartI";
    case Applicability::PartII: return "PartII";
    case Applicability::Neither: return "Neither";
    }
    return "?";
}

inline Applicability applicability_from(const AngleReport& r) {
    const ExactCosine pi3 = ExactCosine::of(NamedAngle::PiOver3);
    if (r.min_cos > pi3) return Applicability::PartI;
    if (r.min_cos == pi3 && r.relative_rank == 1) return Applicability::PartII;
    return Applicability::Neither;
}

inline Applicability classify_applicability(const TitsDiagram& d, std::size_t orbit_cap = kDefaultOrbitCap) {
    return applicability_from(minimal_angle(d, orbit_cap));
}

enum class CatalogGroup { MinimalAnglePi3, Problematic, Intermediate };

inline std::string_view to_string(CatalogGroup g) {
    switch (g) {
    case CatalogGroup::MinimalAnglePi3: return "pi3";
    case CatalogGroup::Problematic: return "problematic";
    case CatalogGroup::Intermediate: return "intermediate";
    }
    return "?";
}

struct CatalogEntry {
    std::string id;
    std::string description;
    CatalogGroup group;
    TitsDiagram diagram;
    // classical families can be instantiated at any rank in [min_rank, max_rank]
    int min_rank = 0;
    int max_rank = 0;

    bool classical() const { return min_rank != 0; }

    TitsDiagram at_rank(int rank) const {
        if (!classical()) {
            if (rank != diagram.spec.rank)
                throw Error(ErrorCode::InvalidType, id + " is only defined at rank " + std::to_string(diagram.spec.rank));
            return diagram;
        }
        if (rank < min_rank || rank > max_rank)
            throw Error(ErrorCode::InvalidType, id + " is catalogued for ranks " + std::to_string(min_rank) + ".." +
                                                    std::to_string(max_rank));
        TitsDiagram out = diagram;
        out.spec.rank = rank;
        return out;
    }
};

/// All diagrams pictured in the source: seven with minimal angle pi/3, the four
/// exceptional diagrams no existence result covers, and five intermediate forms.
/// Node labels below are Bourbaki (1-based).
inline std::vector<CatalogEntry> catalog() {
    auto diag = [](Family f, int rank, std::initializer_list<int> labels) {
        TitsDiagram d;
        d.spec = DiagramSpec{f, rank, false};
        for (int l : labels) d.encircled.insert(l - 1);
        return d;
    };
    using G = CatalogGroup;
    std::vector<CatalogEntry> c = {
        {"B_pi3", "B_n chain, second node encircled", G::MinimalAnglePi3, diag(Family::B, 5, {2}), 3, 8},
        {"D_pi3", "D_n, second node encircled", G::MinimalAnglePi3, diag(Family::D, 6, {2}), 4, 8},
        {"E6_pi3", "E6, branch node encircled", G::MinimalAnglePi3, diag(Family::E, 6, {2})},
        {"E7_adjoint", "E7, adjoint node encircled", G::MinimalAnglePi3, diag(Family::E, 7, {1})},
        {"E8_adjoint", "E8, end of the long arm encircled", G::MinimalAnglePi3, diag(Family::E, 8, {8})},
        {"F4_pi3", "F4, long end node encircled", G::MinimalAnglePi3, diag(Family::F, 4, {1})},
        {"G2_pi3", "G2, long node encircled", G::MinimalAnglePi3, diag(Family::G, 2, {2})},
        {"E7_problematic_rank1", "E7, second node of the long arm", G::Problematic, diag(Family::E, 7, {6})},
        {"E7_problematic_rank2", "E7, nodes 1 and 6", G::Problematic, diag(Family::E, 7, {1, 6})},
        {"E8_problematic_rank1", "E8, end of the short-side arm", G::Problematic, diag(Family::E, 8, {1})},
        {"E8_problematic_rank2", "E8, both ends of the long chain", G::Problematic, diag(Family::E, 8, {1, 8})},
        {"E7_intermediate_1", "E7, nodes 3 and 6", G::Intermediate, diag(Family::E, 7, {3, 6})},
        {"E7_intermediate_2", "E7, nodes 1, 6 and 7", G::Intermediate, diag(Family::E, 7, {1, 6, 7})},
        {"E7_intermediate_3", "E7, nodes 1, 3, 4 and 6", G::Intermediate, diag(Family::E, 7, {1, 3, 4, 6})},
        {"E8_intermediate_1", "E8, nodes 1 and 8", G::Intermediate, diag(Family::E, 8, {1, 8})},
        {"E8_intermediate_2", "E8, nodes 1, 6, 7 and 8", G::Intermediate, diag(Family::E, 8, {1, 6, 7, 8})},
    };
    return c;
}

inline const CatalogEntry& catalog_entry(const std::string& id) {
    static const std::vector<CatalogEntry> entries = catalog();
    for (const auto& e : entries)
        if (e.id == id) return e;
    throw Error(ErrorCode::ParseError, "unknown catalog id '" + id + "'");
}

}  // namespace buildings
