// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "buildings/buildings.hpp"

using namespace buildings;
using namespace buildings::treefold;

namespace {

const ExactCosine kPi3 = ExactCosine::of(NamedAngle::PiOver3);

struct Outcome {
    bool ok = true;
    std::ostringstream note;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) note << "first failure: " << what;
        ok = ok && cond;
    }
};

DiagramSpec spec(Family f, int rank) { return DiagramSpec{f, rank, false}; }

// ---- 1
void pi3_list(Outcome& o) {
    int checked = 0;
    for (const auto& e : catalog()) {
        if (e.group != CatalogGroup::MinimalAnglePi3) continue;
        const int lo = e.classical() ? e.min_rank : e.diagram.spec.rank;
        const int hi = e.classical() ? e.max_rank : e.diagram.spec.rank;
        for (int n = lo; n <= hi; ++n) {
            auto d = e.at_rank(n);
            auto r = minimal_angle(d);
            o.require(r.min_cos == kPi3 && r.min_cos.sign() == 1 && r.min_cos.cos_squared() == Rational(1, 4), e.id + " at rank " + std::to_string(n));
            o.require(long_root_vertex_check(d), e.id + " long root vertex");
            ++checked;
        }
    }
    o.note << checked << " diagrams at pi/3";
}

// ---- 2
void problematic(Outcome& o) {
    int seen = 0;
    for (const auto& e : catalog()) {
        if (e.group != CatalogGroup::Problematic) continue;
        ++seen;
        auto r = minimal_angle(e.diagram);
        if (e.diagram.encircled.size() == 1)
            o.require(r.relative_rank == 1 && r.min_cos < kPi3, e.id + " should be below pi/3");
        else
            o.require(r.relative_rank == 2, e.id + " should have relative rank 2");
        o.require(classify_applicability(e.diagram) == Applicability::Neither, e.id + " verdict");
    }
    o.require(seen == 4, "expected four problematic diagrams");
    o.note << seen << " diagrams, all Neither";
}

// ---- 3
void long_root_spectrum(Outcome& o) {
    std::size_t pairs = 0;
    for (auto s : {spec(Family::A, 2), spec(Family::A, 3), spec(Family::A, 4), spec(Family::D, 4), spec(Family::D, 5),
                   spec(Family::D, 6), spec(Family::E, 6), spec(Family::E, 7), spec(Family::E, 8), spec(Family::F, 4),
                   spec(Family::G, 2)}) {
        auto rs = build_root_system(s);
        auto longs = rs.long_roots();
        std::vector<RationalVector> v;
        for (const auto& r : longs) v.push_back(to_rational(r));
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = 0; j < v.size(); ++j) {
                o.require(named_angle(cos_between(v[i], v[j], rs.gram)).has_value(), s.name() + " has an unnamed angle");
                ++pairs;
            }
    }
    o.note << pairs << " ordered pairs";
}

// ---- 4
void single_wall(Outcome& o) {
    std::size_t pairs = 0;
    for (auto s : {spec(Family::G, 2), spec(Family::F, 4), spec(Family::E, 6), spec(Family::E, 7)}) {
        auto rs = build_root_system(s);
        std::vector<RationalVector> v;
        for (const auto& r : rs.long_roots()) v.push_back(to_rational(r));
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = 0; j < v.size(); ++j) {
                if (cos_between(v[i], v[j], rs.gram) != kPi3) continue;
                auto walls = separating_walls(rs, v[i], v[j]);
                o.require(walls.size() == 1, s.name() + " pair with " + std::to_string(walls.size()) + " walls");
                if (walls.size() == 1) {
                    o.require(reflect_in(rs, walls[0], v[i]) == v[j], s.name() + " reflection misses");
                    o.require(reflect_in(rs, walls[0], v[j]) == v[i], s.name() + " reflection misses");
                }
                ++pairs;
            }
    }
    o.note << pairs << " ordered pairs at pi/3";
}

// ---- 5
void opposition(Outcome& o) {
    auto identity = [](const RootSystem& rs) {
        auto sigma = opposition_involution(rs);
        for (int i = 0; i < rs.rank(); ++i)
            if (sigma[i] != i) return false;
        return true;
    };
    auto agree = [&](const RootSystem& rs) {
        o.require(opposition_involution(rs) == opposition_involution_by_orbits(rs), rs.spec.name() + " routes disagree");
    };
    int n_checked = 0;
    for (int i = 3; i <= 8; ++i) {
        auto rs = build_root_system(spec(Family::D, i));
        agree(rs);
        o.require(identity(rs) == (i % 2 == 0), rs.spec.name());
        ++n_checked;
    }
    for (int n = 2; n <= 8; ++n) {
        auto rs = build_root_system(spec(Family::A, n));
        agree(rs);
        o.require(!identity(rs), rs.spec.name());
        ++n_checked;
    }
    for (auto s : {spec(Family::E, 6)}) {
        auto rs = build_root_system(s);
        agree(rs);
        o.require(!identity(rs), s.name());
        ++n_checked;
    }
    std::vector<DiagramSpec> trivial{spec(Family::E, 7), spec(Family::E, 8), spec(Family::F, 4), spec(Family::G, 2)};
    for (int n = 2; n <= 8; ++n) {
        trivial.push_back(spec(Family::B, n));
        trivial.push_back(spec(Family::C, n));
    }
    for (auto s : trivial) {
        auto rs = build_root_system(s);
        agree(rs);
        o.require(identity(rs), s.name());
        ++n_checked;
    }
    o.note << n_checked << " types, both routes agree";
}

// ---- 6

class Draws {
public:
    explicit Draws(std::uint64_t seed) : rng_(seed) {}
    // a rational in [lo, hi] with denominator up to 6
    Rational in(int lo, int hi) {
        int den = std::uniform_int_distribution<int>(1, 6)(rng_);
        return Rational(std::uniform_int_distribution<int>(lo * den, hi * den)(rng_), den);
    }
    Rational fraction() { return in(0, 1); }
    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

private:
    std::mt19937_64 rng_;
};

Instance attach_random(const Instance& inst, Draws& d, const EndId& twin) {
    const int P = d.pick(0, inst.size() - 1);
    Frames f(inst);
    std::optional<Rational> lowest;
    for (int x = 0; x < inst.size(); ++x)
        for (int y = 0; y < inst.size(); ++y)
            if (x != P && y != P && x != y) {
                Rational h = f.b(P, x, inst.corner(P, x, y));
                if (!lowest || h < *lowest) lowest = h;
            }
    const int x0 = P == 0 ? 1 : 0;
    return gen_attach_end(inst, inst.ends()[P], twin, f.t(P, x0, *lowest - d.in(1, 3) - Rational(1, 7)));
}

void check_relative_distance(const Instance& inst, Outcome& o) {
    const auto& E = inst.ends();
    for (int p = 0; p < inst.size(); ++p)
        for (int q = 0; q < inst.size(); ++q)
            for (int r = q + 1; r < inst.size(); ++r) {
                if (p == q || p == r) continue;
                const Rational l = inst.side(p, q, r);
                const Rational tq = inst.corner(q, r, p), tr = inst.corner(r, q, p), mid = (tq + tr) / 2;
                const PointRef corner{E[p], E[q], inst.corner(p, q, r)};
                auto rd = [&](const Rational& t) { return relative_distance(inst, E[p], corner, {E[q], E[r], t}); };
                o.require(rd(mid) == Sqrt3Scalar::half_sqrt3(l / 2), "midpoint maximum");
                o.require(rd(tq) == Sqrt3Scalar::rational(0) && rd(tr) == Sqrt3Scalar::rational(0), "zero at the corners");
                for (Rational s : {Rational(1, 5), Rational(1, 3), Rational(3, 4)}) {
                    Rational t = tq + (tr - tq) * s;
                    o.require(rd(t) == Sqrt3Scalar::half_sqrt3(l / 2 - abs(t - mid)), "piecewise form");
                }
                const Rational outside = max(tq, tr) + 1;
                o.require(rd(outside) == Sqrt3Scalar::rational(0), "zero outside the side");
            }
}

void check_instance(const Instance& inst, Outcome& o, const std::string& tag) {
    auto rep = validate(inst);
    o.require(rep.valid, tag + " validate: " + rep.message);
    if (!rep.valid) return;
    auto tree = fold_quotient(inst);
    o.require(tree.is_tree(), tag + " quotient is not a tree");
    auto axioms = verify_tree_axioms(inst, tree);
    for (const auto& c : axioms.checks) o.require(c.passed, tag + " " + c.name + " " + c.witness);
    auto retr = retraction_invariance_check(inst);
    o.require(retr.ok, tag + " retraction " + (retr.failures.empty() ? "" : retr.failures.front()));
    check_relative_distance(inst, o);
}

void fold_suite(Outcome& o) {
    Draws d(20240611);
    int instances = 0;
    auto run = [&](const Instance& base, const std::string& tag) {
        check_instance(base, o, tag);
        ++instances;
        Instance ext = base;
        for (int n = base.size() + 1; n <= 6; ++n) {
            ext = attach_random(ext, d, default_end_names(n)[n - 1]);
            check_instance(ext, o, tag + "+" + std::to_string(n));
            ++instances;
        }
    };
    for (int k = 0; k < 50; ++k) {
        Rational a1 = d.in(-6, 6), ls = d.in(0, 6), lr = d.in(0, 6);
        Rational a2 = a1 + ls + d.in(0, 4) + Rational(1, 7);
        run(gen_config1(a1, ls, a2, lr), "config1#" + std::to_string(k));
    }
    for (int k = 0; k < 50; ++k) {
        Rational u = d.in(0, 4) + Rational(1, 5);
        run(gen_config2(u, 2 * u + d.in(0, 6)), "config2#" + std::to_string(k));
    }
    for (int k = 0; k < 50; ++k) {
        Rational L = d.in(0, 8) + Rational(1, 3);
        Rational a = L * d.fraction();
        Rational ls = (L - a) * d.fraction();
        run(gen_config3(L, ls, a), "config3#" + std::to_string(k));
    }
    o.note << instances << " instances";
}

// ---- 7

std::set<Rational> corners_on_pq(const Instance& inst) {
    std::set<Rational> out;
    int p = inst.index_of("p"), q = inst.index_of("q");
    for (int z = 0; z < inst.size(); ++z)
        if (z != p && z != q) {
            out.insert(inst.corner(p, q, z));
            out.insert(inst.corner(q, p, z));
        }
    return out;
}

Instance cyclic_instance() {
    // a large pqr triangle with the three small triangles through s arranged in a cycle
    InstanceBuilder b({"p", "q", "r", "s"});
    auto tri = [&](const EndId& x, const EndId& y, const EndId& z, Rational l, Rational xy, Rational xz, Rational yz) {
        b.side(x, y, z, l);
        b.corner(x, y, z, xy).corner(y, x, z, xy + l);
        b.corner(x, z, y, xz).corner(z, x, y, xz + l);
        b.corner(y, z, x, yz).corner(z, y, x, yz + l);
    };
    tri("p", "q", "r", 6, -3, -3, -3);
    tri("p", "r", "s", 2, 0, 0, 0);
    tri("q", "r", "s", 2, -2, 0, 0);
    tri("p", "q", "s", 2, -2, 0, 0);
    return b.build();
}

void impossibility(Outcome& o) {
    auto cyc = cyclic_instance();
    o.require(find_cyclic_pattern(cyc).has_value(), "cyclic pattern not detected");
    auto rep = validate(cyc);
    o.require(!rep.valid && rep.error == ErrorCode::ImpossibleConfiguration, "cyclic instance accepted");

    struct Figure {
        Instance inst;
        int config;
        std::set<Rational> coords;
    };
    std::vector<Figure> figs{{gen_config1(-3, 2, 0, 3), 1, {-3, -1, 0, 3}},
                             {gen_config2(1, 3), 2, {-1, 0, 1, 3}},
                             {gen_config3(4, 2, Rational(6, 5)), 3, {0, Rational(6, 5), Rational(16, 5), 4}}};
    for (const auto& f : figs) {
        o.require(corners_on_pq(f.inst) == f.coords, "figure coordinates for config " + std::to_string(f.config));
        auto c = classify_four_ends(f.inst, {"p", "q", "r", "s"});
        o.require(c.config == f.config, "figure classified as " + std::to_string(c.config));
    }
    o.note << "cyclic rejected, figures C1/C2/C3";
}

// ---- 8
void negative_controls(Outcome& o) {
    auto inst = gen_config2(1, 3);
    auto tree = fold_quotient(inst);
    perturb_edge_length(tree, 0, Rational(1, 2));
    auto rep = verify_tree_axioms(inst, tree);
    const auto* fp = rep.find("FOUR_POINT");
    o.require(fp && !fp->passed && !fp->witness.empty(), "perturbed tree passed the four-point check");

    InstanceBuilder b({"p", "q", "r"});
    b.side("p", "q", "r", 2);
    b.corner("p", "q", "r", -1).corner("q", "p", "r", 1);
    b.corner("p", "r", "q", -1).corner("r", "p", "q", 1);
    b.corner("q", "r", "p", -1).corner("r", "q", "p", Rational(3, 2));
    auto v = validate(b.build());
    o.require(!v.valid && v.error == ErrorCode::EquilateralViolation, "non-equilateral table accepted");
    if (fp) o.note << "witness " << fp->witness;
}

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "pi/3 list reproduction", 60, pi3_list},
        {2, "problematic diagrams", 60, problematic},
        {3, "long-root angle spectrum", 30, long_root_spectrum},
        {4, "single separating wall at pi/3", 60, single_wall},
        {5, "opposition parity", 30, opposition},
        {6, "fold suite", 300, fold_suite},
        {7, "impossibility and figure classes", 60, impossibility},
        {8, "negative controls", 60, negative_controls},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        auto start = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.ok = false;
            o.note << " threw: " << e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.budget_s) {
            o.ok = false;
            o.note << " over budget";
        }
        failed += !o.ok;
        std::cout << (o.ok ? "PASS" : "FAIL") << "  " << c.id << "  " << c.name << "  (" << std::fixed;
        std::cout.precision(2);
        std::cout << secs << " s)  " << o.note.str() << std::endl;
    }
    std::cout << (failed ? "acceptance: " + std::to_string(failed) + " criteria failed" : std::string("acceptance: all criteria pass"))
              << std::endl;
    return failed ? 1 : 0;
}
