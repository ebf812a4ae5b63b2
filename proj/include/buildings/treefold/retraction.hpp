#pragma once

// Retraction of all lines onto a fixed line pq by combing, and the distance of a
// point to the end p measured against a corner of a triangle through p.

#include <optional>
#include <string>
#include <vector>

#include "buildings/error.hpp"
#include "buildings/exact.hpp"
#include "buildings/treefold/fold.hpp"
#include "buildings/treefold/instance.hpp"

namespace buildings::treefold {

namespace detail {

inline std::pair<int, int> line_of(const Instance& inst, const PointRef& pt) {
    int a = inst.index_of(pt.a), b = inst.index_of(pt.b);
    if (a == b) throw Error(ErrorCode::UnknownPoint, "a line needs two distinct ends");
    return {a, b};
}

}  // namespace detail

/// Retraction toward p onto line pq. Points on lines through p are combed
/// directly; a point of line rs is sent through whichever end r or s it is
/// nearer to, measured from the midpoint of the side of triangle prs on rs.
/// Returns the chart coordinate on line pq.
inline Rational retraction(const Instance& inst, const Frames& f, const EndId& p_name, const EndId& q_name,
                           const PointRef& alpha) {
    const int p = inst.index_of(p_name), q = inst.index_of(q_name);
    if (p == q) throw Error(ErrorCode::WrongLine, "retraction needs two distinct ends");
    auto [r, s] = detail::line_of(inst, alpha);
    if ((r == p && s == q) || (r == q && s == p)) return alpha.t;
    if (r == p || s == p) return f.comb(p, r == p ? s : r, q, alpha.t);
    const Rational mid = (inst.corner(r, s, p) + inst.corner(s, r, p)) / 2;
    // the chart of rs increases toward s when r < s; sides may be degenerate, so compare with the midpoint
    const int x = Instance::dir(r, s) * (alpha.t - mid) <= 0 ? r : s;
    const int other = x == r ? s : r;
    // comb from x onto line xp, then from p onto pq; when x = q the first step already lands on pq
    const Rational on_xp = f.comb(x, other, p, alpha.t);
    if (x == q) return on_xp;
    return f.comb(p, x, q, on_xp);
}

inline PointRef retraction(const Instance& inst, const EndId& p, const EndId& q, const PointRef& alpha) {
    Frames f(inst);
    return {p, q, retraction(inst, f, p, q, alpha)};
}

/// (sqrt(3)/2) * (distance from alpha to the nearer corner of the side of triangle
/// pqr on line qr), and 0 outside that side. `corner` must be the corner of pqr
/// nearest p, given on line pq or pr.
inline Sqrt3Scalar relative_distance(const Instance& inst, const EndId& p_name, const PointRef& corner,
                                     const PointRef& alpha) {
    const int p = inst.index_of(p_name);
    auto [q, r] = detail::line_of(inst, alpha);
    if (q == p || r == p) throw Error(ErrorCode::WrongLine, "point must lie on a line avoiding " + p_name);
    auto [c1, c2] = detail::line_of(inst, corner);
    const int other = c1 == p ? c2 : (c2 == p ? c1 : -1);
    if (other != q && other != r)
        throw Error(ErrorCode::WrongCorner, "corner must lie on line " + p_name + inst.ends()[q] + " or " + p_name +
                                                inst.ends()[r]);
    if (corner.t != inst.corner(p, other, other == q ? r : q))
        throw Error(ErrorCode::WrongCorner, "point " + corner.t.str() + " is not the corner of triangle " + p_name +
                                                inst.ends()[q] + inst.ends()[r] + " nearest " + p_name);
    const Rational &tq = inst.corner(q, r, p), &tr = inst.corner(r, q, p);
    if (alpha.t < min(tq, tr) || alpha.t > max(tq, tr)) return Sqrt3Scalar::rational(0);
    return Sqrt3Scalar::half_sqrt3(min(abs(alpha.t - tq), abs(alpha.t - tr)));
}

/// relative_distance / sqrt(3): how far the retraction of alpha falls short of
/// its projection. Always rational.
inline Rational busemann_retraction_offset(const Instance& inst, const EndId& p, const PointRef& corner,
                                           const PointRef& alpha) {
    Sqrt3Scalar d = relative_distance(inst, p, corner, alpha).div_sqrt3();
    if (!d.b.is_zero()) throw std::logic_error("offset left a sqrt(3) part");
    return d.a;
}

/// Retraction of a point on line qr computed the other way round: project onto
/// line pq or pr inside the flat spanned by triangle pqr, then subtract the
/// Busemann offset. Returns the chart coordinate on pq.
inline Rational busemann_retraction(const Instance& inst, const Frames& f, const EndId& p_name, const EndId& q_name,
                                    const PointRef& alpha) {
    const int p = inst.index_of(p_name), q = inst.index_of(q_name);
    auto [a, b] = detail::line_of(inst, alpha);
    if (a != q && b != q) throw Error(ErrorCode::WrongLine, "point must lie on a line through " + q_name);
    const int r = a == q ? b : a;
    if (r == p) return alpha.t;

    const Rational l = inst.side(p, q, r);
    const Rational bP = f.beta(p, q, r);  // corner nearest p
    const Rational tq = inst.corner(q, r, p), tr = inst.corner(r, q, p);
    const Rational dq = abs(alpha.t - tq), dr = abs(alpha.t - tr);
    Rational height;
    if (dq + dr != l) {
        // outside the side: alpha sits on a half-line shared with pq or pr
        height = dq < dr ? bP + l + dq : bP + l + dr;
    } else {
        PointRef corner{inst.ends()[p], inst.ends()[q], inst.corner(p, q, r)};
        Rational offset = busemann_retraction_offset(inst, p_name, corner, alpha);
        // the q-half projects onto pq, the r-half onto pr; both far corners sit at height bP + l
        height = (dq <= dr ? bP + l - dq / 2 : bP + l - dr / 2) - offset;
    }
    return f.t(p, q, height);
}

struct RetractionReport {
    bool ok = true;
    std::vector<std::string> failures;
    std::size_t checked = 0;
};

/// For every ordered pair (p, q) of ends, glued breakpoints must retract to the
/// same point, and the two routes used for points on lines through q must agree.
inline RetractionReport retraction_invariance_check(const Instance& inst, std::size_t cap = kDefaultBreakpointCap) {
    RetractionReport rep;
    FoldComputation fold(inst, cap);
    const Frames& f = fold.frames();
    const auto& E = inst.ends();
    auto fail = [&](std::string s) {
        rep.ok = false;
        if (rep.failures.size() < 20) rep.failures.push_back(std::move(s));
    };
    for (int p = 0; p < inst.size(); ++p)
        for (int q = 0; q < inst.size(); ++q) {
            if (p == q) continue;
            for (const auto& id : fold.identifications()) {
                int lx = inst.line_id(id.m, id.x);
                for (const Rational& t : fold.breakpoints(lx)) {
                    auto img = fold.image(id, true, t);
                    if (!img) continue;
                    Rational u = retraction(inst, f, E[p], E[q], {E[id.m], E[id.x], t});
                    Rational v = retraction(inst, f, E[p], E[q], {E[id.m], E[id.y], *img});
                    ++rep.checked;
                    if (u != v)
                        fail("rho_" + E[p] + E[q] + " separates " + E[id.m] + E[id.x] + ":" + t.str() + " and " + E[id.m] +
                             E[id.y] + ":" + img->str());
                }
            }
            for (int r = 0; r < inst.size(); ++r) {
                if (r == p || r == q) continue;
                for (const Rational& t : fold.breakpoints(inst.line_id(q, r))) {
                    PointRef pt{E[q], E[r], t};
                    Rational u = retraction(inst, f, E[p], E[q], pt), v = busemann_retraction(inst, f, E[p], E[q], pt);
                    ++rep.checked;
                    if (u != v)
                        fail("routes differ for rho_" + E[p] + E[q] + " at " + E[q] + E[r] + ":" + t.str() + " (" +
                             u.str() + " vs " + v.str() + ")");
                }
            }
        }
    return rep;
}

}  // namespace buildings::treefold
