#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "buildings/error.hpp"
#include "buildings/exact.hpp"
#include "buildings/treefold/fold.hpp"
#include "buildings/treefold/generators.hpp"
#include "buildings/treefold/instance.hpp"

namespace buildings::treefold {

/// Which of the three four-end templates a subset realizes, with the roles of its
/// ends and the template parameters (measured on line pq from p toward q).
struct ConfigClass {
    int config = 0;
    Names4 roles;
    std::vector<std::pair<std::string, Rational>> params;
};

namespace detail {

inline std::vector<std::array<int, 4>> permutations4() {
    std::array<int, 4> a{0, 1, 2, 3};
    std::vector<std::array<int, 4>> out;
    do out.push_back(a);
    while (std::next_permutation(a.begin(), a.end()));
    return out;
}

inline bool strictly_between(const Rational& t, const Rational& a, const Rational& b) {
    return min(a, b) < t && t < max(a, b);
}

/// Same triangles and, line by line, the same corners up to a translation.
inline bool same_up_to_chart_shift(const Instance& a, const Instance& b) {
    if (a.ends() != b.ends()) return false;
    const int n = a.size();
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) {
            std::optional<Rational> shift;
            for (int z = 0; z < n; ++z) {
                if (z == x || z == y) continue;
                if (a.side(x, y, z) != b.side(x, y, z)) return false;
                for (auto [u, v] : {std::pair{x, y}, std::pair{y, x}}) {
                    Rational d = a.corner(u, v, z) - b.corner(u, v, z);
                    if (shift && *shift != d) return false;
                    shift = d;
                }
            }
        }
    return true;
}

}  // namespace detail

/// The cyclic arrangement in which each of three triangles through s has its
/// corner strictly inside a different side of triangle pqr, going round. Returns
/// the roles (p, q, r, s) of a witness.
inline std::optional<Names4> find_cyclic_pattern(const Instance& inst) {
    const int n = inst.size();
    const auto& E = inst.ends();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                for (int d = c + 1; d < n; ++d) {
                    std::array<int, 4> ids{a, b, c, d};
                    for (const auto& perm : detail::permutations4()) {
                        int p = ids[perm[0]], q = ids[perm[1]], r = ids[perm[2]], s = ids[perm[3]];
                        using detail::strictly_between;
                        if (strictly_between(inst.corner(p, r, s), inst.corner(p, r, q), inst.corner(r, p, q)) &&
                            strictly_between(inst.corner(r, q, s), inst.corner(r, q, p), inst.corner(q, r, p)) &&
                            strictly_between(inst.corner(q, p, s), inst.corner(q, p, r), inst.corner(p, q, r)))
                            return Names4{E[p], E[q], E[r], E[s]};
                    }
                }
    return std::nullopt;
}

/// Matches a four-end subset against the three templates under all role
/// assignments. Throws ImpossibleConfiguration for the cyclic arrangement and
/// NoTemplateMatch when nothing fits.
inline ConfigClass classify_four_ends(const Instance& inst, const std::array<EndId, 4>& four) {
    Instance sub = inst.restrict_to({four.begin(), four.end()});
    if (auto w = find_cyclic_pattern(sub))
        throw Error(ErrorCode::ImpossibleConfiguration,
                    "ends " + (*w)[0] + (*w)[1] + (*w)[2] + (*w)[3] + " form the cyclic arrangement");
    const auto& E = sub.ends();
    for (int config = 1; config <= 3; ++config)
        for (const auto& perm : detail::permutations4()) {
            int p = perm[0], q = perm[1], r = perm[2], s = perm[3];
            Names4 roles{E[p], E[q], E[r], E[s]};
            int sg = Instance::dir(p, q);
            Rational A0 = sg * sub.corner(p, q, r), L = sub.side(p, q, r);
            Rational S0 = sg * sub.corner(p, q, s), ls = sub.side(p, q, s);
            ConfigClass out{config, roles, {}};
            std::optional<Instance> tmpl;
            try {
                if (config == 1 && S0 + ls < A0) {
                    tmpl = gen_config1(S0, ls, A0, L, roles);
                    out.params = {{"a1", S0}, {"ls", ls}, {"a2", A0}, {"lr", L}};
                } else if (config == 2 && A0 > S0) {
                    tmpl = gen_config2(A0 - S0, L, roles);
                    out.params = {{"u", A0 - S0}, {"L", L}};
                } else if (config == 3 && S0 >= A0) {
                    tmpl = gen_config3(L, ls, S0 - A0, roles);
                    out.params = {{"L", L}, {"ls", ls}, {"a", S0 - A0}};
                }
            } catch (const Error& e) {
                if (e.code() != ErrorCode::BadTemplateParams) throw;
            }
            if (tmpl && detail::same_up_to_chart_shift(sub, *tmpl)) return out;
        }
    throw Error(ErrorCode::NoTemplateMatch, "ends " + E[0] + E[1] + E[2] + E[3] + " match no template");
}

struct ValidationReport {
    bool valid = true;
    std::optional<ErrorCode> error;
    std::string message;
    std::vector<ConfigClass> classes;  // one per four-end subset, when reached
};

/// Checks, in order: equilateral triangles, the cyclic arrangement, consistent
/// combing, template membership of every four-end subset, and the fold.
inline ValidationReport validate(const Instance& inst, std::size_t cap = kDefaultBreakpointCap) {
    ValidationReport rep;
    try {
        check_equilateral(inst);
        if (auto w = find_cyclic_pattern(inst))
            throw Error(ErrorCode::ImpossibleConfiguration,
                        "ends " + (*w)[0] + (*w)[1] + (*w)[2] + (*w)[3] + " form the cyclic arrangement");
        Frames f(inst);
        check_ultrametric(inst, f);
        const auto& E = inst.ends();
        const int n = inst.size();
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (int c = b + 1; c < n; ++c)
                    for (int d = c + 1; d < n; ++d) {
                        try {
                            rep.classes.push_back(classify_four_ends(inst, {E[a], E[b], E[c], E[d]}));
                        } catch (const Error& e) {
                            if (e.code() != ErrorCode::NoTemplateMatch) throw;
                            throw Error(ErrorCode::ImpossibleConfiguration, e.what());
                        }
                    }
        FoldComputation fold(inst, cap);
    } catch (const Error& e) {
        rep.valid = false;
        rep.error = e.code();
        rep.message = e.what();
    }
    return rep;
}

inline void validate_or_throw(const Instance& inst, std::size_t cap = kDefaultBreakpointCap) {
    auto rep = validate(inst, cap);
    if (!rep.valid) throw Error(*rep.error, rep.message.substr(rep.message.find(": ") + 2));
}

}  // namespace buildings::treefold
