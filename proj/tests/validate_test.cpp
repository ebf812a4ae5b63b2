#include <gtest/gtest.h>

#include "buildings/io.hpp"
#include "buildings/treefold/validate.hpp"

using namespace buildings;
using namespace buildings::treefold;

namespace {

Instance load(const std::string& name) {
    return io::instance_from_json(io::parse_text(io::read_file(std::string(BUILDINGS_DATA_DIR) + "/" + name)));
}

Rational param(const ConfigClass& c, const std::string& key) {
    for (const auto& [k, v] : c.params)
        if (k == key) return v;
    throw std::out_of_range(key);
}

/// Renames the ends of an instance through `rename` (old name -> new name).
Instance relabel(const Instance& inst, const std::map<EndId, EndId>& rename) {
    std::vector<EndId> names;
    for (const auto& e : inst.ends()) names.push_back(rename.at(e));
    InstanceBuilder b(names);
    const auto& E = inst.ends();
    const int n = inst.size();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                if (x == y || y == z || x == z) continue;
                // the chart of line xy is reversed when the new names swap order
                int flip = (E[x] < E[y]) == (rename.at(E[x]) < rename.at(E[y])) ? 1 : -1;
                b.corner(rename.at(E[x]), rename.at(E[y]), rename.at(E[z]), flip * inst.corner(x, y, z));
                b.side(rename.at(E[x]), rename.at(E[y]), rename.at(E[z]), inst.side(x, y, z));
            }
    return b.build();
}

}  // namespace

TEST(Validate, TrivialTriangleIsValid) {
    auto rep = validate(gen_tripod(0));
    EXPECT_TRUE(rep.valid) << rep.message;
    EXPECT_TRUE(validate(gen_line()).valid);
}

TEST(Validate, FigureInstancesClassify) {
    auto c1 = validate(gen_config1(-3, 2, 0, 3));
    ASSERT_TRUE(c1.valid) << c1.message;
    ASSERT_EQ(c1.classes.size(), 1u);
    EXPECT_EQ(c1.classes[0].config, 1);

    auto c2 = validate(gen_config2(1, 3));
    ASSERT_TRUE(c2.valid) << c2.message;
    EXPECT_EQ(c2.classes[0].config, 2);
    EXPECT_EQ(param(c2.classes[0], "u"), 1);
    EXPECT_EQ(param(c2.classes[0], "L"), 3);

    auto c3 = validate(gen_config3(4, 2, Rational(6, 5)));
    ASSERT_TRUE(c3.valid) << c3.message;
    EXPECT_EQ(c3.classes[0].config, 3);
    EXPECT_EQ(param(c3.classes[0], "a"), Rational(6, 5));
    EXPECT_EQ(param(c3.classes[0], "ls"), 2);
}

TEST(Validate, CyclicPatternIsImpossible) {
    auto inst = load("cyclic_impossible.json");
    auto w = find_cyclic_pattern(inst);
    ASSERT_TRUE(w.has_value());
    auto rep = validate(inst);
    EXPECT_FALSE(rep.valid);
    EXPECT_EQ(rep.error, ErrorCode::ImpossibleConfiguration);
    try {
        classify_four_ends(inst, {"p", "q", "r", "s"});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ImpossibleConfiguration);
    }
}

TEST(Validate, TemplatesNeverShowTheCyclicPattern) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) EXPECT_FALSE(find_cyclic_pattern(gen_random(seed, 5)).has_value());
}

TEST(Validate, NonEquilateralFails) {
    auto rep = validate(load("not_equilateral.json"));
    EXPECT_FALSE(rep.valid);
    EXPECT_EQ(rep.error, ErrorCode::EquilateralViolation);
}

TEST(Validate, ShiftedTriangleOutsideTemplatesFails) {
    // move the s-triangle of a C2 instance off the pqr corner on every line through s
    auto base = gen_config2(1, 4);
    InstanceBuilder b(base.ends());
    const auto& E = base.ends();
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y)
            for (int z = 0; z < 4; ++z) {
                if (x == y || y == z || x == z) continue;
                Rational t = base.corner(x, y, z);
                bool pqs = E[z] == "s" && (E[x] == "p" || E[x] == "q") && (E[y] == "p" || E[y] == "q");
                b.corner(E[x], E[y], E[z], pqs ? t + Rational(1, 2) : t).side(E[x], E[y], E[z], base.side(x, y, z));
            }
    auto rep = validate(b.build());
    EXPECT_FALSE(rep.valid);
}

TEST(Classify, StableUnderRelabeling) {
    const std::vector<std::map<EndId, EndId>> renames{
        {{"p", "q"}, {"q", "p"}, {"r", "r"}, {"s", "s"}},
        {{"p", "s"}, {"q", "r"}, {"r", "q"}, {"s", "p"}},
        {{"p", "b"}, {"q", "d"}, {"r", "a"}, {"s", "c"}},
    };
    for (auto inst : {gen_config1(-3, 2, 0, 3), gen_config2(1, 3), gen_config3(4, 2, Rational(6, 5)), gen_config3(4, 1, 0)}) {
        int tag = classify_four_ends(inst, {"p", "q", "r", "s"}).config;
        for (const auto& rn : renames) {
            auto other = relabel(inst, rn);
            std::array<EndId, 4> four{other.ends()[0], other.ends()[1], other.ends()[2], other.ends()[3]};
            auto c = classify_four_ends(other, four);
            EXPECT_EQ(c.config, tag);
            EXPECT_TRUE(validate(other).valid);
        }
    }
}

TEST(Classify, AttachedEndsGiveConfigOne) {
    auto inst = gen_attach_end(gen_tripod(2), "p", "s", -5);
    auto rep = validate(inst);
    ASSERT_TRUE(rep.valid) << rep.message;
    ASSERT_EQ(rep.classes.size(), 1u);
    EXPECT_EQ(rep.classes[0].config, 1);
}

TEST(Classify, RandomInstancesAreValid) {
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        auto rep = validate(gen_random(seed, 4 + static_cast<int>(seed % 3)));
        EXPECT_TRUE(rep.valid) << seed << ": " << rep.message;
    }
}
