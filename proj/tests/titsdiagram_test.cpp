#include <gtest/gtest.h>

#include "buildings/titsdiagram.hpp"

using namespace buildings;

namespace {

TitsDiagram diagram(Family f, int rank, std::initializer_list<int> labels, bool dual = false) {
    TitsDiagram d;
    d.spec = DiagramSpec{f, rank, dual};
    for (int l : labels) d.encircled.insert(l - 1);
    return d;
}

const ExactCosine kPi3 = ExactCosine::of(NamedAngle::PiOver3);

}  // namespace

TEST(TitsDiagram, CheckRejectsBadNodes) {
    for (auto d : {diagram(Family::E, 7, {}), diagram(Family::E, 7, {8}), diagram(Family::E, 5, {1})}) {
        try {
            d.check();
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::InvalidType);
        }
    }
}

TEST(TitsDiagram, RealizationPutsEncircledNodeOnLongRoots) {
    // G2 node 1 is short in the standard realization
    auto s = long_root_realization(diagram(Family::G, 2, {1}));
    EXPECT_TRUE(s.dual);
    EXPECT_TRUE(build_root_system(s).simple_root_is_long(0));
    EXPECT_EQ(long_root_realization(diagram(Family::B, 3, {3})).family, Family::C);
    EXPECT_EQ(long_root_realization(diagram(Family::B, 3, {1})).family, Family::B);
    EXPECT_EQ(long_root_realization(diagram(Family::F, 4, {4})).dual, true);
}

TEST(MinimalAngle, Pi3Examples) {
    for (auto d : {diagram(Family::G, 2, {2}), diagram(Family::F, 4, {1}), diagram(Family::E, 6, {2}),
                   diagram(Family::B, 4, {2}), diagram(Family::D, 5, {2})}) {
        auto r = minimal_angle(d);
        EXPECT_EQ(r.min_cos, kPi3) << d.spec.name();
        EXPECT_EQ(r.named(), NamedAngle::PiOver3);
        EXPECT_EQ(applicability_from(r), Applicability::PartII);
        EXPECT_FALSE(r.caveat.has_value());
    }
}

TEST(MinimalAngle, WitnessesRealizeTheAngle) {
    auto d = diagram(Family::E, 7, {6});
    auto rs = build_root_system(long_root_realization(d));
    auto r = minimal_angle(d);
    EXPECT_EQ(cos_between(r.witness_first, r.witness_second, rs.gram), r.min_cos);
    EXPECT_EQ(r.min_cos, ExactCosine(1, Rational(9, 16)));
}

TEST(MinimalAngle, A2IsTwoPiOver3) {
    auto r = minimal_angle(diagram(Family::A, 2, {1}));
    EXPECT_EQ(r.named(), NamedAngle::TwoPiOver3);
    EXPECT_EQ(applicability_from(r), Applicability::PartI);
}

TEST(MinimalAngle, RankTwoCarriesCaveat) {
    auto r = minimal_angle(diagram(Family::E, 7, {1, 6}));
    EXPECT_EQ(r.relative_rank, 2);
    EXPECT_TRUE(r.caveat.has_value());
    EXPECT_EQ(applicability_from(r), Applicability::Neither);
}

TEST(MinimalAngle, OrbitCap) {
    try {
        minimal_angle(diagram(Family::E, 8, {4}), 1000);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::OrbitTooLarge);
    }
}

TEST(LongRootVertex, Checks) {
    EXPECT_TRUE(long_root_vertex_check(diagram(Family::E, 8, {8})));
    EXPECT_FALSE(long_root_vertex_check(diagram(Family::E, 8, {1})));
    EXPECT_TRUE(long_root_vertex_check(diagram(Family::C, 4, {2})));  // realized as B4 with node 2 long
    try {
        long_root_vertex_check(diagram(Family::E, 7, {1, 6}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotRankOne);
    }
}

TEST(Catalog, GroupsAndIds) {
    auto c = catalog();
    int pi3 = 0, problematic = 0, intermediate = 0;
    for (const auto& e : c) {
        EXPECT_NO_THROW(e.diagram.check());
        pi3 += e.group == CatalogGroup::MinimalAnglePi3;
        problematic += e.group == CatalogGroup::Problematic;
        intermediate += e.group == CatalogGroup::Intermediate;
    }
    EXPECT_EQ(pi3, 7);
    EXPECT_EQ(problematic, 4);
    EXPECT_EQ(intermediate, 5);
    EXPECT_EQ(catalog_entry("G2_pi3").diagram.spec.family, Family::G);
    try {
        catalog_entry("nope");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ParseError);
    }
}

TEST(Catalog, ClassicalEntriesInstantiateAtEveryRank) {
    const auto& b = catalog_entry("B_pi3");
    for (int n = b.min_rank; n <= b.max_rank; ++n) EXPECT_EQ(b.at_rank(n).spec.rank, n);
    EXPECT_THROW(b.at_rank(9), Error);
    EXPECT_THROW(catalog_entry("E7_adjoint").at_rank(6), Error);
}

TEST(Catalog, IntermediateDiagramsAreNotCovered) {
    for (const auto& e : catalog())
        if (e.group == CatalogGroup::Intermediate)
            EXPECT_EQ(classify_applicability(e.diagram), Applicability::Neither) << e.id;
}
