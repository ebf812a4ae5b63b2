#include <gtest/gtest.h>

#include <filesystem>

#include "buildings/io.hpp"
#include "buildings/treefold/fold.hpp"
#include "buildings/treefold/generators.hpp"

using namespace buildings;
using namespace buildings::treefold;

namespace {

std::string data(const std::string& name) { return std::string(BUILDINGS_DATA_DIR) + "/" + name; }

void expect_same(const Instance& a, const Instance& b) {
    ASSERT_EQ(a.ends(), b.ends());
    for (int x = 0; x < a.size(); ++x)
        for (int y = 0; y < a.size(); ++y)
            for (int z = 0; z < a.size(); ++z) {
                if (x == y || y == z || x == z) continue;
                EXPECT_EQ(a.corner(x, y, z), b.corner(x, y, z));
                EXPECT_EQ(a.side(x, y, z), b.side(x, y, z));
            }
}

template <class F>
void expect_parse_error(F&& f) {
    try {
        f();
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ParseError) << e.what();
    }
}

}  // namespace

TEST(Io, RationalsReadFromStringsAndIntegers) {
    EXPECT_EQ(io::rational_from(io::json("7/3")), Rational(7, 3));
    EXPECT_EQ(io::rational_from(io::json(-4)), Rational(-4));
    EXPECT_EQ(io::to_json(Rational(-6, 4)), io::json("-3/2"));
    expect_parse_error([] { io::rational_from(io::json("x")); });
    expect_parse_error([] { io::rational_from(io::json(0.5)); });
}

TEST(Io, InstanceRoundTrip) {
    for (auto inst : {gen_config3(4, 2, Rational(6, 5)), gen_random(4, 6), gen_line()}) {
        auto back = io::instance_from_json(io::parse_text(io::instance_to_json(inst).dump()));
        expect_same(inst, back);
    }
}

TEST(Io, DataFiguresMatchGenerators) {
    auto load = [](const std::string& f) { return io::instance_from_json(io::parse_text(io::read_file(data(f)))); };
    expect_same(load("figure_c1.json"), gen_config1(-3, 2, 0, 3));
    expect_same(load("figure_c2.json"), gen_config2(1, 3));
    expect_same(load("figure_c3.json"), gen_config3(4, 2, Rational(6, 5)));
    expect_same(load("single_triangle.json"), gen_tripod(2));
}

TEST(Io, AmbiguousLineKeyIsRejected) {
    // "a"+"aa" and "aa"+"a" both spell "aaa"
    auto inst = gen_tripod(2, {"a", "aa", "aaa"});
    auto j = io::instance_to_json(inst);
    expect_parse_error([&] { io::instance_from_json(j); });
}

TEST(Io, MalformedInputs) {
    expect_parse_error([] { io::parse_text("{not json"); });
    expect_parse_error([] { io::instance_from_json(io::parse_text(io::read_file(data("malformed.json")))); });
    expect_parse_error([] { io::instance_from_json(io::json{{"ends", {"p", "q", "r"}}}); });
    EXPECT_THROW(io::read_file(data("no_such_file.json")), std::exception);
}

TEST(Io, TreeRoundTrip) {
    auto t = fold_quotient(gen_config2(1, 3));
    auto back = io::tree_from_json(io::parse_text(io::tree_to_json(t).dump()));
    EXPECT_EQ(back.node_count, t.node_count);
    EXPECT_EQ(back.end_nodes, t.end_nodes);
    EXPECT_EQ(back.metric, t.metric);
    ASSERT_EQ(back.edges.size(), t.edges.size());
    for (std::size_t i = 0; i < t.edges.size(); ++i) EXPECT_EQ(back.edges[i].length, t.edges[i].length);
    EXPECT_EQ(io::tree_to_json(back), io::tree_to_json(t));
}

TEST(Io, DotMentionsEveryEnd) {
    auto dot = io::tree_to_dot(fold_quotient(gen_tripod(2)));
    for (const char* e : {"end_p", "end_q", "end_r"}) EXPECT_NE(dot.find(e), std::string::npos);
}

TEST(Io, DiagramRoundTrip) {
    auto d = io::diagram_from_json(io::parse_text(io::read_file(data("diagram_g2.json"))));
    EXPECT_EQ(d.spec.family, Family::G);
    EXPECT_EQ(io::diagram_from_json(io::diagram_to_json(d)).encircled, d.encircled);
    try {
        io::diagram_from_json(io::json{{"family", "E"}, {"rank", 5}, {"encircled", {1}}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidType);
    }
}

TEST(Io, AtomicWriteLeavesNoTemporary) {
    auto dir = std::filesystem::temp_directory_path() / "buildings_io_test";
    std::filesystem::create_directories(dir);
    auto path = dir / "out.json";
    io::write_file_atomic(path, "{}\n");
    EXPECT_EQ(io::read_file(path), "{}\n");
    EXPECT_FALSE(std::filesystem::exists(dir / "out.json.tmp"));
    std::filesystem::remove_all(dir);
}
