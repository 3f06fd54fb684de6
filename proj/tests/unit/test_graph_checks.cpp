#include <gtest/gtest.h>

#include "persistnet/graph_checks.hpp"

using namespace persistnet;

TEST(GraphChecks, K5IsNotPlanar) {
    std::vector<Edge> k5;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) k5.push_back({i, j});
    const auto r = check_planarity_chordality(5, k5);
    EXPECT_FALSE(r.planar);
    EXPECT_FALSE(r.edge_bound);
    EXPECT_TRUE(r.chordal);
}

TEST(GraphChecks, K33IsNotPlanar) {
    std::vector<Edge> k33;
    for (int i = 0; i < 3; ++i)
        for (int j = 3; j < 6; ++j) k33.push_back({i, j});
    EXPECT_FALSE(is_planar(6, k33));
}

TEST(GraphChecks, ChordlessFourCycle) {
    const std::vector<Edge> c4{{0, 1}, {1, 2}, {2, 3}, {0, 3}};
    EXPECT_FALSE(is_chordal(4, c4));
    EXPECT_TRUE(is_planar(4, c4));
    const std::vector<Edge> chorded{{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}};
    EXPECT_TRUE(is_chordal(4, chorded));
}

TEST(GraphChecks, TreesAndForestsAreChordal) {
    const std::vector<Edge> path{{0, 1}, {1, 2}, {3, 4}};
    EXPECT_TRUE(is_chordal(6, path));
}

TEST(GraphChecks, LongCycleNotChordal) {
    std::vector<Edge> c6;
    for (int i = 0; i < 6; ++i) c6.push_back({std::min(i, (i + 1) % 6), std::max(i, (i + 1) % 6)});
    EXPECT_FALSE(is_chordal(6, c6));
}
