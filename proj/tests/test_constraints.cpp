#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "corpus.hpp"
#include "q2mono/constraints.hpp"
#include "q2mono/lorenz.hpp"

using namespace q2mono;

TEST(LocalConstants, MainInstance) {
    const auto c = local_constants(4.0);
    EXPECT_DOUBLE_EQ(c.product, 7.0 / 12.0);
    EXPECT_DOUBLE_EQ(c.ratio, std::sqrt(1.0 / 3.0));
    EXPECT_THROW(local_constants(1.0), std::invalid_argument);
    EXPECT_THROW(local_constants(0.5), std::invalid_argument);
    EXPECT_THROW(local_constants(4.5), std::invalid_argument);
}

TEST(CheckMain, UniformMarginIsFiveTwelfths) {
    const auto r = check_main(square_mesh(build_uniform(4)));
    EXPECT_TRUE(r.pass);
    EXPECT_NEAR(r.worst_margin, 1.0 - 7.0 / 12.0, 1e-15);
    ASSERT_TRUE(r.location.has_value());
    EXPECT_EQ(r.location->inequality.rfind("product", 0), 0u);
}

TEST(CheckMain, Stretch5KnotBlock) {
    // knot between cells of half-widths h and 2h: 2h^2 against (7/12)(2h)^2
    const double h = 1.0;
    const auto block = check_quadruple({2 * h, h, 2 * h, h}, 7.0 / 12.0, std::sqrt(1.0 / 3.0));
    EXPECT_FALSE(block.pass);
    EXPECT_NEAR(block.worst_margin, (2.0 - 7.0 / 3.0) / 2.0, 1e-15);
    EXPECT_FALSE(check_main(square_mesh(build_stretch5(2.0))).pass);
}

TEST(CheckMain, Examples) {
    EXPECT_TRUE(check_main(square_mesh(build_geometric(8, 1.01))).pass);
    const auto r = check_main(square_mesh(build_stretch5(3.0)));
    EXPECT_FALSE(r.pass);
    const auto ratio_only = check_quadruple({3, 1, 1, 1}, 0.0, std::sqrt(1.0 / 3.0));
    EXPECT_FALSE(ratio_only.pass);
    EXPECT_EQ(ratio_only.location->inequality, "ratio_y");
}

TEST(CheckLocal, SingleCellIsVacuous) {
    const auto r = check_local(square_mesh(build_uniform(1)), 3.0);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.worst_margin, 1.0);
    EXPECT_FALSE(r.location.has_value());
}

TEST(CheckLocal, StripMeshChecksEdgeCenters) {
    // no knots, but the edge centers between the x cells still compare x and y half-widths
    const TensorMesh strip(CellPartition1D({0.5, 0.5}, Interval{}), CellPartition1D({0.1}, Interval{0.0, 0.1}));
    EXPECT_FALSE(check_main(strip).pass);
}

TEST(CheckGlobalRatio, Examples) {
    const auto u = check_global_ratio(square_mesh(build_uniform(3)));
    EXPECT_TRUE(u.pass);
    EXPECT_NEAR(u.worst_margin, 1.0 - 25.0 / 32.0, 1e-15);
    const auto g = check_global_ratio(square_mesh(build_geometric(16, 1.01)));
    EXPECT_TRUE(g.pass);
    EXPECT_NEAR(g.worst_margin, 1.0 - std::pow(1.01, 15) / 1.28, 1e-12);
    EXPECT_FALSE(check_global_ratio(square_mesh(build_stretch5(1.3))).pass);
    EXPECT_TRUE(check_global_ratio(square_mesh(build_stretch5(1.28))).pass);
    // the joint reading couples the axes
    EXPECT_FALSE(check_global_ratio(TensorMesh(build_uniform(2), build_uniform(3))).pass);
}

TEST(CheckQ1, Examples) {
    EXPECT_TRUE(check_q1(square_mesh(build_uniform(5))).pass);
    const double b = std::sqrt(2.0);
    EXPECT_TRUE(check_quadruple({1, 1, b - 0.01, b - 0.01}, 0.5, 0.0).pass);
    EXPECT_FALSE(check_quadruple({1, 1, b + 0.01, b + 0.01}, 0.5, 0.0).pass);
}

TEST(Properties, ImplicationChain) {
    for (const auto& [name, mesh] : test_corpus::mesh_corpus()) {
        const bool global = check_global_ratio(mesh).pass;
        const bool main = check_main(mesh).pass;
        if (global) EXPECT_TRUE(main) << name;
        if (main) {
            EXPECT_TRUE(check_local(mesh, 4.0).pass) << name;
            EXPECT_TRUE(check_q1(mesh).pass) << name;
        }
    }
}

TEST(Properties, MonotoneInEll) {
    const double ells[] = {1.5, 2.0, 2.5, 3.0, 3.5, 4.0};
    for (const auto& [name, mesh] : test_corpus::mesh_corpus()) {
        bool passed = false;
        for (double ell : ells) {
            const bool now = check_local(mesh, ell).pass;
            if (passed) EXPECT_TRUE(now) << name << " ell " << ell;
            passed = passed || now;
        }
    }
}

TEST(Properties, LocalConstraintsImplyProductCondition) {
    int linked = 0;
    for (const auto& [name, mesh] : test_corpus::mesh_corpus()) {
        for (double ell : {2.0, 2.5, 3.0, 3.5, 3.9, 3.99}) {
            if (!check_local(mesh, ell).pass) continue;
            ++linked;
            const LorenzParams params{1.0 - ell / 4.0, 1.0};
            const auto dec = decompose(mesh, assemble(mesh), params);
            EXPECT_TRUE(check_product_condition(dec).pass) << name << " ell " << ell;
            EXPECT_TRUE(check_row_condition(dec).pass) << name << " ell " << ell;
        }
    }
    EXPECT_GT(linked, 50);
}
