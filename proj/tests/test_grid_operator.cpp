#include <cmath>
#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

#include "corpus.hpp"
#include "q2mono/grid_operator.hpp"

using namespace q2mono;

namespace {

void expect_rel(double got, double want, double rel = 1e-14) {
    EXPECT_NEAR(got, want, rel * std::abs(want)) << "want " << want;
}

}  // namespace

TEST(Assemble, BoundaryRowsAreIdentity) {
    const auto mesh = square_mesh(build_uniform(2));
    const auto a = assemble(mesh);
    const std::size_t r = mesh.flatten(0, 3);
    ASSERT_EQ(a.row(r).size(), 1u);
    EXPECT_EQ(a.at(r, r), 1.0);
}

TEST(Assemble, UniformStencilTables) {
    const double h = 0.125;  // 4 cells
    const auto mesh = square_mesh(build_uniform(4));
    const auto a = assemble(mesh);
    const double s = 1.0 / (h * h);
    const auto at = [&](std::size_t i, std::size_t j, int di, int dj) {
        return a.at(mesh.flatten(i, j), mesh.flatten(i + di, j + dj));
    };
    // cell center (3,3)
    expect_rel(at(3, 3, 0, 0), 4 * s);
    expect_rel(at(3, 3, 1, 0), -s);
    expect_rel(at(3, 3, 0, -1), -s);
    EXPECT_EQ(a.row(mesh.flatten(3, 3)).size(), 5u);
    // knot (4,4)
    expect_rel(at(4, 4, 0, 0), 7 * s);
    expect_rel(at(4, 4, 1, 0), -2 * s);
    expect_rel(at(4, 4, 0, -1), -2 * s);
    expect_rel(at(4, 4, 2, 0), 0.25 * s);
    expect_rel(at(4, 4, 0, -2), 0.25 * s);
    EXPECT_EQ(a.row(mesh.flatten(4, 4)).size(), 9u);
    // vertical edge center (4,3): knot line in x
    expect_rel(at(4, 3, 0, 0), 5.5 * s);
    expect_rel(at(4, 3, 1, 0), -2 * s);
    expect_rel(at(4, 3, 0, 1), -s);
    expect_rel(at(4, 3, -2, 0), 0.25 * s);
    EXPECT_EQ(at(4, 3, 0, 2), 0.0);
    // horizontal edge center (3,4)
    expect_rel(at(3, 4, 0, 0), 5.5 * s);
    expect_rel(at(3, 4, 0, -1), -2 * s);
    expect_rel(at(3, 4, -1, 0), -s);
    expect_rel(at(3, 4, 0, 2), 0.25 * s);
}

TEST(Assemble, NonuniformKnotRowMatchesRationalOracle) {
    // widths 1/5, 3/5 on both axes (domain [0, 4/5]); values from tests/oracle/q2_oracle.py
    const CellPartition1D p({0.2, 0.6}, Interval{0.0, 0.8});
    const auto mesh = square_mesh(p);
    const auto a = assemble(mesh);
    const std::size_t r = mesh.flatten(2, 2);
    expect_rel(a.at(r, r), 700.0 / 3.0);
    expect_rel(a.at(r, mesh.flatten(3, 2)), -100.0 / 3.0);
    expect_rel(a.at(r, mesh.flatten(1, 2)), -100.0);
    expect_rel(a.at(r, mesh.flatten(4, 2)), 25.0 / 6.0);
    expect_rel(a.at(r, mesh.flatten(0, 2)), 12.5);
    expect_rel(a.at(r, mesh.flatten(2, 3)), -100.0 / 3.0);
    expect_rel(a.at(r, mesh.flatten(2, 1)), -100.0);
    expect_rel(a.at(r, mesh.flatten(2, 4)), 25.0 / 6.0);
    expect_rel(a.at(r, mesh.flatten(2, 0)), 12.5);
    EXPECT_EQ(a.row(r).size(), 9u);
}

TEST(Assemble, RowSumsVanishInTheInterior) {
    for (const auto& [name, mesh] : test_corpus::mesh_corpus()) {
        const auto a = assemble(mesh);
        const auto sums = a.row_sums();
        const double scale = a.max_abs();
        for (std::size_t k = 0; k < sums.size(); ++k) {
            const auto g = mesh.unflatten(k);
            const double want = mesh.is_boundary(g.i, g.j) ? 1.0 : 0.0;
            ASSERT_NEAR(sums[k], want, 1e-12 * scale) << name << " row " << k;
        }
    }
}

TEST(Assemble, ReproducesQuadratics) {
    // -Laplace of x^2 + 3xy - 2y^2 is -2 + 4 = 2
    for (const auto& [name, mesh] : test_corpus::mesh_corpus()) {
        const auto a = assemble(mesh);
        const auto u = sample(mesh, [](double x, double y) { return x * x + 3 * x * y - 2 * y * y; });
        const auto lu = apply(a, u);
        for (std::size_t j = 1; j <= mesh.ny(); ++j) {
            for (std::size_t i = 1; i <= mesh.nx(); ++i) {
                ASSERT_NEAR(lu[mesh.flatten(i, j)], 2.0, 1e-9 * a.max_abs()) << name;
            }
        }
    }
}

TEST(Split, PartsReassembleExactly) {
    const auto mesh = square_mesh(build_stretch5(3.0));
    const auto a = assemble(mesh);
    const auto parts = split(a);
    const auto sum = parts.diagonal + parts.positive_offdiag + parts.negative_offdiag;
    ASSERT_EQ(sum.nnz(), a.nnz());
    for (std::size_t k = 0; k < a.nnz(); ++k) EXPECT_EQ(sum.entries()[k].value, a.entries()[k].value);
    for (const auto& e : parts.positive_offdiag.entries()) EXPECT_GT(e.value, 0.0);
    for (const auto& e : parts.negative_offdiag.entries()) EXPECT_LT(e.value, 0.0);
}

TEST(GridOperatorTest, MergesDuplicatesAndDropsZeros) {
    const auto op = GridOperator::from_entries(3, {{0, 1, 2.0}, {0, 1, -2.0}, {2, 0, 1.0}, {2, 0, 0.5}});
    EXPECT_EQ(op.nnz(), 1u);
    EXPECT_EQ(op.at(2, 0), 1.5);
    EXPECT_EQ(op.at(0, 1), 0.0);
    EXPECT_THROW(GridOperator::from_entries(2, {{2, 0, 1.0}}), std::invalid_argument);
}

TEST(GridOperatorTest, ApplyChecksSizes) {
    const auto id = GridOperator::identity(3);
    EXPECT_THROW(apply(id, GridVector(2)), std::invalid_argument);
    const auto v = apply(id, GridVector(std::vector<double>{1, 2, 3}));
    EXPECT_EQ(v[2], 3.0);
}

TEST(MatrixMarket, RoundTripIsBitExact) {
    const auto a = assemble(square_mesh(build_geometric(3, 1.17)));
    std::stringstream buf;
    write_matrix_market(buf, a);
    const auto b = read_matrix_market(buf);
    ASSERT_EQ(b.dim(), a.dim());
    ASSERT_EQ(b.nnz(), a.nnz());
    for (std::size_t k = 0; k < a.nnz(); ++k) {
        EXPECT_EQ(b.entries()[k].row, a.entries()[k].row);
        EXPECT_EQ(b.entries()[k].col, a.entries()[k].col);
        EXPECT_EQ(b.entries()[k].value, a.entries()[k].value);
    }
}

TEST(MatrixMarket, RejectsGarbage) {
    std::istringstream bad("hello\n");
    EXPECT_THROW(read_matrix_market(bad), std::invalid_argument);
    std::istringstream short_file("%%MatrixMarket matrix coordinate real general\n2 2 3\n1 1 1.0\n");
    EXPECT_THROW(read_matrix_market(short_file), std::invalid_argument);
}

TEST(InteriorIndices, CountsInteriorPoints) {
    const TensorMesh mesh(build_uniform(2), build_uniform(3));
    const auto idx = interior_indices(mesh);
    EXPECT_EQ(idx.size(), 3u * 5u);
    EXPECT_EQ(idx.front(), mesh.flatten(1, 1));
}
