#include <cmath>
#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

#include "corpus.hpp"
#include "q2mono/mmatrix.hpp"
#include "q2mono/solve.hpp"

using namespace q2mono;

namespace {

PoissonProblem manufactured(ScalarField u, double minus_laplacian) {
    return {[minus_laplacian](double, double) { return minus_laplacian; }, u, u};
}

}  // namespace

TEST(SolveDirichlet, ConstantsAndLinears) {
    const auto mesh = square_mesh(build_geometric(4, 1.2));
    const auto one = solve_dirichlet(mesh, manufactured([](double, double) { return 1.0; }, 0.0));
    for (double v : one.values()) EXPECT_NEAR(v, 1.0, 1e-12);
    const ScalarField x = [](double x, double) { return x; };
    const auto ux = solve_dirichlet(mesh, manufactured(x, 0.0));
    EXPECT_LE(linf_error(ux, x, mesh), 1e-11);
}

TEST(SolveDirichlet, ApplyingTheOperatorReturnsTheRhs) {
    const auto mesh = square_mesh(build_stretch5(3.0));
    const auto prob = test_problem(2);
    const auto a = assemble(mesh);
    const auto rhs = right_hand_side(mesh, prob);
    const auto u = solve_dirichlet(mesh, a, rhs);
    const auto back = apply(a, u);
    for (std::size_t k = 0; k < rhs.size(); ++k) EXPECT_NEAR(back[k], rhs[k], 1e-9 * rhs.max_abs());
}

TEST(SolveDirichlet, QuadraticExactnessOnCorpus) {
    struct Case {
        ScalarField u;
        double f;
    };
    const Case cases[] = {{[](double, double) { return 1.0; }, 0.0},
                          {[](double x, double) { return x; }, 0.0},
                          {[](double, double y) { return y; }, 0.0},
                          {[](double x, double y) { return x * y; }, 0.0},
                          {[](double x, double) { return x * x; }, -2.0},
                          {[](double, double y) { return y * y; }, -2.0}};
    for (const auto& [name, mesh] : test_corpus::mesh_corpus()) {
        for (const auto& c : cases) {
            const auto u = solve_dirichlet(mesh, manufactured(c.u, c.f));
            ASSERT_LE(linf_error(u, c.u, mesh), 1e-10) << name;
        }
    }
}

TEST(SolveDirichlet, SizeMismatchThrows) {
    const auto mesh = square_mesh(build_uniform(2));
    EXPECT_THROW(solve_dirichlet(mesh, assemble(mesh), GridVector(3)), std::invalid_argument);
    EXPECT_THROW(right_hand_side(mesh, PoissonProblem{}), std::invalid_argument);
}

TEST(SolveDirichlet, SingularOperatorThrows) {
    const auto mesh = square_mesh(build_uniform(1));
    const auto zero = GridOperator::from_entries(mesh.size(), {{0, 0, 1.0}});
    EXPECT_THROW(solve_dirichlet(mesh, zero, GridVector(mesh.size(), 1.0)), SingularMatrixError);
}

TEST(LinfError, CountsEveryPoint) {
    const auto mesh = square_mesh(build_uniform(2));
    const ScalarField f = [](double x, double y) { return x + 2 * y; };
    auto u = sample(mesh, f);
    EXPECT_EQ(linf_error(u, f, mesh), 0.0);
    u[mesh.flatten(2, 2)] += 1e-3;
    EXPECT_NEAR(linf_error(u, f, mesh), 1e-3, 1e-15);
    EXPECT_THROW(linf_error(GridVector(2), f, mesh), std::invalid_argument);
}

TEST(TestProblems, BoundaryDataMatchesExactSolution) {
    const auto mesh = square_mesh(build_geometric(4, 1.01));
    for (int id : {1, 2, 3}) {
        const auto p = test_problem(id);
        ASSERT_TRUE(p.exact.has_value());
        for (std::size_t k = 0; k < mesh.points_x(); ++k) {
            for (auto [x, y] : {std::pair{mesh.x(k), 0.0}, std::pair{mesh.x(k), 1.0}, std::pair{0.0, mesh.y(k)}}) {
                EXPECT_NEAR(p.g(x, y), (*p.exact)(x, y), 1e-12);
            }
        }
    }
    EXPECT_THROW(test_problem(4), std::invalid_argument);
}

TEST(TestProblems, SourceIsMinusLaplacianOfExact) {
    // fourth-order central differences at a few points
    const double d = 1e-3;
    for (int id : {1, 2, 3}) {
        const auto p = test_problem(id);
        const auto& u = *p.exact;
        for (auto [x, y] : {std::pair{0.3, 0.7}, std::pair{0.55, 0.2}}) {
            const auto d2 = [&](double dx, double dy) {
                return (-u(x + 2 * dx, y + 2 * dy) + 16 * u(x + dx, y + dy) - 30 * u(x, y) + 16 * u(x - dx, y - dy) -
                        u(x - 2 * dx, y - 2 * dy)) /
                       (12 * d * d);
            };
            EXPECT_NEAR(-(d2(d, 0) + d2(0, d)), p.f(x, y), 1e-4 * (1 + std::abs(p.f(x, y)))) << "test " << id;
        }
    }
}

TEST(ConvergenceStudy, ValidatesSizes) {
    const auto p = test_problem(1);
    EXPECT_THROW(convergence_study(p, {7, 14}), std::invalid_argument);
    EXPECT_THROW(convergence_study(p, {7, 13}), std::invalid_argument);
    EXPECT_THROW(convergence_study(p, {}), std::invalid_argument);
    EXPECT_THROW(convergence_study(PoissonProblem{p.f, p.g, std::nullopt}, {7}), std::invalid_argument);
}

TEST(ConvergenceStudy, QuadraticIsExactOnEveryGrid) {
    const auto rows = convergence_study(manufactured([](double x, double y) { return x * x + y * y; }, -4.0), {3, 7, 15});
    for (const auto& r : rows) EXPECT_LE(r.linf_error, 1e-10);
}

TEST(ConvergenceStudy, FirstRowsOfTestOne) {
    const auto rows = convergence_study(test_problem(1), {7, 15});
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].grid_label, "7x7");
    EXPECT_FALSE(rows[0].order.has_value());
    EXPECT_NEAR(rows[0].linf_error, 2.66e-5, 0.25 * 2.66e-5);
    EXPECT_NEAR(*rows[1].order, 3.74, 0.15);
}

TEST(ConvergenceCsv, Format) {
    std::vector<ConvergenceRow> rows{{"7x7", 7, 2.6623e-5, std::nullopt}, {"15x15", 15, 1.9801e-6, 3.7490}};
    std::ostringstream out;
    write_convergence_csv(out, rows);
    EXPECT_EQ(out.str(), "grid,linf_error,order\n7x7,2.66e-05,-\n15x15,1.98e-06,3.75\n");
    std::ostringstream full;
    write_convergence_csv(full, rows, true);
    std::istringstream lines(full.str());
    std::string line;
    std::getline(lines, line);
    std::getline(lines, line);
    EXPECT_EQ(std::stod(line.substr(4, line.find(',', 4) - 4)), 2.6623e-5) << line;
}
