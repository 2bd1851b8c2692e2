#include "q2mono/solve.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "q2mono/mmatrix.hpp"

namespace q2mono {

GridVector right_hand_side(const TensorMesh& mesh, const PoissonProblem& prob) {
    if (!prob.f || !prob.g) throw std::invalid_argument("Poisson problem needs both f and g");
    GridVector rhs(mesh.size());
    for (std::size_t j = 0; j < mesh.points_y(); ++j) {
        for (std::size_t i = 0; i < mesh.points_x(); ++i) {
            const auto& field = mesh.is_boundary(i, j) ? prob.g : prob.f;
            rhs[mesh.flatten(i, j)] = field(mesh.x(i), mesh.y(j));
        }
    }
    return rhs;
}

GridVector solve_dirichlet(const TensorMesh& mesh, const PoissonProblem& prob) {
    return solve_dirichlet(mesh, assemble(mesh), right_hand_side(mesh, prob));
}

GridVector solve_dirichlet(const TensorMesh& mesh, const GridOperator& a, const GridVector& rhs) {
    if (a.dim() != mesh.size() || rhs.size() != mesh.size()) {
        throw std::invalid_argument("solve_dirichlet: operator, rhs and mesh sizes differ");
    }
    const Eigen::MatrixXd dense = a.to_dense();
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(dense);
    const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
    const double floor =
        static_cast<double>(dense.rows()) * std::numeric_limits<double>::epsilon() * dense.cwiseAbs().maxCoeff();
    for (Eigen::Index k = 0; k < pivots.size(); ++k) {
        if (!(pivots(k) > floor)) {
            throw SingularMatrixError(static_cast<std::size_t>(k), "solve_dirichlet: singular operator");
        }
    }
    const Eigen::Map<const Eigen::VectorXd> b(rhs.values().data(), static_cast<Eigen::Index>(rhs.size()));
    const Eigen::VectorXd x = lu.solve(b);
    GridVector u(std::vector<double>(x.data(), x.data() + x.size()));

    const GridVector au = apply(a, u);
    double residual = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) residual = std::max(residual, std::abs(au[k] - rhs[k]));
    if (residual > 1e-9 * rhs.max_abs()) {
        throw std::runtime_error("solve_dirichlet: residual " + std::to_string(residual) + " above tolerance");
    }
    return u;
}

double linf_error(const GridVector& u, const ScalarField& exact, const TensorMesh& mesh) {
    if (u.size() != mesh.size()) throw std::invalid_argument("linf_error: vector does not match mesh");
    const GridVector e = sample(mesh, exact);
    double worst = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) worst = std::max(worst, std::abs(u[k] - e[k]));
    return worst;
}

std::vector<ConvergenceRow> convergence_study(const PoissonProblem& prob, const std::vector<std::size_t>& interior_sizes,
                                              double ratio) {
    if (!prob.exact) throw std::invalid_argument("convergence_study: problem has no exact solution");
    if (interior_sizes.empty()) throw std::invalid_argument("convergence_study: no grid sizes");
    for (std::size_t k = 0; k < interior_sizes.size(); ++k) {
        const std::size_t n = interior_sizes[k];
        if (n % 2 == 0) throw std::invalid_argument("convergence_study: interior sizes must be odd");
        if (k > 0 && n != 2 * interior_sizes[k - 1] + 1) {
            throw std::invalid_argument("convergence_study: each size must be 2*previous+1");
        }
    }
    std::vector<ConvergenceRow> rows;
    for (std::size_t n : interior_sizes) {
        const TensorMesh mesh = square_mesh(build_geometric((n + 1) / 2, ratio));
        const double err = linf_error(solve_dirichlet(mesh, prob), *prob.exact, mesh);
        ConvergenceRow row{std::to_string(n) + "x" + std::to_string(n), n, err, std::nullopt};
        if (!rows.empty()) row.order = std::log2(rows.back().linf_error / err);
        rows.push_back(std::move(row));
    }
    return rows;
}

PoissonProblem test_problem(int id) {
    using std::numbers::pi;
    switch (id) {
        case 1: {
            auto u = [](double x, double y) {
                return std::log((x + 1) * (x + 1) + (y + 1) * (y + 1)) + std::sin(y) * std::exp(x);
            };
            return {[](double, double) { return 0.0; }, u, u};
        }
        case 2: {
            auto u = [](double x, double y) {
                return std::sin(3 * pi * y) * std::sin(2 * pi * x) + x * y * (1 - x) * (1 - y);
            };
            auto f = [](double x, double y) {
                return 13 * pi * pi * std::sin(3 * pi * y) * std::sin(2 * pi * x) + 2 * y * (1 - y) + 2 * x * (1 - x);
            };
            return {f, u, u};
        }
        case 3: {
            auto u = [](double x, double y) { return std::cos(5 * pi * x) * std::cos(7 * pi * y) + x * x + y * y; };
            auto f = [](double x, double y) { return 74 * pi * pi * std::cos(5 * pi * x) * std::cos(7 * pi * y) - 4; };
            return {f, u, u};
        }
        default:
            throw std::invalid_argument("test problem id must be 1, 2 or 3");
    }
}

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows, bool full_precision) {
    out << "grid,linf_error,order\n";
    char buf[64];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof buf, full_precision ? "%.17e" : "%.2e", row.linf_error);
        out << row.grid_label << ',' << buf << ',';
        if (row.order) {
            std::snprintf(buf, sizeof buf, full_precision ? "%.17g" : "%.2f", *row.order);
            out << buf;
        } else {
            out << '-';
        }
        out << '\n';
    }
}

}  // namespace q2mono
