#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "q2mono/grid_operator.hpp"
#include "q2mono/mesh.hpp"

namespace q2mono {

using ScalarField = std::function<double(double, double)>;

/// -Laplace(u) = f in the domain, u = g on its boundary.
struct PoissonProblem {
    ScalarField f;
    ScalarField g;
    std::optional<ScalarField> exact;
};

/// f at interior grid points, g at boundary points.
GridVector right_hand_side(const TensorMesh& mesh, const PoissonProblem& prob);

/// Dense LU solve of the assembled system. Throws SingularMatrixError when
/// the operator is singular and std::runtime_error when the residual
/// exceeds 1e-9 * ||rhs||_max.
GridVector solve_dirichlet(const TensorMesh& mesh, const PoissonProblem& prob);
GridVector solve_dirichlet(const TensorMesh& mesh, const GridOperator& a, const GridVector& rhs);

/// max over every grid point, boundary included, of |u - exact|.
double linf_error(const GridVector& u, const ScalarField& exact, const TensorMesh& mesh);

struct ConvergenceRow {
    std::string grid_label;  // "7x7"
    std::size_t interior_size;
    double linf_error;
    std::optional<double> order;  // log2(previous error / this error)
};

/// Solves on square geometric meshes with (n+1)/2 cells per axis for every
/// interior size n. Sizes must be odd and each one 2*previous+1. Throws
/// std::invalid_argument otherwise or when the problem has no exact solution.
std::vector<ConvergenceRow> convergence_study(const PoissonProblem& prob,
                                              const std::vector<std::size_t>& interior_sizes = {7, 15, 31, 63},
                                              double ratio = 1.01);

/// The three accuracy problems on the unit square:
///   1: u = log((x+1)^2 + (y+1)^2) + sin(y) e^x, f = 0;
///   2: u = sin(3 pi y) sin(2 pi x) + xy(1-x)(1-y), g = 0;
///   3: u = cos(5 pi x) cos(7 pi y) + x^2 + y^2, f = 74 pi^2 cos(5 pi x) cos(7 pi y) - 4.
/// Throws std::invalid_argument for any other id.
PoissonProblem test_problem(int id);

/// CSV with header grid,linf_error,order. Errors use three significant
/// digits unless `full_precision` is set; the first order is "-".
void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows, bool full_precision = false);

}  // namespace q2mono
