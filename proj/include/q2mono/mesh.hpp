#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace q2mono {

struct Interval {
    double left = 0.0;
    double right = 1.0;

    double length() const { return right - left; }
};

/// Ordered cell widths partitioning an interval. Each Q2 cell carries three
/// Gauss-Lobatto points (two ends and the midpoint), so m cells induce
/// 2m+1 grid coordinates: even indices sit on cell boundaries, odd indices
/// on cell midpoints.
class CellPartition1D {
public:
    /// Throws std::invalid_argument if any width is not positive or the
    /// widths do not fill the domain (1e-14 relative).
    CellPartition1D(std::vector<double> widths, Interval domain);

    std::size_t cells() const { return widths_.size(); }
    std::span<const double> widths() const { return widths_; }
    double width(std::size_t cell) const { return widths_.at(cell); }
    double half_width(std::size_t cell) const { return 0.5 * widths_.at(cell); }
    Interval domain() const { return domain_; }

    /// Grid coordinates, size 2*cells()+1, strictly increasing.
    std::span<const double> points() const { return points_; }
    double point(std::size_t k) const { return points_.at(k); }

    double min_half_width() const;
    double max_half_width() const;

private:
    std::vector<double> widths_;
    Interval domain_;
    std::vector<double> points_;
};

CellPartition1D build_uniform(std::size_t cells, Interval domain = {});

/// Widths proportional to ratio^k, k = 0..cells-1, growing left to right.
CellPartition1D build_geometric(std::size_t cells, double ratio, Interval domain = {});

/// Five cells on [0,1]: [2h, 2h, 2h', 2h, 2h] with 8h + 2h' = 1 and h'/h = ratio.
/// Throws std::out_of_range for ratio < 1.
CellPartition1D build_stretch5(double ratio);

enum class PointClass {
    Boundary,
    CellCenter,
    VerticalEdgeCenter,    // midpoint of an edge parallel to the y-axis (i even, j odd)
    HorizontalEdgeCenter,  // midpoint of an edge parallel to the x-axis (i odd, j even)
    Knot,
};

const char* to_string(PointClass c);

/// Distances to the neighbouring quadrature points along each axis. At a
/// point inside a cell (odd index) both sides equal the cell's half-width;
/// on a knot line they are the half-widths of the cells on either side.
struct LocalHalfWidths {
    double x_plus;   // towards i+1
    double x_minus;  // towards i-1
    double y_plus;   // towards j+1
    double y_minus;  // towards j-1
};

struct GridIndex {
    std::size_t i;
    std::size_t j;

    friend bool operator==(const GridIndex&, const GridIndex&) = default;
};

/// Tensor product of two partitions. Grid points are (i, j) with
/// 0 <= i <= nx()+1 and 0 <= j <= ny()+1; the outer ring is the boundary.
/// Flattening is row-major in i: flatten(i, j) = i + (nx()+2) * j.
class TensorMesh {
public:
    TensorMesh(CellPartition1D px, CellPartition1D py);

    const CellPartition1D& px() const { return px_; }
    const CellPartition1D& py() const { return py_; }

    /// Interior grid-point counts per axis; always odd.
    std::size_t nx() const { return 2 * px_.cells() - 1; }
    std::size_t ny() const { return 2 * py_.cells() - 1; }
    std::size_t points_x() const { return nx() + 2; }
    std::size_t points_y() const { return ny() + 2; }
    std::size_t size() const { return points_x() * points_y(); }

    double x(std::size_t i) const { return px_.point(i); }
    double y(std::size_t j) const { return py_.point(j); }

    std::size_t flatten(std::size_t i, std::size_t j) const { return i + points_x() * j; }
    GridIndex unflatten(std::size_t k) const { return {k % points_x(), k / points_x()}; }

    bool is_boundary(std::size_t i, std::size_t j) const;

    /// Throws std::invalid_argument for indices outside the grid.
    PointClass classify(std::size_t i, std::size_t j) const;

    /// Throws std::invalid_argument at boundary points.
    LocalHalfWidths half_widths(std::size_t i, std::size_t j) const;

    /// Smallest and largest half-width over both axes jointly.
    double min_half_width() const;
    double max_half_width() const;

private:
    CellPartition1D px_;
    CellPartition1D py_;
};

/// Same partition on both axes.
TensorMesh square_mesh(const CellPartition1D& p);

// Mesh text format:
//   x: w1 w2 ... wm
//   y: w1 ... wm'
// Blank lines and '#' comments are ignored. Each axis spans [0, sum(widths)].
TensorMesh read_mesh(std::istream& in);
TensorMesh read_mesh_file(const std::string& path);
void write_mesh(std::ostream& out, const TensorMesh& mesh);

}  // namespace q2mono
