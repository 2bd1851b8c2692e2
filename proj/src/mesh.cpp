#include "q2mono/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace q2mono {

CellPartition1D::CellPartition1D(std::vector<double> widths, Interval domain)
    : widths_(std::move(widths)), domain_(domain) {
    if (widths_.empty()) {
        throw std::invalid_argument("partition needs at least one cell");
    }
    if (!(domain_.right > domain_.left)) {
        throw std::invalid_argument("partition domain must have positive length");
    }
    for (double w : widths_) {
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw std::invalid_argument("cell widths must be positive and finite");
        }
    }
    const double total = std::accumulate(widths_.begin(), widths_.end(), 0.0);
    if (std::abs(total - domain_.length()) > 1e-14 * domain_.length()) {
        std::ostringstream msg;
        msg << std::setprecision(17) << "cell widths sum to " << total << " but the domain length is "
            << domain_.length();
        throw std::invalid_argument(msg.str());
    }

    points_.reserve(2 * widths_.size() + 1);
    double left = domain_.left;
    points_.push_back(left);
    for (std::size_t k = 0; k < widths_.size(); ++k) {
        points_.push_back(left + 0.5 * widths_[k]);
        left += widths_[k];
        points_.push_back(k + 1 == widths_.size() ? domain_.right : left);
    }
}

double CellPartition1D::min_half_width() const {
    return 0.5 * *std::min_element(widths_.begin(), widths_.end());
}

double CellPartition1D::max_half_width() const {
    return 0.5 * *std::max_element(widths_.begin(), widths_.end());
}

CellPartition1D build_uniform(std::size_t cells, Interval domain) {
    if (cells == 0) {
        throw std::invalid_argument("build_uniform: need at least one cell");
    }
    const double w = domain.length() / static_cast<double>(cells);
    return CellPartition1D(std::vector<double>(cells, w), domain);
}

CellPartition1D build_geometric(std::size_t cells, double ratio, Interval domain) {
    if (cells == 0) {
        throw std::invalid_argument("build_geometric: need at least one cell");
    }
    if (!(ratio > 0.0) || !std::isfinite(ratio)) {
        throw std::invalid_argument("build_geometric: ratio must be positive");
    }
    std::vector<double> powers(cells);
    double p = 1.0;
    for (std::size_t k = 0; k < cells; ++k) {
        powers[k] = p;
        p *= ratio;
    }
    const double sum = std::accumulate(powers.begin(), powers.end(), 0.0);
    const double first = domain.length() / sum;
    std::vector<double> widths(cells);
    for (std::size_t k = 0; k < cells; ++k) {
        widths[k] = first * powers[k];
    }
    return CellPartition1D(std::move(widths), domain);
}

CellPartition1D build_stretch5(double ratio) {
    if (!(ratio >= 1.0) || !std::isfinite(ratio)) {
        throw std::out_of_range("build_stretch5: ratio h'/h must be >= 1");
    }
    const double h = 1.0 / (8.0 + 2.0 * ratio);
    const double hs = ratio * h;
    return CellPartition1D({2 * h, 2 * h, 2 * hs, 2 * h, 2 * h}, Interval{0.0, 1.0});
}

const char* to_string(PointClass c) {
    switch (c) {
        case PointClass::Boundary: return "boundary";
        case PointClass::CellCenter: return "cell_center";
        case PointClass::VerticalEdgeCenter: return "vertical_edge_center";
        case PointClass::HorizontalEdgeCenter: return "horizontal_edge_center";
        case PointClass::Knot: return "knot";
    }
    return "unknown";
}

TensorMesh::TensorMesh(CellPartition1D px, CellPartition1D py) : px_(std::move(px)), py_(std::move(py)) {}

bool TensorMesh::is_boundary(std::size_t i, std::size_t j) const {
    return i == 0 || j == 0 || i == nx() + 1 || j == ny() + 1;
}

PointClass TensorMesh::classify(std::size_t i, std::size_t j) const {
    if (i > nx() + 1 || j > ny() + 1) {
        throw std::invalid_argument("classify: grid index out of range");
    }
    if (is_boundary(i, j)) return PointClass::Boundary;
    const bool odd_i = i % 2 == 1;
    const bool odd_j = j % 2 == 1;
    if (odd_i && odd_j) return PointClass::CellCenter;
    if (!odd_i && !odd_j) return PointClass::Knot;
    return odd_j ? PointClass::VerticalEdgeCenter : PointClass::HorizontalEdgeCenter;
}

namespace {

// (plus, minus) half-widths around interior index k of a partition.
std::pair<double, double> axis_half_widths(const CellPartition1D& p, std::size_t k) {
    if (k % 2 == 1) {
        const double h = p.half_width((k - 1) / 2);
        return {h, h};
    }
    return {p.half_width(k / 2), p.half_width(k / 2 - 1)};
}

}  // namespace

LocalHalfWidths TensorMesh::half_widths(std::size_t i, std::size_t j) const {
    if (i > nx() + 1 || j > ny() + 1 || is_boundary(i, j)) {
        throw std::invalid_argument("half_widths: point is not interior");
    }
    const auto [xp, xm] = axis_half_widths(px_, i);
    const auto [yp, ym] = axis_half_widths(py_, j);
    return {xp, xm, yp, ym};
}

double TensorMesh::min_half_width() const { return std::min(px_.min_half_width(), py_.min_half_width()); }

double TensorMesh::max_half_width() const { return std::max(px_.max_half_width(), py_.max_half_width()); }

TensorMesh square_mesh(const CellPartition1D& p) { return TensorMesh(p, p); }

namespace {

std::vector<double> parse_widths(const std::string& rest, int line_no) {
    std::istringstream in(rest);
    std::vector<double> widths;
    std::string token;
    while (in >> token) {
        std::size_t used = 0;
        double w = 0.0;
        try {
            w = std::stod(token, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != token.size()) {
            throw std::invalid_argument("mesh file line " + std::to_string(line_no) + ": bad width '" + token + "'");
        }
        widths.push_back(w);
    }
    if (widths.empty()) {
        throw std::invalid_argument("mesh file line " + std::to_string(line_no) + ": no widths");
    }
    return widths;
}

CellPartition1D partition_from_widths(std::vector<double> widths) {
    const double total = std::accumulate(widths.begin(), widths.end(), 0.0);
    return CellPartition1D(std::move(widths), Interval{0.0, total});
}

}  // namespace

TensorMesh read_mesh(std::istream& in) {
    std::vector<double> xw;
    std::vector<double> yw;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        line.erase(0, first);
        if (line.size() < 2 || line[1] != ':' || (line[0] != 'x' && line[0] != 'y')) {
            throw std::invalid_argument("mesh file line " + std::to_string(line_no) + ": expected 'x:' or 'y:'");
        }
        auto& target = line[0] == 'x' ? xw : yw;
        if (!target.empty()) {
            throw std::invalid_argument("mesh file line " + std::to_string(line_no) + ": axis given twice");
        }
        target = parse_widths(line.substr(2), line_no);
    }
    if (xw.empty() || yw.empty()) {
        throw std::invalid_argument("mesh file must define both 'x:' and 'y:' widths");
    }
    return TensorMesh(partition_from_widths(std::move(xw)), partition_from_widths(std::move(yw)));
}

TensorMesh read_mesh_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open mesh file '" + path + "'");
    }
    return read_mesh(in);
}

void write_mesh(std::ostream& out, const TensorMesh& mesh) {
    const auto old_precision = out.precision(17);
    for (const auto& [label, part] : {std::pair{'x', &mesh.px()}, std::pair{'y', &mesh.py()}}) {
        out << label << ':';
        for (double w : part->widths()) out << ' ' << w;
        out << '\n';
    }
    out.precision(old_precision);
}

}  // namespace q2mono
