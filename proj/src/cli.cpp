#include "q2mono/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "q2mono/constraints.hpp"
#include "q2mono/grid_operator.hpp"
#include "q2mono/lorenz.hpp"
#include "q2mono/mesh.hpp"
#include "q2mono/mmatrix.hpp"
#include "q2mono/report_json.hpp"
#include "q2mono/solve.hpp"

namespace q2mono {

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MeshOptions {
    std::optional<std::size_t> uniform;
    std::optional<std::string> geometric;
    std::optional<double> stretch5;
    std::optional<std::string> mesh_file;

    void attach(CLI::App* cmd) {
        auto* u = cmd->add_option("--uniform", uniform, "Uniform mesh with M cells per axis");
        auto* g = cmd->add_option("--geometric", geometric, "Geometric mesh M:R (M cells, width ratio R)");
        auto* s = cmd->add_option("--stretch5", stretch5, "Five-cell mesh with middle/outer half-width ratio R");
        auto* f = cmd->add_option("--mesh-file", mesh_file, "Mesh file with 'x:' and 'y:' width lines");
        u->excludes(g, s, f);
        g->excludes(s, f);
        s->excludes(f);
    }

    TensorMesh build() const {
        if (uniform) {
            if (*uniform == 0) throw UsageError("--uniform needs at least one cell");
            return square_mesh(build_uniform(*uniform));
        }
        if (geometric) {
            const auto colon = geometric->find(':');
            if (colon == std::string::npos) throw UsageError("--geometric expects M:R");
            std::size_t cells = 0;
            double ratio = 0.0;
            try {
                cells = std::stoul(geometric->substr(0, colon));
                ratio = std::stod(geometric->substr(colon + 1));
            } catch (const std::logic_error&) {
                throw UsageError("--geometric expects M:R, got '" + *geometric + "'");
            }
            if (cells == 0 || !(ratio > 0.0)) throw UsageError("--geometric needs M >= 1 and R > 0");
            return square_mesh(build_geometric(cells, ratio));
        }
        if (stretch5) return square_mesh(build_stretch5(*stretch5));
        if (mesh_file) return read_mesh_file(*mesh_file);
        throw UsageError("one of --uniform, --geometric, --stretch5, --mesh-file is required");
    }
};

// Writes to --out when given, otherwise to the command's stdout.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw UsageError("cannot open '" + path + "' for writing");
            stream_ = &file_;
        }
    }
    std::ostream& get() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

InverseScope parse_scope(const std::string& s) {
    if (s == "full") return InverseScope::Full;
    if (s == "interior") return InverseScope::Interior;
    throw UsageError("--scope must be 'full' or 'interior'");
}

InversePositivityResult inverse_for_scope(const TensorMesh& mesh, const GridOperator& a, InverseScope scope) {
    if (scope == InverseScope::Full) return inverse_min_entry(a);
    const auto interior = interior_indices(mesh);
    return inverse_min_entry(a, interior);
}

std::string format(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

}  // namespace

std::vector<SweepRecord> sweep_stretch5(double start, double stop, double step, InverseScope scope) {
    if (!(start >= 1.0) || !(step > 0.0) || !(stop >= start)) {
        throw std::invalid_argument("sweep needs start >= 1, step > 0 and stop >= start");
    }
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<SweepRecord> records;
    records.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double ratio = start + static_cast<double>(k) * step;
        const TensorMesh mesh = square_mesh(build_stretch5(ratio));
        const InversePositivityResult r = inverse_for_scope(mesh, assemble(mesh), scope);
        records.push_back({ratio, r.min_entry, r.is_nonnegative});
    }
    return records;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Q2 spectral element Laplacian: assembly, monotonicity certificates and accuracy studies"};
    app.require_subcommand(1);
    std::string out_path;
    MeshOptions mesh_opts;
    double eps1 = LorenzParams{}.face_weight;
    double eps2 = LorenzParams{}.knot_line_weight;

    auto* assemble_cmd = app.add_subcommand("assemble", "Write the assembled operator as Matrix Market");
    mesh_opts.attach(assemble_cmd);
    assemble_cmd->add_option("--out", out_path, "Output path (default stdout)");

    auto* certify_cmd = app.add_subcommand("certify", "Check the relaxed Lorenz condition");
    mesh_opts.attach(certify_cmd);
    certify_cmd->add_option("--eps1", eps1, "Weight on in-cell couplings")->capture_default_str();
    certify_cmd->add_option("--eps2", eps2, "Weight on knot-line couplings")->capture_default_str();
    certify_cmd->add_option("--out", out_path, "Output path (default stdout)");

    double start = 1.0;
    double stop = 6.0;
    double step = 0.05;
    std::string scope = "interior";
    auto* sweep_cmd = app.add_subcommand("sweep", "Minimum inverse entry on the stretch5 family");
    sweep_cmd->add_option("--start", start)->capture_default_str();
    sweep_cmd->add_option("--stop", stop)->capture_default_str();
    sweep_cmd->add_option("--step", step)->capture_default_str();
    sweep_cmd->add_option("--scope", scope, "interior (interior block of the inverse) or full")->capture_default_str();
    sweep_cmd->add_option("--out", out_path, "Output path (default stdout)");

    int test_id = 1;
    double ratio = 1.01;
    std::vector<std::size_t> sizes{7, 15, 31, 63};
    bool full_precision = false;
    auto* converge_cmd = app.add_subcommand("converge", "Accuracy study on geometric meshes");
    converge_cmd->add_option("--test", test_id, "Problem 1, 2 or 3")->check(CLI::IsMember({1, 2, 3}))->capture_default_str();
    converge_cmd->add_option("--ratio", ratio, "Consecutive cell width ratio")->capture_default_str();
    converge_cmd->add_option("--sizes", sizes, "Interior grid sizes, comma separated")->delimiter(',');
    converge_cmd->add_flag("--full-precision", full_precision, "Print errors with 17 significant digits");
    converge_cmd->add_option("--out", out_path, "Output path (default stdout)");

    std::string which = "main";
    double ell = 4.0;
    auto* constraints_cmd = app.add_subcommand("constraints", "Check the explicit mesh constraints");
    mesh_opts.attach(constraints_cmd);
    constraints_cmd->add_option("--which", which)
        ->check(CLI::IsMember({"local", "main", "global", "q1"}))
        ->capture_default_str();
    constraints_cmd->add_option("--ell", ell, "Constant for --which local, in (1, 4]")->capture_default_str();
    constraints_cmd->add_option("--out", out_path, "Output path (default stdout)");

    auto* inverse_cmd = app.add_subcommand("inverse", "Minimum entry of the inverse via dense LU");
    mesh_opts.attach(inverse_cmd);
    inverse_cmd->add_option("--scope", scope, "full or interior")->capture_default_str();
    inverse_cmd->add_option("--out", out_path, "Output path (default stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (assemble_cmd->parsed()) {
            const TensorMesh mesh = mesh_opts.build();
            const GridOperator a = assemble(mesh);
            Sink sink(out_path, out);
            write_matrix_market(sink.get(), a);
            (out_path.empty() ? err : out) << "dim " << a.dim() << " nnz " << a.nnz() << '\n';
            return kExitPass;
        }
        if (certify_cmd->parsed()) {
            const TensorMesh mesh = mesh_opts.build();
            const LorenzParams params{eps1, eps2};
            params.validate();
            const CertificateReport report = certify(mesh, params);
            Sink sink(out_path, out);
            sink.get() << to_json(report).dump(2) << '\n';
            return report.overall ? kExitPass : kExitFail;
        }
        if (sweep_cmd->parsed()) {
            const InverseScope s = parse_scope(scope);
            const auto records = sweep_stretch5(start, stop, step, s);
            Sink sink(out_path, out);
            auto& o = sink.get();
            o << "ratio,min_inverse_entry,monotone\n";
            const SweepRecord* first_negative = nullptr;
            for (const auto& r : records) {
                o << format("%.6g", r.ratio) << ',' << format("%.6e", r.min_inverse_entry) << ','
                  << (r.monotone ? "true" : "false") << '\n';
                if (!r.monotone && first_negative == nullptr) first_negative = &r;
            }
            if (first_negative != nullptr) {
                o << "# first_negative_ratio=" << format("%.6g", first_negative->ratio)
                  << " min_inverse_entry=" << format("%.6e", first_negative->min_inverse_entry) << '\n';
            } else {
                o << "# first_negative_ratio=none\n";
            }
            return kExitPass;
        }
        if (converge_cmd->parsed()) {
            const auto rows = convergence_study(test_problem(test_id), sizes, ratio);
            Sink sink(out_path, out);
            write_convergence_csv(sink.get(), rows, full_precision);
            return kExitPass;
        }
        if (constraints_cmd->parsed()) {
            const TensorMesh mesh = mesh_opts.build();
            ConstraintReport report;
            if (which == "local") {
                report = check_local(mesh, ell);
            } else if (which == "main") {
                report = check_main(mesh);
            } else if (which == "global") {
                report = check_global_ratio(mesh);
            } else {
                report = check_q1(mesh);
            }
            Sink sink(out_path, out);
            sink.get() << to_json(report).dump(2) << '\n';
            return report.pass ? kExitPass : kExitFail;
        }
        if (inverse_cmd->parsed()) {
            const TensorMesh mesh = mesh_opts.build();
            const InversePositivityResult r = inverse_for_scope(mesh, assemble(mesh), parse_scope(scope));
            Sink sink(out_path, out);
            sink.get() << to_json(r).dump(2) << '\n';
            return r.is_nonnegative ? kExitPass : kExitFail;
        }
    } catch (const std::logic_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace q2mono
