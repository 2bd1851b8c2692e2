#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace q2mono {

enum class InverseScope { Full, Interior };

struct SweepRecord {
    double ratio;
    double min_inverse_entry;
    bool monotone;
};

/// Minimum inverse entry of the stretch5 operator for ratio = start + k*step,
/// k = 0, 1, ... while ratio <= stop (with a 1e-9*step allowance). Interior
/// scope inspects the interior block of the inverse only.
/// Throws std::invalid_argument unless start >= 1, step > 0, stop >= start.
std::vector<SweepRecord> sweep_stretch5(double start, double stop, double step, InverseScope scope);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Exit codes: 0 pass/success, 1 certified failure, 2 usage or
/// input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace q2mono
