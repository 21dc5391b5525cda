#pragma once

// Growth-rate regression: log count against n (exponential scale) or
// against log n (polynomial scale), fitted over the upper half of the rows.

#include <string>
#include <utility>
#include <vector>

namespace hypdyn {

enum class GrowthMode { Exponential, Polynomial };
const char* to_string(GrowthMode m);
GrowthMode growth_mode_from_string(const std::string& s);  // "exponential" | "polynomial"

struct GrowthRow {
    long n = 0;
    double epsilon = 0.0;
    double count = 0.0;      // may be inf for huge exact counts
    double log_count = 0.0;  // natural log, computed exactly when possible
};

struct GrowthFit {
    std::vector<GrowthRow> rows;
    GrowthMode mode = GrowthMode::Polynomial;
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    std::pair<long, long> window{0, 0};  // first and last n used by the fit
};

/// Least squares over rows [size/2, size) after sorting by n. Needs at least
/// two rows in the window, all counts >= 1, and (polynomial mode) n >= 1.
/// R^2 is reported as 1 when the fitted values are constant.
GrowthFit fit_growth(std::vector<GrowthRow> rows, GrowthMode mode);

}  // namespace hypdyn
