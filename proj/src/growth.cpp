#include "hypdyn/growth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hypdyn {

const char* to_string(GrowthMode m) { return m == GrowthMode::Exponential ? "exponential" : "polynomial"; }

GrowthMode growth_mode_from_string(const std::string& s) {
    if (s == "exponential") return GrowthMode::Exponential;
    if (s == "polynomial") return GrowthMode::Polynomial;
    throw std::domain_error("unknown growth mode '" + s + "'");
}

GrowthFit fit_growth(std::vector<GrowthRow> rows, GrowthMode mode) {
    std::stable_sort(rows.begin(), rows.end(), [](const GrowthRow& a, const GrowthRow& b) { return a.n < b.n; });
    const std::size_t first = rows.size() / 2;
    if (rows.size() - first < 2) throw std::domain_error("fit_growth: need at least two rows in the fit window");
    double sx = 0, sy = 0;
    const double cnt = static_cast<double>(rows.size() - first);
    std::vector<double> xs, ys;
    for (std::size_t i = first; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (!(r.log_count >= 0.0)) throw std::domain_error("fit_growth: counts must be >= 1");
        if (mode == GrowthMode::Polynomial && r.n < 1) throw std::domain_error("fit_growth: polynomial fit needs n >= 1");
        const double x = mode == GrowthMode::Polynomial ? std::log(static_cast<double>(r.n)) : static_cast<double>(r.n);
        xs.push_back(x);
        ys.push_back(r.log_count);
        sx += x;
        sy += r.log_count;
    }
    const double mx = sx / cnt, my = sy / cnt;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0.0) throw std::domain_error("fit_growth: fit window needs distinct n");
    GrowthFit fit;
    fit.mode = mode;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ss_res += e * e;
    }
    fit.r2 = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
    fit.window = {rows[first].n, rows.back().n};
    fit.rows = std::move(rows);
    return fit;
}

}  // namespace hypdyn
