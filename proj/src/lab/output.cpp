#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "hypdyn/lab.hpp"

namespace hypdyn::lab {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json fit_to_json(const GrowthFit& fit) {
    return json{{"slope", fit.slope},
                {"intercept", fit.intercept},
                {"r2", fit.r2},
                {"window", json::array({fit.window.first, fit.window.second})},
                {"mode", to_string(fit.mode)}};
}

json estimate_to_json(const EntropyEstimate& est) {
    json per = json::array();
    for (const auto& [eps, fit] : est.per_epsilon) {
        json f = fit_to_json(fit);
        f["epsilon"] = eps;
        per.push_back(std::move(f));
    }
    return json{{"fit", fit_to_json(est.fit)}, {"epsilon", est.epsilon}, {"stable", est.stable}, {"per_epsilon", per}};
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc), width_(header.size()) {
    if (!out_) throw std::runtime_error("cannot write " + path);
    row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw std::logic_error("CsvWriter: row width mismatch in " + path_);
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
    if (!out_) throw std::runtime_error("write failed: " + path_);
}

void append_sep_rows(CsvWriter& csv, const EntropyEstimate& est, const std::string& grid, std::uint64_t seed) {
    for (const auto& [eps, fit] : est.per_epsilon)
        for (const auto& r : fit.rows)
            csv.row({std::to_string(r.n), format_double(eps), format_double(r.count), grid, std::to_string(seed)});
}

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace hypdyn::lab
