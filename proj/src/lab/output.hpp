#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypdyn/entropy.hpp"

namespace hypdyn::lab {

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);
    void row(const std::vector<std::string>& cells);

private:
    std::string path_;
    std::ofstream out_;
    std::size_t width_;
};

/// Sep table rows (n, epsilon, count, grid, seed) for every cell of an estimate.
void append_sep_rows(CsvWriter& csv, const EntropyEstimate& est, const std::string& grid, std::uint64_t seed);

void write_json(const std::string& path, const nlohmann::json& j);

}  // namespace hypdyn::lab
