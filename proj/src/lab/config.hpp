#pragma once

// Typed access to one JSON object of a scenario config. Every read records
// the key; finish() rejects keys nobody asked for.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace hypdyn::lab {

class Obj {
public:
    Obj(const nlohmann::json& j, std::string pointer);

    const std::string& pointer() const { return ptr_; }
    std::string at(const std::string& key) const { return ptr_ + "/" + key; }
    bool has(const std::string& key) const { return j_.contains(key); }

    double number(const std::string& key, std::optional<double> def = {}, double lo = -1e300, double hi = 1e300);
    long integer(const std::string& key, std::optional<long> def = {}, long lo = -(1L << 40), long hi = 1L << 40);
    std::uint64_t u64(const std::string& key, std::optional<std::uint64_t> def = {});
    bool boolean(const std::string& key, std::optional<bool> def = {});
    std::string string(const std::string& key, std::optional<std::string> def = {},
                       const std::vector<std::string>& allowed = {});
    std::vector<double> numbers(const std::string& key, std::optional<std::vector<double>> def = {});
    std::vector<long> integers(const std::string& key, std::optional<std::vector<long>> def = {});
    /// Raw value; required.
    const nlohmann::json& value(const std::string& key);
    Obj object(const std::string& key);

    /// Throws for any key that was never read.
    void finish() const;

private:
    const nlohmann::json* find(const std::string& key, bool required);

    const nlohmann::json& j_;
    std::string ptr_;
    std::set<std::string> used_;
};

}  // namespace hypdyn::lab
