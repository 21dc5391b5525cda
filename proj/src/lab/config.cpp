#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hypdyn/errors.hpp"
#include "hypdyn/lab.hpp"

namespace hypdyn::lab {

using nlohmann::json;

Obj::Obj(const json& j, std::string pointer) : j_(j), ptr_(std::move(pointer)) {
    if (!j_.is_object()) throw ConfigError(ptr_, "expected an object");
}

const json* Obj::find(const std::string& key, bool required) {
    used_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) {
        if (required) throw ConfigError(at(key), "missing required value");
        return nullptr;
    }
    return &*it;
}

double Obj::number(const std::string& key, std::optional<double> def, double lo, double hi) {
    const json* v = find(key, !def);
    if (!v) return *def;
    if (!v->is_number()) throw ConfigError(at(key), "expected a number");
    const double x = v->get<double>();
    if (!std::isfinite(x) || x < lo || x > hi)
        throw ConfigError(at(key), "value out of range [" + format_double(lo) + ", " + format_double(hi) + "]");
    return x;
}

long Obj::integer(const std::string& key, std::optional<long> def, long lo, long hi) {
    const json* v = find(key, !def);
    if (!v) return *def;
    if (!v->is_number_integer()) throw ConfigError(at(key), "expected an integer");
    const long x = v->get<long>();
    if (x < lo || x > hi)
        throw ConfigError(at(key), "value out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return x;
}

std::uint64_t Obj::u64(const std::string& key, std::optional<std::uint64_t> def) {
    const json* v = find(key, !def);
    if (!v) return *def;
    if (!v->is_number_unsigned()) throw ConfigError(at(key), "expected an unsigned 64-bit integer");
    return v->get<std::uint64_t>();
}

bool Obj::boolean(const std::string& key, std::optional<bool> def) {
    const json* v = find(key, !def);
    if (!v) return *def;
    if (!v->is_boolean()) throw ConfigError(at(key), "expected true or false");
    return v->get<bool>();
}

std::string Obj::string(const std::string& key, std::optional<std::string> def,
                        const std::vector<std::string>& allowed) {
    const json* v = find(key, !def);
    if (!v) return *def;
    if (!v->is_string()) throw ConfigError(at(key), "expected a string");
    auto s = v->get<std::string>();
    if (!allowed.empty() && std::find(allowed.begin(), allowed.end(), s) == allowed.end()) {
        std::string list;
        for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
        throw ConfigError(at(key), "expected one of: " + list);
    }
    return s;
}

std::vector<double> Obj::numbers(const std::string& key, std::optional<std::vector<double>> def) {
    const json* v = find(key, !def);
    if (!v) return *def;
    if (!v->is_array() || v->empty()) throw ConfigError(at(key), "expected a nonempty array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v->size(); ++i) {
        if (!(*v)[i].is_number()) throw ConfigError(at(key) + "/" + std::to_string(i), "expected a number");
        out.push_back((*v)[i].get<double>());
    }
    return out;
}

std::vector<long> Obj::integers(const std::string& key, std::optional<std::vector<long>> def) {
    const json* v = find(key, !def);
    if (!v) return *def;
    if (!v->is_array() || v->empty()) throw ConfigError(at(key), "expected a nonempty array of integers");
    std::vector<long> out;
    for (std::size_t i = 0; i < v->size(); ++i) {
        if (!(*v)[i].is_number_integer()) throw ConfigError(at(key) + "/" + std::to_string(i), "expected an integer");
        out.push_back((*v)[i].get<long>());
    }
    return out;
}

const json& Obj::value(const std::string& key) { return *find(key, true); }

Obj Obj::object(const std::string& key) { return Obj(value(key), at(key)); }

void Obj::finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
        if (!used_.count(it.key())) throw ConfigError(at(it.key()), "unknown key");
}

// ---------------------------------------------------------------------------

EdgeMap edge_map_from_json(const json& j, const std::string& pointer) {
    Obj o(j, pointer);
    const auto family = o.string("family", std::nullopt, {"power", "pwl"});
    if (family == "power") {
        const double p = o.number("p", std::nullopt, 1e-6, 1e6);
        o.finish();
        return EdgeMap::power(p);
    }
    const json& pts = o.value("points");
    if (!pts.is_array()) throw ConfigError(o.at("points"), "expected an array of [s, t] pairs");
    std::vector<std::pair<double, double>> v;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& p = pts[i];
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            throw ConfigError(o.at("points") + "/" + std::to_string(i), "expected a pair of numbers");
        v.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    o.finish();
    try {
        return EdgeMap::pwl(std::move(v));
    } catch (const std::domain_error& e) {
        throw ConfigError(o.at("points"), e.what());
    }
}

StarHomeo homeo_from_json(const json& j, const std::string& pointer) {
    Obj o(j, pointer);
    const int k = static_cast<int>(o.integer("k", 1, 1, 64));
    std::vector<double> lengths = o.numbers("lengths", std::vector<double>(static_cast<std::size_t>(k), 1.0));
    if (static_cast<int>(lengths.size()) != k) throw ConfigError(o.at("lengths"), "need one length per edge");
    std::vector<long> perm_l(static_cast<std::size_t>(k));
    std::iota(perm_l.begin(), perm_l.end(), 0L);
    perm_l = o.integers("perm", perm_l);
    if (static_cast<int>(perm_l.size()) != k) throw ConfigError(o.at("perm"), "need one image per edge");
    std::vector<EdgeMap> maps;
    const bool one = o.has("map");
    const bool many = o.has("maps");
    if (one == many) throw ConfigError(pointer, "give exactly one of 'map' or 'maps'");
    if (one) {
        const auto m = edge_map_from_json(o.value("map"), o.at("map"));
        maps.assign(static_cast<std::size_t>(k), m);
    } else {
        const json& arr = o.value("maps");
        if (!arr.is_array() || static_cast<int>(arr.size()) != k)
            throw ConfigError(o.at("maps"), "need an array with one edge map per edge");
        for (std::size_t i = 0; i < arr.size(); ++i)
            maps.push_back(edge_map_from_json(arr[i], o.at("maps") + "/" + std::to_string(i)));
    }
    o.finish();
    std::vector<int> perm(perm_l.begin(), perm_l.end());
    try {
        return StarHomeo(StarSpace(std::move(lengths)), std::move(perm), std::move(maps));
    } catch (const std::domain_error& e) {
        throw ConfigError(pointer, e.what());
    }
}

}  // namespace hypdyn::lab
