#pragma once

// Separated and spanning sets for the dynamic metric
//   d_n(x, y) = max_{0 <= k < n} d(f^k x, f^k y)
// over a finite candidate list, and growth fits of their sizes.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hypdyn/growth.hpp"
#include "hypdyn/parallel.hpp"

namespace hypdyn {

template <class T>
struct DynSystem {
    std::function<double(const T&, const T&)> metric;
    std::function<T(const T&)> map;
    /// Optional coordinates with |e_i(x) - e_i(y)| <= metric(x, y). When set,
    /// greedy scans only compare candidates in neighbouring eps-cells.
    std::function<std::vector<double>(const T&)> embed;
};

template <class T>
double dyn_distance(const DynSystem<T>& sys, const T& x, const T& y, int n) {
    if (n < 1) throw std::domain_error("dyn_distance: n must be >= 1");
    double d = sys.metric(x, y);
    T a = x, b = y;
    for (int k = 1; k < n; ++k) {
        a = sys.map(a);
        b = sys.map(b);
        d = std::max(d, sys.metric(a, b));
    }
    return d;
}

/// Product system on tuples of any length, with the max metric.
template <class T>
DynSystem<std::vector<T>> product_system(const DynSystem<T>& base) {
    DynSystem<std::vector<T>> out;
    out.metric = [base](const std::vector<T>& x, const std::vector<T>& y) {
        double d = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, base.metric(x[i], y[i]));
        return d;
    };
    out.map = [base](const std::vector<T>& x) {
        std::vector<T> y;
        y.reserve(x.size());
        for (const auto& xi : x) y.push_back(base.map(xi));
        return y;
    };
    if (base.embed) {
        out.embed = [base](const std::vector<T>& x) {
            std::vector<double> e;
            for (const auto& xi : x) {
                const auto ei = base.embed(xi);
                e.insert(e.end(), ei.begin(), ei.end());
            }
            return e;
        };
    }
    return out;
}

/// Same space, map replaced by its k-th iterate.
template <class T>
DynSystem<T> power_system(const DynSystem<T>& base, int k) {
    if (k < 1) throw std::domain_error("power_system: k must be >= 1");
    DynSystem<T> out = base;
    out.map = [base, k](const T& x) {
        T y = x;
        for (int i = 0; i < k; ++i) y = base.map(y);
        return y;
    };
    return out;
}

namespace detail {

template <class T>
std::vector<std::vector<T>> orbits(const DynSystem<T>& sys, const std::vector<T>& xs, int n) {
    std::vector<std::vector<T>> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out[i].reserve(static_cast<std::size_t>(n));
        out[i].push_back(xs[i]);
        for (int k = 1; k < n; ++k) out[i].push_back(sys.map(out[i].back()));
    }
    return out;
}

template <class T>
double orbit_distance(const DynSystem<T>& sys, const std::vector<T>& a, const std::vector<T>& b, double stop_at) {
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        d = std::max(d, sys.metric(a[k], b[k]));
        if (d >= stop_at) break;
    }
    return d;
}

// Accepted points bucketed by eps-cells of the step-0 embedding.
class CellIndex {
public:
    CellIndex(bool active, double eps) : active_(active), eps_(eps) {}

    std::vector<long> cell(const std::vector<double>& e) const {
        std::vector<long> c(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) c[i] = static_cast<long>(std::floor(e[i] / eps_));
        return c;
    }
    void add(const std::vector<long>& c, std::size_t id) {
        if (active_) cells_[c].push_back(id); else all_.push_back(id);
    }
    template <class F>
    bool any_near(const std::vector<long>& c, F&& pred) const {
        if (!active_) {
            for (auto id : all_)
                if (pred(id)) return true;
            return false;
        }
        std::vector<long> probe = c;
        return scan(probe, 0, c, pred);
    }

private:
    template <class F>
    bool scan(std::vector<long>& probe, std::size_t dim, const std::vector<long>& c, F& pred) const {
        if (dim == c.size()) {
            auto it = cells_.find(probe);
            if (it == cells_.end()) return false;
            for (auto id : it->second)
                if (pred(id)) return true;
            return false;
        }
        for (long d = -1; d <= 1; ++d) {
            probe[dim] = c[dim] + d;
            if (scan(probe, dim + 1, c, pred)) return true;
        }
        probe[dim] = c[dim];
        return false;
    }

    bool active_;
    double eps_;
    std::map<std::vector<long>, std::vector<std::size_t>> cells_;
    std::vector<std::size_t> all_;
};

}  // namespace detail

struct SeparatedSet {
    std::vector<std::size_t> members;  // indices into the candidate list
    std::size_t count() const { return members.size(); }
};

/// First-fit maximal (n, eps)-separated subset (pairwise d_n >= eps) in candidate order.
template <class T>
SeparatedSet greedy_separated(const DynSystem<T>& sys, const std::vector<T>& candidates, int n, double eps) {
    if (!(eps > 0.0)) throw std::domain_error("greedy_separated: eps must be positive");
    if (n < 1) throw std::domain_error("greedy_separated: n must be >= 1");
    SeparatedSet out;
    if (candidates.empty()) return out;
    const auto orb = detail::orbits(sys, candidates, n);
    detail::CellIndex index(static_cast<bool>(sys.embed), eps);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto c = sys.embed ? index.cell(sys.embed(candidates[i])) : std::vector<long>{};
        const bool close = index.any_near(c, [&](std::size_t j) {
            return detail::orbit_distance(sys, orb[i], orb[out.members[j]], eps) < eps;
        });
        if (!close) {
            index.add(c, out.members.size());
            out.members.push_back(i);
        }
    }
    return out;
}

/// Size of a greedily built (n, eps)-spanning set: every target within d_n <= eps
/// of a chosen candidate. Each uncovered target (in order) adds the first
/// candidate covering it; centres made redundant are then removed, last first.
template <class T>
std::size_t greedy_spanning(const DynSystem<T>& sys, const std::vector<T>& candidates, const std::vector<T>& targets,
                            int n, double eps, const std::function<std::string(std::size_t)>& describe_target = {}) {
    if (!(eps > 0.0)) throw std::domain_error("greedy_spanning: eps must be positive");
    if (n < 1) throw std::domain_error("greedy_spanning: n must be >= 1");
    const auto corb = detail::orbits(sys, candidates, n);
    const auto torb = detail::orbits(sys, targets, n);
    auto covers = [&](std::size_t c, std::size_t t) {
        return detail::orbit_distance(sys, corb[c], torb[t], std::nextafter(eps, INFINITY)) <= eps;
    };
    std::vector<std::size_t> centres;
    for (std::size_t t = 0; t < targets.size(); ++t) {
        bool covered = false;
        for (auto c : centres)
            if (covers(c, t)) { covered = true; break; }
        if (covered) continue;
        std::size_t pick = candidates.size();
        for (std::size_t c = 0; c < candidates.size(); ++c)
            if (covers(c, t)) { pick = c; break; }
        if (pick == candidates.size()) {
            const std::string name = describe_target ? describe_target(t) : "#" + std::to_string(t);
            throw std::domain_error("greedy_spanning: no candidate within eps of target " + name);
        }
        centres.push_back(pick);
    }
    // Reverse delete.
    std::vector<int> cover_count(targets.size(), 0);
    std::vector<std::vector<std::size_t>> covered_by(centres.size());
    for (std::size_t i = 0; i < centres.size(); ++i)
        for (std::size_t t = 0; t < targets.size(); ++t)
            if (covers(centres[i], t)) {
                covered_by[i].push_back(t);
                ++cover_count[t];
            }
    std::size_t kept = centres.size();
    for (std::size_t i = centres.size(); i-- > 0;) {
        bool redundant = true;
        for (auto t : covered_by[i])
            if (cover_count[t] < 2) { redundant = false; break; }
        if (!redundant) continue;
        for (auto t : covered_by[i]) --cover_count[t];
        --kept;
    }
    return kept;
}

// ---------------------------------------------------------------------------
// Estimation

using CountFn = std::function<double(long n, double eps)>;

struct EntropyEstimate {
    GrowthFit fit;          // the reported fit
    double epsilon = 0.0;   // the eps it belongs to
    bool stable = false;    // false: no eps reached the R^2 threshold, fit is the best R^2 one
    std::vector<std::pair<double, GrowthFit>> per_epsilon;
};

/// Fits count(n, eps) against n for each eps (cells evaluated on `threads`
/// workers) and reports the smallest eps whose fit has R^2 >= r2_min.
EntropyEstimate estimate_entropy(const CountFn& count, const std::vector<double>& eps_list,
                                 const std::vector<long>& n_list, GrowthMode mode, int threads = 1,
                                 double r2_min = 0.98);

template <class T>
EntropyEstimate estimate_entropy(const DynSystem<T>& sys, const std::function<std::vector<T>(long n)>& generator,
                                 const std::vector<double>& eps_list, const std::vector<long>& n_list,
                                 GrowthMode mode, int threads = 1) {
    return estimate_entropy(
        [&](long n, double eps) {
            return static_cast<double>(greedy_separated(sys, generator(n), static_cast<int>(n), eps).count());
        },
        eps_list, n_list, mode, threads);
}

struct ProductPowerReport {
    int k = 2;
    EntropyEstimate base;
    EntropyEstimate product;
    EntropyEstimate power;
    bool stable() const { return base.stable && product.stable && power.stable; }
    double product_gap() const { return product.fit.slope - k * base.fit.slope; }
    double power_gap() const { return power.fit.slope - base.fit.slope; }
};

ProductPowerReport product_power_check(const CountFn& base, const CountFn& product, const CountFn& power, int k,
                                       const std::vector<double>& eps_list, const std::vector<long>& n_list,
                                       GrowthMode mode, int threads = 1);

}  // namespace hypdyn
