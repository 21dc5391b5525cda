#include "hypdyn/entropy.hpp"

#include <algorithm>

namespace hypdyn {

EntropyEstimate estimate_entropy(const CountFn& count, const std::vector<double>& eps_list,
                                 const std::vector<long>& n_list, GrowthMode mode, int threads, double r2_min) {
    if (eps_list.empty() || n_list.empty()) throw std::domain_error("estimate_entropy: empty eps or n list");
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0)) throw std::domain_error("estimate_entropy: eps must be positive");
        if (i > 0 && !(eps_list[i] < eps_list[i - 1])) throw std::domain_error("estimate_entropy: eps list must decrease");
    }
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        if (n_list[i] < 1) throw std::domain_error("estimate_entropy: n must be >= 1");
        if (i > 0 && !(n_list[i] > n_list[i - 1])) throw std::domain_error("estimate_entropy: n list must increase");
    }
    const std::size_t cells = eps_list.size() * n_list.size();
    std::vector<double> counts(cells, 0.0);
    parallel_for(cells, threads, [&](std::size_t c) {
        counts[c] = count(n_list[c % n_list.size()], eps_list[c / n_list.size()]);
    });

    EntropyEstimate est;
    for (std::size_t e = 0; e < eps_list.size(); ++e) {
        std::vector<GrowthRow> rows;
        for (std::size_t i = 0; i < n_list.size(); ++i) {
            const double c = counts[e * n_list.size() + i];
            rows.push_back({n_list[i], eps_list[e], c, c >= 1.0 ? std::log(c) : -1.0});
        }
        est.per_epsilon.emplace_back(eps_list[e], fit_growth(std::move(rows), mode));
    }
    const std::pair<double, GrowthFit>* chosen = nullptr;
    for (const auto& pe : est.per_epsilon)
        if (pe.second.r2 >= r2_min) chosen = &pe;  // eps decreases, so the last hit is the smallest eps
    est.stable = chosen != nullptr;
    if (!chosen) {
        chosen = &est.per_epsilon.front();
        for (const auto& pe : est.per_epsilon)
            if (pe.second.r2 > chosen->second.r2) chosen = &pe;
    }
    est.epsilon = chosen->first;
    est.fit = chosen->second;
    return est;
}

ProductPowerReport product_power_check(const CountFn& base, const CountFn& product, const CountFn& power, int k,
                                       const std::vector<double>& eps_list, const std::vector<long>& n_list,
                                       GrowthMode mode, int threads) {
    if (k < 1) throw std::domain_error("product_power_check: k must be >= 1");
    ProductPowerReport r;
    r.k = k;
    r.base = estimate_entropy(base, eps_list, n_list, mode, threads);
    r.product = estimate_entropy(product, eps_list, n_list, mode, threads);
    r.power = estimate_entropy(power, eps_list, n_list, mode, threads);
    return r;
}

}  // namespace hypdyn
