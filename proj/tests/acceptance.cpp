// Acceptance suite: one PASS/FAIL line per criterion, with measured runtime.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <string>

#include "hypdyn/entropy.hpp"
#include "hypdyn/hyperspace.hpp"
#include "hypdyn/lab.hpp"
#include "hypdyn/lattice.hpp"
#include "hypdyn/symbolic.hpp"
#include "oracle.hpp"

using namespace hypdyn;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = limit_s <= 0 || dt < limit_s;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::string timing = std::to_string(dt);
    timing = timing.substr(0, timing.find('.') + 3) + "s";
    if (limit_s > 0) timing += " (limit " + std::to_string(static_cast<int>(limit_s)) + "s)";
    std::printf("%s %2d %-28s %s  %s\n", pass ? "PASS" : "FAIL", id, name, timing.c_str(), o.detail.c_str());
    std::fflush(stdout);
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

lab::RunResult run_default(const std::string& scenario) {
    const fs::path out = fs::temp_directory_path() / ("hypdyn_acceptance_" + scenario);
    fs::remove_all(out);
    return lab::run(scenario, lab::default_config(scenario), {out.string(), std::nullopt, default_threads()});
}

const lab::Verdict* verdict(const lab::RunResult& r, const std::string& name) {
    for (const auto& v : r.verdicts)
        if (v.name == name) return &v;
    return nullptr;
}

Outcome verdicts(const lab::RunResult& r, std::initializer_list<const char*> names) {
    Outcome o{true, ""};
    for (const char* n : names) {
        const auto* v = verdict(r, n);
        if (!v) return {false, std::string("missing verdict ") + n};
        o.pass = o.pass && v->pass;
        o.detail += (o.detail.empty() ? "" : "; ") + std::string(n) + ": " + v->detail;
    }
    return o;
}

// Criterion 1 -----------------------------------------------------------------

Outcome exact_sparse_counts() {
    long checked = 0;
    for (int k = 1; k <= 3; ++k)
        for (int m = 1; m <= 20; ++m) {
            ++checked;
            if (complexity_enumerated({FamilyKind::AtMostOnePerTrack, k}, m) != boost::multiprecision::pow(BigInt(m + 1), k))
                return {false, "closed form differs at k=" + std::to_string(k) + " m=" + std::to_string(m)};
        }
    // Sampled: code every star piece with at most one tip per edge on the orbit
    // grid (plus the branch point so the set is never empty).
    const StarHomeo h(StarSpace(3), {0, 1, 2},
                      std::vector<EdgeMap>(3, EdgeMap::pwl({{0, 0}, {0.5, 0.25}, {0.75, 0.5}, {1, 1}})));
    const std::vector<StarPoint> base{{0, 0.5}, {1, 0.5}, {2, 0.5}};
    const int R = 8;
    const auto lattice = wandering_lattice(h, base, R);
    for (int k = 1; k <= 3; ++k) {
        std::vector<SymbolWindow> windows;
        const int choices = 2 * R + 2;  // none, or r in [-R, R]
        int total = 1;
        for (int j = 0; j < k; ++j) total *= choices;
        for (int code = 0; code < total; ++code) {
            std::vector<StarPoint> pts{branch_point()};
            int c = code;
            for (int j = 0; j < k; ++j, c /= choices)
                if (c % choices) pts.push_back(lattice.at(j, c % choices - 1 - R));
            const SymbolWindow full = code_set(lattice, make_point_set(h.space(), pts));
            SymbolWindow w(k, full.lo, full.hi);
            for (int j = 0; j < k; ++j)
                for (long n = full.lo; n <= full.hi; ++n) w.set(j, n, full.bit(j, n));
            windows.push_back(std::move(w));
        }
        for (int m = 1; m <= 8; ++m) {
            ++checked;
            const auto got = words_sampled(windows, m).size();
            if (BigInt(got) != complexity_enumerated({FamilyKind::AtMostOnePerTrack, k}, m) ||
                (k * m <= 20 && got != oracle::count_sparse_words(k, m)))
                return {false, "sampled count " + std::to_string(got) + " at k=" + std::to_string(k) + " m=" + std::to_string(m)};
        }
    }
    return {true, std::to_string(checked) + " exact counts ((m+1)^k, sampled = enumerated for m <= 8)"};
}

// Criterion 2 -----------------------------------------------------------------

Outcome full_shift_counts() {
    double worst = 0.0;
    for (int k = 1; k <= 3; ++k) {
        std::map<long, BigInt> counts;
        for (int m = 1; m <= 12; ++m) {
            const BigInt c = complexity_enumerated({FamilyKind::FullShift, k}, m);
            if (c != boost::multiprecision::pow(BigInt(2), k * m)) return {false, "count differs at k=" + std::to_string(k)};
            counts[m] = c;
        }
        const GrowthFit f = entropy_from_complexity(counts, GrowthMode::Exponential);
        worst = std::max(worst, std::abs(f.slope - k * std::log(2.0)));
    }
    return {worst <= 1e-9, "max |rate - k log 2| = " + fmt(worst)};
}

// Criterion 3 -----------------------------------------------------------------

Outcome polynomial_exponent() {
    double worst = 0.0;
    std::string detail;
    for (int k = 1; k <= 4; ++k) {
        std::map<long, BigInt> counts;
        for (long m = 64; m <= 1024; ++m) counts[m] = complexity_enumerated({FamilyKind::AtMostOnePerTrack, k}, static_cast<int>(m));
        const GrowthFit f = entropy_from_complexity(counts, GrowthMode::Polynomial);
        worst = std::max(worst, std::abs(f.slope - k));
        detail += (detail.empty() ? "" : ", ") + ("k=" + std::to_string(k) + ": " + fmt(f.slope));
    }
    return {worst <= 0.05, detail};
}

// Criterion 8 -----------------------------------------------------------------

Outcome hausdorff_oracle() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double h = 1e-4;
    const StarSpace S3(std::vector<double>{1.0, 0.7, 1.3});
    const StarSpace I(1), I2(2);
    auto sub = [&](const StarSpace& X) -> Subcontinuum {
        if (u(rng) < 0.5) {
            const int e = static_cast<int>(rng() % static_cast<unsigned>(X.k()));
            double a = u(rng) * X.length(e), b = u(rng) * X.length(e);
            if (a > b) std::swap(a, b);
            return make_arc(X, e, a, b);
        }
        std::vector<double> r;
        for (int j = 0; j < X.k(); ++j) r.push_back(u(rng) < 0.3 ? 0.0 : u(rng) * X.length(j));
        return make_star_piece(X, r);
    };
    auto fin = [&](const StarSpace& X) {
        std::vector<StarPoint> p;
        const int n = 1 + static_cast<int>(rng() % 6);
        for (int i = 0; i < n; ++i) {
            const int e = static_cast<int>(rng() % static_cast<unsigned>(X.k()));
            p.push_back(canonicalize(X, {e, u(rng) * X.length(e)}));
        }
        return make_point_set(X, p);
    };
    auto uni = [&](const StarSpace& X) {
        const double lo = X.k() == 1 ? 0.0 : -X.length(0), hi = X.k() == 1 ? X.length(0) : X.length(1);
        const int n = 1 + static_cast<int>(rng() % 3);
        std::vector<double> v;
        for (int i = 0; i < 2 * n; ++i) v.push_back(lo + u(rng) * (hi - lo));
        std::sort(v.begin(), v.end());
        std::vector<std::pair<double, double>> arcs;
        for (int i = 0; i < n; ++i) arcs.emplace_back(v[2 * i], u(rng) < 0.2 ? v[2 * i] : v[2 * i + 1]);
        return make_arc_union(X, arcs);
    };
    double worst = 0.0;
    int pairs = 0;
    auto check = [&](const StarSpace& X, const auto& a, const auto& b) {
        worst = std::max(worst, std::abs(hausdorff(X, a, b) - oracle::hausdorff(X, a, b, h)));
        ++pairs;
    };
    // Nine representation pairs on the interval, four on the 3-star, two-edge unions.
    while (pairs < 1000) {
        check(I, sub(I), sub(I));
        check(I, sub(I), fin(I));
        check(I, sub(I), uni(I));
        check(I, fin(I), sub(I));
        check(I, fin(I), fin(I));
        check(I, fin(I), uni(I));
        check(I, uni(I), sub(I));
        check(I, uni(I), fin(I));
        check(I, uni(I), uni(I));
        check(S3, sub(S3), sub(S3));
        check(S3, sub(S3), fin(S3));
        check(S3, fin(S3), sub(S3));
        check(S3, fin(S3), fin(S3));
        check(I2, uni(I2), uni(I2));
        check(I2, uni(I2), fin(I2));
        check(I2, fin(I2), uni(I2));
    }
    return {worst <= 2e-4, std::to_string(pairs) + " pairs, max deviation " + fmt(worst)};
}

// Criterion 9 -----------------------------------------------------------------

Outcome inequality_suite(const lab::RunResult& cn_run) {
    const StarSpace I(1);
    const StarHomeo sq(I, {0}, {EdgeMap::power(2.0)});
    long cells = 0;
    std::string bad;

    // Points and arcs on fixed uniform grids, generic greedy.
    DynSystem<StarPoint> pts;
    pts.metric = [&](const StarPoint& a, const StarPoint& b) { return distance(I, a, b); };
    pts.map = [&](const StarPoint& a) { return apply(sq, a); };
    pts.embed = [](const StarPoint& a) { return std::vector<double>{a.t}; };
    std::vector<StarPoint> grid;
    for (int i = 0; i <= 400; ++i) grid.push_back(canonicalize(I, {0, i / 400.0}));
    DynSystem<ArcUnion> arcs;
    arcs.metric = [&](const ArcUnion& a, const ArcUnion& b) { return hausdorff(I, a, b); };
    arcs.map = [&](const ArcUnion& a) { return induced_apply(sq, a); };
    std::vector<ArcUnion> agrid;
    for (int a = 0; a <= 24; ++a)
        for (int b = a; b <= 24; ++b) agrid.push_back(make_arc_union(I, {{a / 24.0, b / 24.0}}));

    const std::vector<double> eps{0.2, 0.1, 0.05, 0.025};
    const std::vector<int> ns{1, 2, 4, 8, 16};
    auto suite = [&](const auto& sys, const auto& cands, const char* what) {
        std::vector<std::vector<std::size_t>> sep(eps.size(), std::vector<std::size_t>(ns.size()));
        for (std::size_t e = 0; e < eps.size(); ++e)
            for (std::size_t i = 0; i < ns.size(); ++i) {
                sep[e][i] = greedy_separated(sys, cands, ns[i], eps[e]).count();
                const auto span = greedy_spanning(sys, cands, cands, ns[i], eps[e]);
                ++cells;
                if (span > sep[e][i] && bad.empty()) bad = std::string(what) + ": span > sep";
                if (i && sep[e][i] < sep[e][i - 1] && bad.empty()) bad = std::string(what) + ": sep decreased in n";
                if (e && sep[e][i] < sep[e - 1][i] && bad.empty()) bad = std::string(what) + ": sep increased with eps";
            }
    };
    suite(pts, grid, "points");
    suite(arcs, agrid, "arcs");

    // Lattice counts with a fixed candidate window.
    const LatticeAxis ax = make_axis(sq, {0, 0.5}, -40, 8, 32, true, true);
    for (auto [kind, q] : {std::pair{LatticeKind::Arcs, 1}, std::pair{LatticeKind::FiniteSets, 2}}) {
        LatticeProblem p;
        p.kind = kind;
        p.q = q;
        p.axes = {&ax};
        std::uint64_t prev_eps_row[5] = {0, 0, 0, 0, 0};
        for (double e : {0.125, 0.0625, 0.03125}) {
            std::uint64_t prev = 0;
            int i = 0;
            for (int n : {4, 8, 16, 24, 32}) {
                const auto c = lattice_separated(p, n, e).count;
                ++cells;
                if (c < prev && bad.empty()) bad = std::string("lattice ") + to_string(kind) + ": decreased in n";
                if (c < prev_eps_row[i] && bad.empty()) bad = std::string("lattice ") + to_string(kind) + ": increased with eps";
                prev = c;
                prev_eps_row[i++] = c;
            }
        }
    }

    const auto* factor = verdict(cn_run, "factor_inequality");
    if (!factor) return {false, "interval_Cn run has no factor verdict"};
    return {bad.empty() && factor->pass,
            std::to_string(cells) + " cells span <= sep and monotone" + (bad.empty() ? "" : " [" + bad + "]") +
                "; boundary factor: " + factor->detail};
}

// Criterion 11 ----------------------------------------------------------------

Outcome cylinder_identity() {
    long checked = 0;
    for (int k = 1; k <= 3; ++k)
        for (int n = 0; n <= 4; ++n)
            for (int l = 1; l <= 8; ++l) {
                const int len = 2 * n + l;
                if (cylinder_join_count({FamilyKind::AtMostOnePerTrack, k}, n, l) != boost::multiprecision::pow(BigInt(len + 1), k))
                    return {false, "sparse family differs at n=" + std::to_string(n) + " l=" + std::to_string(l)};
                if (cylinder_join_count({FamilyKind::FullShift, k}, n, l) != boost::multiprecision::pow(BigInt(2), k * len))
                    return {false, "full shift differs at n=" + std::to_string(n) + " l=" + std::to_string(l)};
                checked += 2;
            }
    const auto r = run_default("cylinder_check");
    const auto o = verdicts(r, {"join_count_identity", "sampled_join_count"});
    return {o.pass, std::to_string(checked) + " family cells equal complexity at 2n+l; " + o.detail};
}

}  // namespace

int main() {
    std::printf("threads: %d\n", default_threads());
    report(1, "exact_symbolic_counts", 1.0, exact_sparse_counts);
    report(2, "full_shift_counts", 1.0, full_shift_counts);
    report(3, "polynomial_exponent_Y_E", 1.0, polynomial_exponent);
    report(4, "star_hpol_k3", 120.0, [] { return verdicts(run_default("star_hpol"), {"y_exponent"}); });
    report(5, "interval_C", 60.0, [] { return verdicts(run_default("interval_C"), {"arcs_exponent", "points_exponent"}); });
    lab::RunResult cn;
    report(6, "interval_C2_and_F4", 180.0, [&] {
        cn = run_default("interval_Cn");
        return verdicts(cn, {"cn_exponent", "fn_exponent"});
    });
    report(7, "structural_equalities", 0.0, [] {
        return verdicts(run_default("isometry_check"),
                        {"endpoint_conjugacy", "boundary_conjugacy", "boundary_isometry_matched"});
    });
    report(8, "hausdorff_oracle", 0.0, hausdorff_oracle);
    report(9, "inequality_suite", 0.0, [&] { return inequality_suite(cn); });
    report(10, "product_power", 120.0,
           [] { return verdicts(run_default("product_power"), {"product_formula", "power_formula"}); });
    report(11, "cylinder_identity", 0.0, cylinder_identity);
    std::printf("%d of 11 criteria failed\n", failures);
    return failures;
}
