#include <algorithm>
#include <cstdio>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "config.hpp"
#include "hypdyn/errors.hpp"
#include "hypdyn/hyperspace.hpp"
#include "hypdyn/lab.hpp"
#include "hypdyn/lattice.hpp"
#include "hypdyn/symbolic.hpp"
#include "output.hpp"

namespace hypdyn::lab {

namespace {

struct Ctx {
    std::string out;
    std::uint64_t seed = 1;
    int threads = 1;
    RunResult* result = nullptr;

    std::string file(const std::string& name) {
        result->files.push_back(name);
        return (std::filesystem::path(out) / name).string();
    }
    void verdict(const std::string& name, bool pass, const std::string& detail) {
        result->verdicts.push_back({name, pass, detail});
    }
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

// ---------------------------------------------------------------------------
// Shared config pieces

struct Estimation {
    std::vector<double> eps;
    std::vector<long> n;
    long back = 16;
    long forward = 8;
    double r2_min = 0.98;
};

Estimation read_estimation(Obj& o, std::vector<double> eps, std::vector<long> n, long back, long forward) {
    Estimation e;
    e.eps = o.numbers("epsilons", eps);
    for (std::size_t i = 0; i < e.eps.size(); ++i) {
        if (!(e.eps[i] > 0.0) || !(e.eps[i] < 1e6))
            throw ConfigError(o.at("epsilons") + "/" + std::to_string(i), "epsilon must be positive");
        if (i && !(e.eps[i] < e.eps[i - 1]))
            throw ConfigError(o.at("epsilons") + "/" + std::to_string(i), "epsilons must be strictly decreasing");
    }
    e.n = o.integers("n", n);
    if (e.n.size() < 4) throw ConfigError(o.at("n"), "need at least 4 values of n");
    for (std::size_t i = 0; i < e.n.size(); ++i) {
        if (e.n[i] < 1 || e.n[i] > 4096) throw ConfigError(o.at("n") + "/" + std::to_string(i), "n must lie in [1, 4096]");
        if (i && e.n[i] <= e.n[i - 1])
            throw ConfigError(o.at("n") + "/" + std::to_string(i), "n values must be strictly increasing");
    }
    e.back = o.integer("back", back, 0, 4096);
    e.forward = o.integer("forward", forward, 0, 4096);
    e.r2_min = o.number("r2_min", 0.98, 0.0, 1.0);
    return e;
}

struct Tolerance {
    double target = 0.0;
    double tol = 0.0;
};

Tolerance read_tolerance(Obj& expect, const std::string& key) {
    Obj o = expect.object(key);
    Tolerance t;
    t.target = o.number("exponent");
    t.tol = o.number("tol", std::nullopt, 0.0);
    o.finish();
    return t;
}

/// Base points for every edge: one number for all edges or one per edge.
std::vector<StarPoint> read_edge_bases(Obj& o, const StarHomeo& g, double def) {
    const int k = g.space().k();
    std::vector<double> t;
    if (o.has("base") && o.value("base").is_array()) {
        t = o.numbers("base");
        if (static_cast<int>(t.size()) != k) throw ConfigError(o.at("base"), "need one base point per edge");
    } else {
        t.assign(static_cast<std::size_t>(k), o.number("base", def));
    }
    std::vector<StarPoint> out;
    for (int j = 0; j < k; ++j) {
        const StarPoint p{j, t[static_cast<std::size_t>(j)] * g.space().length(j)};
        if (!(p.t > 0.0 && p.t < g.space().length(j)) || !is_wandering(g, p))
            throw ConfigError(o.at("base"), "base point on edge " + std::to_string(j) + " must be interior and wandering");
        out.push_back(p);
    }
    return out;
}

StarHomeo read_homeo(Obj& o, const std::string& key) { return homeo_from_json(o.value(key), o.at(key)); }

/// Raise h to its edge period so that every edge is invariant.
StarHomeo edge_fixing_power(const StarHomeo& h) {
    const int m = edge_period(h);
    return m == 1 ? h : h.power(m);
}

CountFn lattice_counter(const StarHomeo& g, std::vector<StarPoint> bases, LatticeKind kind, int q, int axes_per_base,
                        long back, long forward) {
    return [g, bases = std::move(bases), kind, q, axes_per_base, back, forward](long n, double eps) {
        std::vector<LatticeAxis> axes;
        axes.reserve(bases.size());
        for (const auto& b : bases) axes.push_back(make_axis(g, b, -(n + back), forward, static_cast<int>(n), true, true));
        LatticeProblem p;
        p.kind = kind;
        p.q = q;
        for (const auto& ax : axes)
            for (int r = 0; r < axes_per_base; ++r) p.axes.push_back(&ax);
        return static_cast<double>(lattice_separated(p, static_cast<int>(n), eps).count);
    };
}

EntropyEstimate run_estimate(const CountFn& count, const Estimation& e, int threads) {
    auto est = estimate_entropy(count, e.eps, e.n, GrowthMode::Polynomial, threads, e.r2_min);
    for (const auto& [eps, fit] : est.per_epsilon)
        for (const auto& r : fit.rows)
            if (!(r.count >= 1.0)) throw InvariantViolation("separated count >= 1", "count " + fmt(r.count));
    return est;
}

void exponent_verdict(Ctx& ctx, const std::string& name, const EntropyEstimate& est, const Tolerance& t) {
    const bool ok = est.stable && std::abs(est.fit.slope - t.target) <= t.tol;
    ctx.verdict(name, ok,
                "exponent " + fmt(est.fit.slope) + " at eps " + fmt(est.epsilon) + " (r2 " + fmt(est.fit.r2) +
                    (est.stable ? "" : ", unstable") + "), expected " + fmt(t.target) + " +- " + fmt(t.tol));
}

void write_estimate(Ctx& ctx, const std::string& stem, const EntropyEstimate& est,
                    const EntropyEstimate* uniform = nullptr) {
    CsvWriter csv(ctx.file("sep_" + stem + ".csv"), {"n", "epsilon", "count", "grid", "seed"});
    append_sep_rows(csv, est, "lattice", ctx.seed);
    if (uniform) append_sep_rows(csv, *uniform, "uniform", ctx.seed);
    write_json(ctx.file("fit_" + stem + ".json"), fit_to_json(est.fit));
    ctx.result->summary[stem] = estimate_to_json(est);
    if (uniform) ctx.result->summary[stem + "_uniform"] = estimate_to_json(*uniform);
}

struct UniformGrid {
    bool enabled = false;
    int N = 8;
    std::vector<double> eps;
    std::vector<long> n;
};

UniformGrid read_uniform_opt(Obj& parent) {
    UniformGrid u;
    if (!parent.has("uniform")) return u;
    Obj o = parent.object("uniform");
    u.enabled = true;
    u.N = static_cast<int>(o.integer("grid", 8, 1, 64));
    Estimation e = read_estimation(o, {0.125}, {2, 4, 8, 16}, 0, 0);
    u.eps = e.eps;
    u.n = e.n;
    o.finish();
    return u;
}

// Coordinates that move by at most the Hausdorff distance. Arcs only occur on
// the interval (k = 1), where a star piece is the arc [0, r].
std::vector<double> piece_embed(const Subcontinuum& s) {
    if (const auto* a = std::get_if<Arc>(&s)) return {a->a, a->b};
    const auto& p = std::get<StarPiece>(s);
    if (p.reaches.size() == 1) return {0.0, p.reaches[0]};
    return p.reaches;
}

DynSystem<Subcontinuum> subcontinuum_system(const StarHomeo& g, bool embed) {
    DynSystem<Subcontinuum> sys;
    const StarSpace X = g.space();
    sys.metric = [X](const Subcontinuum& a, const Subcontinuum& b) { return hausdorff(X, a, b); };
    sys.map = [g](const Subcontinuum& a) { return induced_apply(g, a); };
    if (embed) sys.embed = piece_embed;
    return sys;
}

// ---------------------------------------------------------------------------
// Scenarios

void star_hpol(Obj& cfg, Ctx& ctx) {
    const StarHomeo h = read_homeo(cfg, "homeo");
    if (h.space().k() < 2) throw ConfigError(cfg.at("homeo") + "/k", "star_hpol needs k >= 2");
    const StarHomeo g = edge_fixing_power(h);
    const auto bases = read_edge_bases(cfg, g, 0.5);
    const Estimation e = read_estimation(cfg, {}, {}, 16, 8);
    const UniformGrid u = read_uniform_opt(cfg);
    Obj expect = cfg.object("expect");
    const Tolerance tol = read_tolerance(expect, "y");
    expect.finish();
    cfg.finish();

    const auto est = run_estimate(lattice_counter(g, bases, LatticeKind::StarY, 1, 1, e.back, e.forward), e, ctx.threads);
    std::optional<EntropyEstimate> uni;
    if (u.enabled) {
        const StarSpace X = g.space();
        const int k = X.k();
        std::vector<Subcontinuum> cands;
        std::vector<int> idx(static_cast<std::size_t>(k), 0);
        for (;;) {
            int positive = 0;
            std::vector<double> reaches;
            for (int j = 0; j < k; ++j) {
                reaches.push_back(X.length(j) * idx[static_cast<std::size_t>(j)] / u.N);
                positive += idx[static_cast<std::size_t>(j)] > 0;
            }
            if (positive >= 2) cands.emplace_back(make_star_piece(X, reaches));
            int j = k - 1;
            while (j >= 0 && idx[static_cast<std::size_t>(j)] == u.N) idx[static_cast<std::size_t>(j--)] = 0;
            if (j < 0) break;
            ++idx[static_cast<std::size_t>(j)];
        }
        const auto sys = subcontinuum_system(g, true);
        uni = estimate_entropy<Subcontinuum>(sys, [&](long) { return cands; }, u.eps, u.n, GrowthMode::Polynomial,
                                             ctx.threads);
    }
    write_estimate(ctx, "y", est, uni ? &*uni : nullptr);
    ctx.result->summary["edge_period"] = edge_period(h);
    exponent_verdict(ctx, "y_exponent", est, tol);
}

void interval_C(Obj& cfg, Ctx& ctx) {
    const StarHomeo h = read_homeo(cfg, "homeo");
    if (h.space().k() != 1) throw ConfigError(cfg.at("homeo") + "/k", "interval_C runs on the interval (k = 1)");
    const auto bases = read_edge_bases(cfg, h, 0.5);
    const Estimation e = read_estimation(cfg, {}, {}, 16, 8);
    const UniformGrid u = read_uniform_opt(cfg);
    Obj expect = cfg.object("expect");
    const Tolerance arcs_tol = read_tolerance(expect, "arcs");
    const Tolerance points_tol = read_tolerance(expect, "points");
    expect.finish();
    cfg.finish();

    const auto points = run_estimate(lattice_counter(h, bases, LatticeKind::Points, 1, 1, e.back, e.forward), e, ctx.threads);
    const auto arcs = run_estimate(lattice_counter(h, bases, LatticeKind::Arcs, 1, 1, e.back, e.forward), e, ctx.threads);
    std::optional<EntropyEstimate> uni;
    if (u.enabled) {
        const StarSpace X = h.space();
        std::vector<Subcontinuum> cands;
        for (int i = 0; i <= u.N; ++i)
            for (int j = i; j <= u.N; ++j) {
                const double a = X.length(0) * i / u.N, b = X.length(0) * j / u.N;
                if (a == 0.0)
                    cands.emplace_back(make_star_piece(X, {b}));
                else
                    cands.push_back(make_arc(X, 0, a, b));
            }
        uni = estimate_entropy<Subcontinuum>(subcontinuum_system(h, true), [&](long) { return cands; }, u.eps, u.n,
                                             GrowthMode::Polynomial, ctx.threads);
    }
    write_estimate(ctx, "points", points);
    write_estimate(ctx, "arcs", arcs, uni ? &*uni : nullptr);
    exponent_verdict(ctx, "arcs_exponent", arcs, arcs_tol);
    exponent_verdict(ctx, "points_exponent", points, points_tol);
}

void interval_Cn(Obj& cfg, Ctx& ctx) {
    const StarHomeo h = read_homeo(cfg, "homeo");
    if (h.space().k() != 1) throw ConfigError(cfg.at("homeo") + "/k", "interval_Cn runs on the interval (k = 1)");
    const auto bases = read_edge_bases(cfg, h, 0.5);
    const int components = static_cast<int>(cfg.integer("components", 2, 1, 4));
    const int points = static_cast<int>(cfg.integer("points", 2L * components, 1, kMaxElementSlots));
    const Estimation e = read_estimation(cfg, {}, {}, 12, 6);
    const bool factor = cfg.boolean("factor_check", true);
    Obj expect = cfg.object("expect");
    const Tolerance cn_tol = read_tolerance(expect, "cn");
    const Tolerance fq_tol = read_tolerance(expect, "fn");
    expect.finish();
    cfg.finish();

    const auto cn = run_estimate(lattice_counter(h, bases, LatticeKind::ArcUnions, components, 1, e.back, e.forward), e,
                                 ctx.threads);
    const auto fq = run_estimate(lattice_counter(h, bases, LatticeKind::FiniteSets, points, 1, e.back, e.forward), e,
                                 ctx.threads);
    write_estimate(ctx, "cn", cn);
    write_estimate(ctx, "fn", fq);
    exponent_verdict(ctx, "cn_exponent", cn, cn_tol);
    exponent_verdict(ctx, "fn_exponent", fq, fq_tol);
    if (factor) {
        // Boundary map C_n -> F_2n: upstream counts should dominate at every matched cell.
        long bad = 0, cells = 0;
        std::string first;
        for (std::size_t i = 0; i < cn.per_epsilon.size(); ++i)
            for (std::size_t r = 0; r < cn.per_epsilon[i].second.rows.size(); ++r) {
                const auto& a = cn.per_epsilon[i].second.rows[r];
                const auto& b = fq.per_epsilon[i].second.rows[r];
                ++cells;
                if (a.count < b.count) {
                    if (!bad++)
                        first = "n=" + std::to_string(a.n) + " eps=" + fmt(a.epsilon) + ": " + fmt(a.count) + " < " +
                                fmt(b.count);
                }
            }
        ctx.verdict("factor_inequality", points == 2 * components && bad == 0,
                    std::to_string(cells - bad) + "/" + std::to_string(cells) + " cells with C count >= F count" +
                        (first.empty() ? "" : "; first violation " + first));
    }
}

StarPoint read_star_point(const nlohmann::json& j, const std::string& ptr, const StarSpace& X) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number())
        throw ConfigError(ptr, "expected [edge, t]");
    try {
        return canonicalize(X, StarPoint{j[0].get<int>(), j[1].get<double>()});
    } catch (const std::domain_error& e) {
        throw ConfigError(ptr, e.what());
    }
}

WanderingLattice read_lattice(Obj& cfg, const StarHomeo& g, std::vector<StarPoint> bases, int radius) {
    if (edge_period(g) != 1) throw ConfigError(cfg.at("homeo"), "the homeomorphism must fix every edge");
    for (std::size_t j = 0; j < bases.size(); ++j)
        if (bases[j].is_branch() || bases[j].t >= g.space().length(bases[j].edge) || !is_wandering(g, bases[j]))
            throw ConfigError(cfg.at("base") + "/" + std::to_string(j), "base point must be interior and wandering");
    return wandering_lattice(g, bases, radius);
}

void write_complexity(Ctx& ctx, const std::string& name, const std::map<long, BigInt>& counts, const char* family,
                      int k) {
    CsvWriter csv(ctx.file(name), {"m", "count", "family", "k"});
    for (const auto& [m, c] : counts) csv.row({std::to_string(m), c.str(), family, std::to_string(k)});
}

void fullshift_code(Obj& cfg, Ctx& ctx) {
    const StarHomeo h = read_homeo(cfg, "homeo");
    const StarSpace X = h.space();
    const auto& bj = cfg.value("base");
    if (!bj.is_array() || bj.empty() || bj.size() > 4) throw ConfigError(cfg.at("base"), "expected 1 to 4 base points");
    std::vector<StarPoint> bases;
    for (std::size_t i = 0; i < bj.size(); ++i) bases.push_back(read_star_point(bj[i], cfg.at("base") + "/" + std::to_string(i), X));
    const int k = static_cast<int>(bases.size());
    const int m_max = static_cast<int>(cfg.integer("m_max", 10, 8, 64));
    if (k * m_max > 22) throw ConfigError(cfg.at("m_max"), "k * m_max must be <= 22 (every block is enumerated)");
    const int radius = static_cast<int>(cfg.integer("radius", m_max, m_max, 4096));
    Obj expect = cfg.object("expect");
    const double rate = expect.number("rate_per_track");
    const double tol = expect.number("tol", std::nullopt, 0.0);
    expect.finish();
    const auto lattice = read_lattice(cfg, h, bases, radius);
    cfg.finish();

    // Every block of k tracks and length m, placed at a random offset with
    // random symbols around it, coded as a finite subset of the orbit grid.
    std::vector<WordSet> words;
    for (int m = 1; m <= m_max; ++m) words.emplace_back(k, m);
    parallel_for(static_cast<std::size_t>(m_max), ctx.threads, [&](std::size_t idx) {
        const int m = static_cast<int>(idx) + 1;
        std::mt19937_64 rng(ctx.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(m)));
        std::uniform_int_distribution<long> offset(-radius, radius - m + 1);
        std::bernoulli_distribution coin(0.5);
        WordSet& ws = words[idx];
        const std::uint64_t blocks = 1ULL << (k * m);
        std::vector<StarPoint> pts;
        for (std::uint64_t code = 0; code < blocks; ++code) {
            const long o = offset(rng);
            pts.clear();
            for (int j = 0; j < k; ++j)
                for (long r = -radius; r <= radius; ++r) {
                    const bool inside = r >= o && r < o + m;
                    const bool on = inside ? ((code >> ((r - o) * k + j)) & 1U) != 0 : coin(rng);
                    if (on) pts.push_back(lattice.at(j, static_cast<int>(r)));
                }
            if (pts.empty()) pts.push_back(lattice.at(0, static_cast<int>(o > -radius ? -radius : radius)));
            ws.add_from(code_set(lattice, make_point_set(X, pts)));
        }
    });

    std::map<long, BigInt> sampled, enumerated;
    long mismatches = 0;
    const SymbolicFamily fam{FamilyKind::FullShift, k};
    for (int m = 1; m <= m_max; ++m) {
        sampled[m] = BigInt(words[static_cast<std::size_t>(m - 1)].size());
        enumerated[m] = complexity_enumerated(fam, m);
        mismatches += sampled[m] != enumerated[m];
    }
    write_complexity(ctx, "complexity_sampled.csv", sampled, "full_shift", k);
    write_complexity(ctx, "complexity_enumerated.csv", enumerated, "full_shift", k);
    const GrowthFit fit = entropy_from_complexity(sampled, GrowthMode::Exponential);
    write_json(ctx.file("fit_complexity.json"), fit_to_json(fit));
    ctx.result->summary["complexity_fit"] = fit_to_json(fit);
    ctx.result->summary["lattice_delta"] = lattice.delta;
    ctx.verdict("sampled_equals_enumerated", mismatches == 0,
                std::to_string(m_max - mismatches) + "/" + std::to_string(m_max) + " word lengths match (2^(k m))");
    const double target = rate * k;
    ctx.verdict("exponential_rate", std::abs(fit.slope - target) <= tol,
                "rate " + format_double(fit.slope) + ", expected " + format_double(target) + " +- " + fmt(tol));
}

void coding_crosscheck(Obj& cfg, Ctx& ctx) {
    const StarHomeo h = read_homeo(cfg, "homeo");
    const StarSpace X = h.space();
    const int k = X.k();
    if (k < 2 || k > 4) throw ConfigError(cfg.at("homeo") + "/k", "coding_crosscheck needs 2 <= k <= 4");
    const auto bases = read_edge_bases(cfg, h, 0.5);
    const int m_max = static_cast<int>(cfg.integer("m_max", 8, 1, 64));
    const int radius = static_cast<int>(cfg.integer("radius", 9, 1, 64));
    if (2 * radius + 1 < m_max + 1) throw ConfigError(cfg.at("radius"), "need 2 * radius >= m_max");
    const double off = cfg.number("off_orbit", 0.3, 0.0, 1.0);
    Obj expect = cfg.object("expect");
    const bool want_exact = expect.boolean("exact");
    expect.finish();
    const auto lattice = read_lattice(cfg, h, bases, radius);
    cfg.finish();

    // Tip choices per edge: none, any grid point, or one point off every orbit.
    struct Tip {
        bool present;
        double t;
    };
    std::vector<std::vector<Tip>> choices(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        auto& c = choices[static_cast<std::size_t>(j)];
        c.push_back({false, 0.0});
        for (int r = -radius; r <= radius; ++r) c.push_back({true, lattice.at(j, r).t});
        const double t_off = off * X.length(j);
        for (int r = -radius; r <= radius; ++r)
            if (lattice.at(j, r).t == t_off) throw ConfigError("/off_orbit", "off-orbit point lies on the grid");
        if (t_off > 0.0) c.push_back({true, t_off});
    }

    std::vector<SymbolWindow> windows;
    long inadmissible = 0, shift_bad = 0, psi_bad = 0;
    std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
    for (;;) {
        std::vector<std::pair<int, double>> tips;
        for (int j = 0; j < k; ++j) {
            const Tip& t = choices[static_cast<std::size_t>(j)][idx[static_cast<std::size_t>(j)]];
            if (t.present) tips.emplace_back(j, t.t);
        }
        if (tips.size() >= 2) {
            const Subcontinuum K = make_Y_element(X, tips);
            const FinitePointSet E = endpoints(X, K);
            SymbolWindow w = code_set(lattice, E);
            for (int j = 0; j < k; ++j) {
                int ones = 0;
                for (long n = w.lo; n <= w.hi; ++n) ones += w.bit(j, n);
                inadmissible += ones > 1;
            }
            const Subcontinuum hK = induced_apply(h, K);
            const FinitePointSet hE = endpoints(X, hK);
            std::vector<StarPoint> img;
            for (const auto& p : E.points) img.push_back(apply(h, p));
            psi_bad += make_point_set(X, img) != hE;
            const SymbolWindow hw = code_set(lattice, hE);
            bool ok = true;
            for (int j = 0; j < k && ok; ++j)
                for (long n = w.lo + 1; n <= w.hi; ++n)
                    if (hw.bit(j, n) != w.bit(j, n - 1)) { ok = false; break; }
            shift_bad += !ok;
            windows.push_back(std::move(w));
        }
        int j = k - 1;
        while (j >= 0 && idx[static_cast<std::size_t>(j)] + 1 == choices[static_cast<std::size_t>(j)].size())
            idx[static_cast<std::size_t>(j--)] = 0;
        if (j < 0) break;
        ++idx[static_cast<std::size_t>(j)];
    }

    std::map<long, BigInt> sampled, enumerated;
    long mismatches = 0;
    const SymbolicFamily fam{FamilyKind::AtMostOnePerTrack, k};
    for (int m = 1; m <= m_max; ++m) {
        sampled[m] = BigInt(words_sampled(windows, m).size());
        enumerated[m] = complexity_enumerated(fam, m);
        mismatches += sampled[m] != enumerated[m];
    }
    write_complexity(ctx, "complexity_sampled.csv", sampled, "at_most_one_per_track", k);
    write_complexity(ctx, "complexity_enumerated.csv", enumerated, "at_most_one_per_track", k);
    const long cases = static_cast<long>(windows.size());
    ctx.result->summary["cases"] = cases;
    ctx.result->summary["lattice_delta"] = lattice.delta;
    ctx.verdict("sampled_equals_enumerated", mismatches == 0,
                std::to_string(m_max - mismatches) + "/" + std::to_string(m_max) + " word lengths match (m+1)^k");
    ctx.verdict("admissible_windows", inadmissible == 0, std::to_string(inadmissible) + " tracks with two or more ones");
    ctx.verdict("endpoint_conjugacy", psi_bad == 0 || !want_exact,
                std::to_string(psi_bad) + "/" + std::to_string(cases) + " cases with E(h K) != h(E K)");
    ctx.verdict("shift_conjugacy", shift_bad == 0 || !want_exact,
                std::to_string(shift_bad) + "/" + std::to_string(cases) + " cases where the code of h K is not the shifted code");
}

void isometry_check(Obj& cfg, Ctx& ctx) {
    const StarHomeo hs = read_homeo(cfg, "star");
    const StarHomeo hi = read_homeo(cfg, "interval");
    if (hi.space().k() != 1) throw ConfigError(cfg.at("interval") + "/k", "expected the interval (k = 1)");
    const long samples = cfg.integer("samples", 1000, 1, 100000000);
    const long pairs = cfg.integer("pairs", 10000, 1, 100000000);
    Obj expect = cfg.object("expect");
    const double iso_tol = expect.number("isometry_tol", std::nullopt, 0.0);
    const double lip = expect.number("endpoint_lipschitz", std::nullopt, 0.0);
    const double lip_tol = expect.number("lipschitz_tol", std::nullopt, 0.0);
    expect.finish();
    cfg.finish();

    std::mt19937_64 rng(ctx.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const StarSpace X = hs.space();
    const StarSpace I = hi.space();
    const int k = X.k();

    auto random_piece = [&](std::vector<int>* support) -> Subcontinuum {
        if (!support && unit(rng) < 0.5) {
            const int e = static_cast<int>(unit(rng) * k) % k;
            double a = unit(rng) * X.length(e), b = unit(rng) * X.length(e);
            if (a > b) std::swap(a, b);
            if (a == 0.0) a = b / 2;
            return make_arc(X, e, a, b);
        }
        std::vector<double> r(static_cast<std::size_t>(k), 0.0);
        for (int j = 0; j < k; ++j) {
            const bool on = support ? (*support)[static_cast<std::size_t>(j)] != 0 : unit(rng) >= 1.0 / 3.0;
            if (on) r[static_cast<std::size_t>(j)] = std::max(1e-3, unit(rng)) * X.length(j);
        }
        return make_star_piece(X, r);
    };

    // Endpoint map commutes with the induced map.
    long psi_bad = 0;
    for (long i = 0; i < samples; ++i) {
        const Subcontinuum S = random_piece(nullptr);
        std::vector<StarPoint> img;
        for (const auto& p : endpoints(X, S).points) img.push_back(apply(hs, p));
        psi_bad += make_point_set(X, img) != endpoints(X, induced_apply(hs, S));
    }

    auto random_sorted = [&](int count) {
        std::vector<double> u(static_cast<std::size_t>(count));
        for (;;) {
            for (auto& x : u) x = unit(rng) * I.length(0);
            std::sort(u.begin(), u.end());
            if (std::adjacent_find(u.begin(), u.end()) == u.end()) return u;
        }
    };

    // Boundary map commutes with the induced map on C_2.
    long pi_bad = 0;
    std::map<std::string, long> class_counts;
    for (long i = 0; i < samples; ++i) {
        const auto u = random_sorted(4);
        ArcUnion U;
        switch (i % 5) {
        case 0: U = make_arc_union(I, {{u[0], u[1]}, {u[2], u[3]}}, 2); break;
        case 1: U = make_arc_union(I, {{u[0], u[1]}, {u[2], u[2]}}, 2); break;
        case 2: U = make_arc_union(I, {{u[0], u[0]}, {u[2], u[3]}}, 2); break;
        case 3: U = make_arc_union(I, {{u[0], u[3]}}, 2); break;
        default: U = make_arc_union(I, {{u[0], u[0]}, {u[3], u[3]}}, 2); break;
        }
        ++class_counts[to_string(classify_C2(U))];
        std::vector<StarPoint> img;
        for (const auto& p : boundary(I, U).points) img.push_back(apply(hi, p));
        pi_bad += make_point_set(I, img) != boundary(I, induced_apply(hi, U));
    }

    // Boundary map on class A: matched pairs (every endpoint moved by less than
    // a quarter of the smallest gap) and, for the record, unmatched ones.
    double iso_err = 0.0, global_err = 0.0;
    for (long i = 0; i < pairs; ++i) {
        const auto u = random_sorted(4);
        double gap = I.length(0);
        for (int j = 1; j < 4; ++j) gap = std::min(gap, u[static_cast<std::size_t>(j)] - u[static_cast<std::size_t>(j - 1)]);
        std::vector<double> v(4);
        for (int j = 0; j < 4; ++j)
            v[static_cast<std::size_t>(j)] =
                std::clamp(u[static_cast<std::size_t>(j)] + (unit(rng) - 0.5) * gap / 2.0, 0.0, I.length(0));
        const ArcUnion U = make_arc_union(I, {{u[0], u[1]}, {u[2], u[3]}}, 2);
        const ArcUnion V = make_arc_union(I, {{v[0], v[1]}, {v[2], v[3]}}, 2);
        if (classify_C2(U) != C2Class::A || classify_C2(V) != C2Class::A) throw InvariantViolation("class A sample", "not in A");
        iso_err = std::max(iso_err, std::abs(hausdorff(I, U, V) - hausdorff(I, boundary(I, U), boundary(I, V))));
        const auto w = random_sorted(4);
        const ArcUnion W = make_arc_union(I, {{w[0], w[1]}, {w[2], w[3]}}, 2);
        global_err = std::max(global_err, std::abs(hausdorff(I, U, W) - hausdorff(I, boundary(I, U), boundary(I, W))));
    }

    // Endpoint map on same-support pairs, and its jump across supports.
    double same_ratio = 0.0, mixed_ratio = 0.0;
    for (long i = 0; i < pairs; ++i) {
        std::vector<int> support(static_cast<std::size_t>(k));
        for (auto& s : support) s = unit(rng) < 0.6;
        Subcontinuum S, T;
        if (i % 2 == 0) {
            S = random_piece(&support);
            T = random_piece(&support);
        } else {
            const int e = static_cast<int>(unit(rng) * k) % k;
            auto arc = [&] {
                double a = unit(rng) * X.length(e), b = unit(rng) * X.length(e);
                if (a > b) std::swap(a, b);
                if (a == 0.0) a = b / 2;
                return make_arc(X, e, a, b);
            };
            S = arc();
            T = arc();
        }
        const double d = hausdorff(X, S, T);
        if (d > 0.0) same_ratio = std::max(same_ratio, hausdorff(X, endpoints(X, S), endpoints(X, T)) / d);
        const Subcontinuum A = random_piece(nullptr), B = random_piece(nullptr);
        const double dm = hausdorff(X, A, B);
        if (dm > 0.0) mixed_ratio = std::max(mixed_ratio, hausdorff(X, endpoints(X, A), endpoints(X, B)) / dm);
    }

    auto& s = ctx.result->summary;
    s["endpoint_conjugacy_failures"] = psi_bad;
    s["boundary_conjugacy_failures"] = pi_bad;
    s["c2_class_counts"] = class_counts;
    s["isometry_error_matched"] = iso_err;
    s["isometry_error_unmatched"] = global_err;
    s["endpoint_ratio_same_support"] = same_ratio;
    s["endpoint_ratio_any"] = mixed_ratio;
    {
        CsvWriter csv(ctx.file("checks.csv"), {"check", "cases", "value"});
        csv.row({"endpoint_conjugacy_failures", std::to_string(samples), std::to_string(psi_bad)});
        csv.row({"boundary_conjugacy_failures", std::to_string(samples), std::to_string(pi_bad)});
        csv.row({"isometry_error_matched", std::to_string(pairs), format_double(iso_err)});
        csv.row({"isometry_error_unmatched", std::to_string(pairs), format_double(global_err)});
        csv.row({"endpoint_ratio_same_support", std::to_string(pairs), format_double(same_ratio)});
        csv.row({"endpoint_ratio_any", std::to_string(pairs), format_double(mixed_ratio)});
    }
    ctx.verdict("endpoint_conjugacy", psi_bad == 0, std::to_string(psi_bad) + "/" + std::to_string(samples) + " failures");
    ctx.verdict("boundary_conjugacy", pi_bad == 0, std::to_string(pi_bad) + "/" + std::to_string(samples) + " failures");
    ctx.verdict("boundary_isometry_matched", iso_err <= iso_tol,
                "max |d_H(U,V) - d_H(dU,dV)| = " + format_double(iso_err) + " over " + std::to_string(pairs) +
                    " matched pairs (unmatched pairs reach " + fmt(global_err) + ")");
    ctx.verdict("endpoint_lipschitz_same_support", same_ratio <= lip + lip_tol,
                "max ratio " + format_double(same_ratio) + " (any support: " + fmt(mixed_ratio) + ")");
}

void cylinder_check(Obj& cfg, Ctx& ctx) {
    const int n_max = static_cast<int>(cfg.integer("n_max", 4, 0, 9));
    const int l_max = static_cast<int>(cfg.integer("l_max", 8, 1, 64));
    const auto& fj = cfg.value("families");
    if (!fj.is_array() || fj.empty()) throw ConfigError(cfg.at("families"), "expected a nonempty array");
    std::vector<SymbolicFamily> fams;
    for (std::size_t i = 0; i < fj.size(); ++i) {
        Obj f(fj[i], cfg.at("families") + "/" + std::to_string(i));
        const auto kind = f.string("kind", std::nullopt, {"at_most_one_per_track", "full_shift"});
        const int k = static_cast<int>(f.integer("k", std::nullopt, 1, 4));
        f.finish();
        fams.push_back({kind == "full_shift" ? FamilyKind::FullShift : FamilyKind::AtMostOnePerTrack, k});
    }
    const int sampled_len = static_cast<int>(cfg.integer("sampled_max_length", 10, 1, 16));
    cfg.finish();

    CsvWriter cyl(ctx.file("cylinders.csv"), {"n", "l", "count", "complexity", "family", "k"});
    long checked = 0, bad = 0;
    for (const auto& fam : fams)
        for (int n = 0; n <= n_max; ++n)
            for (int l = 1; l <= l_max; ++l) {
                const BigInt c = cylinder_join_count(fam, n, l);
                const BigInt p = complexity_enumerated(fam, 2 * n + l);
                cyl.row({std::to_string(n), std::to_string(l), c.str(), p.str(), to_string(fam.kind), std::to_string(fam.k)});
                ++checked;
                bad += c != p;
            }
    ctx.verdict("join_count_identity", bad == 0,
                std::to_string(checked - bad) + "/" + std::to_string(checked) + " (n, l) cells equal complexity at 2n+l");

    // Sampled route: windows coded from subsets of one orbit grid on the interval.
    const StarSpace X(1);
    const StarHomeo h(X, {0}, {EdgeMap::pwl({{0, 0}, {0.5, 0.25}, {0.75, 0.5}, {1, 1}})});
    const int radius = sampled_len;
    const std::vector<StarPoint> base{StarPoint{0, 0.5}};
    const auto lattice = wandering_lattice(h, base, radius);
    std::vector<SymbolWindow> sparse, full;
    for (int r = -radius; r <= radius; ++r) sparse.push_back(code_set(lattice, make_point_set(X, {lattice.at(0, r)})));
    sparse.push_back(code_set(lattice, make_point_set(X, {StarPoint{0, 0.3}})));
    for (std::uint32_t bits = 0; bits < (1U << sampled_len); ++bits) {
        std::vector<StarPoint> pts{StarPoint{0, 0.3}};
        for (int i = 0; i < sampled_len; ++i)
            if ((bits >> i) & 1U) pts.push_back(lattice.at(0, i - sampled_len / 2));
        full.push_back(code_set(lattice, make_point_set(X, pts)));
    }
    long s_checked = 0, s_bad = 0;
    for (int n = 0; n <= n_max; ++n)
        for (int l = 1; l <= l_max; ++l) {
            const int len = 2 * n + l;
            if (len <= 2 * radius + 1 - 2) {
                ++s_checked;
                s_bad += cylinder_join_count(sparse, n, l) != complexity_enumerated({FamilyKind::AtMostOnePerTrack, 1}, len);
            }
            if (len <= sampled_len) {
                ++s_checked;
                s_bad += cylinder_join_count(full, n, l) != complexity_enumerated({FamilyKind::FullShift, 1}, len);
            }
        }
    ctx.result->summary["sampled_cells"] = s_checked;
    ctx.verdict("sampled_join_count", s_bad == 0,
                std::to_string(s_checked - s_bad) + "/" + std::to_string(s_checked) + " sampled cells match");
}

void product_power(Obj& cfg, Ctx& ctx) {
    const StarHomeo h = read_homeo(cfg, "homeo");
    if (h.space().k() != 1) throw ConfigError(cfg.at("homeo") + "/k", "product_power runs on the interval (k = 1)");
    const auto bases = read_edge_bases(cfg, h, 0.5);
    const int k = static_cast<int>(cfg.integer("k", 2, 2, 4));
    const int power = static_cast<int>(cfg.integer("power", 2, 2, 8));
    const Estimation e = read_estimation(cfg, {}, {}, 16, 8);
    Obj expect = cfg.object("expect");
    const double product_tol = expect.number("product_tol", std::nullopt, 0.0);
    const double power_tol = expect.number("power_tol", std::nullopt, 0.0);
    expect.finish();
    cfg.finish();

    const StarHomeo hp = h.power(power);
    if (!is_wandering(hp, bases[0])) throw ConfigError(cfg.at("base"), "base point must wander under the power map");
    const auto base = lattice_counter(h, bases, LatticeKind::Points, 1, 1, e.back, e.forward);
    const auto product = lattice_counter(h, bases, LatticeKind::Product, 1, k, e.back, e.forward);
    const auto pw = lattice_counter(hp, bases, LatticeKind::Points, 1, 1, e.back, e.forward);
    const auto rep = product_power_check(base, product, pw, k, e.eps, e.n, GrowthMode::Polynomial, ctx.threads);
    write_estimate(ctx, "base", rep.base);
    write_estimate(ctx, "product", rep.product);
    write_estimate(ctx, "power", rep.power);
    ctx.result->summary["product_gap"] = rep.product_gap();
    ctx.result->summary["power_gap"] = rep.power_gap();
    const std::string st = rep.stable() ? "" : " (unstable estimate)";
    ctx.verdict("product_formula", rep.stable() && std::abs(rep.product_gap()) <= product_tol,
                "product " + fmt(rep.product.fit.slope) + " vs " + std::to_string(k) + " x " + fmt(rep.base.fit.slope) +
                    ", gap " + fmt(rep.product_gap()) + " tol " + fmt(product_tol) + st);
    ctx.verdict("power_formula", rep.stable() && std::abs(rep.power_gap()) <= power_tol,
                "power " + fmt(rep.power.fit.slope) + " vs " + fmt(rep.base.fit.slope) + ", gap " + fmt(rep.power_gap()) +
                    " tol " + fmt(power_tol) + st);
}

// ---------------------------------------------------------------------------

struct Entry {
    ScenarioInfo info;
    void (*fn)(Obj&, Ctx&);
    const char* defaults;
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> e = {
        {{"star_hpol", "polynomial entropy of the induced map on subcontinua of a k-star equals k"}, star_hpol, R"({
  "seed": 1,
  "homeo": {"k": 3, "maps": [{"family": "power", "p": 2}, {"family": "power", "p": 2}, {"family": "power", "p": 3}]},
  "base": 0.5,
  "epsilons": [0.0625, 0.03125, 0.015625],
  "n": [32, 64, 96, 128, 160, 192, 224, 256],
  "back": 16,
  "forward": 8,
  "uniform": {"grid": 8, "epsilons": [0.125], "n": [2, 4, 8, 16]},
  "expect": {"y": {"exponent": 3, "tol": 0.5}}
})"},
        {{"interval_C", "induced map on subcontinua of the interval has polynomial entropy 2; the base map has 1"},
         interval_C, R"({
  "seed": 1,
  "homeo": {"k": 1, "map": {"family": "power", "p": 2}},
  "base": 0.5,
  "epsilons": [0.0625, 0.03125, 0.015625],
  "n": [64, 128, 192, 256, 320, 384, 448, 512],
  "back": 16,
  "forward": 8,
  "uniform": {"grid": 16, "epsilons": [0.125], "n": [2, 4, 8, 16]},
  "expect": {"arcs": {"exponent": 2, "tol": 0.4}, "points": {"exponent": 1, "tol": 0.3}}
})"},
        {{"interval_Cn", "C_2 of an interval homeomorphism has polynomial entropy 4, as does F_4"}, interval_Cn, R"({
  "seed": 1,
  "homeo": {"k": 1, "map": {"family": "power", "p": 2}},
  "base": 0.5,
  "components": 2,
  "points": 4,
  "epsilons": [0.0625, 0.03125, 0.015625],
  "n": [16, 32, 48, 64, 80, 96, 112, 128],
  "back": 12,
  "forward": 6,
  "factor_check": true,
  "expect": {"cn": {"exponent": 4, "tol": 0.6}, "fn": {"exponent": 4, "tol": 0.5}}
})"},
        {{"fullshift_code", "coding finite sets along k wandering orbits realizes the full shift: p(m) = (2^k)^m"},
         fullshift_code, R"({
  "seed": 1,
  "homeo": {"k": 1, "map": {"family": "power", "p": 1.5}},
  "base": [[0, 0.5], [0, 0.42]],
  "m_max": 10,
  "radius": 10,
  "expect": {"rate_per_track": 0.6931471805599453, "tol": 1e-9}
})"},
        {{"coding_crosscheck", "endpoint coding of Y_E has complexity (m+1)^k and turns the induced map into the shift"},
         coding_crosscheck, R"({
  "seed": 1,
  "homeo": {"k": 3, "map": {"family": "pwl", "points": [[0, 0], [0.5, 0.25], [0.75, 0.5], [1, 1]]}},
  "base": 0.5,
  "m_max": 8,
  "radius": 9,
  "off_orbit": 0.3,
  "expect": {"exact": true}
})"},
        {{"isometry_check", "endpoint and boundary maps commute with induced maps; the boundary map is isometric on class A"},
         isometry_check, R"({
  "seed": 1,
  "star": {"k": 3, "maps": [{"family": "power", "p": 2}, {"family": "power", "p": 0.5},
           {"family": "pwl", "points": [[0, 0], [0.5, 0.25], [0.75, 0.5], [1, 1]]}]},
  "interval": {"k": 1, "map": {"family": "power", "p": 2}},
  "samples": 1000,
  "pairs": 10000,
  "expect": {"isometry_tol": 1e-12, "endpoint_lipschitz": 1, "lipschitz_tol": 1e-12}
})"},
        {{"cylinder_check", "joins of shifted cylinder covers have as many cells as words of length 2n+l"},
         cylinder_check, R"({
  "seed": 1,
  "n_max": 4,
  "l_max": 8,
  "families": [{"kind": "at_most_one_per_track", "k": 1}, {"kind": "at_most_one_per_track", "k": 2},
               {"kind": "at_most_one_per_track", "k": 3}, {"kind": "full_shift", "k": 1},
               {"kind": "full_shift", "k": 2}],
  "sampled_max_length": 10
})"},
        {{"product_power", "polynomial entropy of a k-fold product is k times that of the factor; powers keep it"},
         product_power, R"({
  "seed": 1,
  "homeo": {"k": 1, "map": {"family": "power", "p": 2}},
  "base": 0.5,
  "k": 2,
  "power": 2,
  "epsilons": [0.0625, 0.03125, 0.015625],
  "n": [64, 128, 192, 256, 320, 384, 448, 512],
  "back": 16,
  "forward": 8,
  "expect": {"product_tol": 0.4, "power_tol": 0.2}
})"},
    };
    return e;
}

const Entry& find_entry(const std::string& name) {
    for (const auto& e : entries())
        if (e.info.name == name) return e;
    std::string names;
    for (const auto& e : entries()) names += (names.empty() ? "" : ", ") + e.info.name;
    throw ConfigError("", "unknown scenario '" + name + "'; valid scenarios: " + names);
}

}  // namespace

const std::vector<ScenarioInfo>& catalog() {
    static const std::vector<ScenarioInfo> c = [] {
        std::vector<ScenarioInfo> v;
        for (const auto& e : entries()) v.push_back(e.info);
        return v;
    }();
    return c;
}

json default_config(const std::string& scenario) { return json::parse(find_entry(scenario).defaults); }

bool RunResult::passed() const {
    return !verdicts.empty() &&
           std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

int exit_code(const RunResult& r) { return r.passed() ? 0 : 1; }

RunResult run(const std::string& scenario, const json& config, const RunOptions& opts) {
    const Entry& entry = find_entry(scenario);
    RunResult result;
    result.scenario = scenario;
    result.config = config;
    if (!result.config.is_object()) throw ConfigError("", "config must be a JSON object");
    Obj cfg(result.config, "");
    std::uint64_t seed = cfg.u64("seed", 1);
    if (opts.seed) {
        seed = *opts.seed;
        result.config["seed"] = seed;
    }
    if (result.config.contains("expect")) result.expectations = result.config["expect"];
    if (opts.threads < 1) throw ConfigError("/threads", "thread count must be >= 1");
    if (opts.out_dir.empty()) throw ConfigError("/out", "output directory required");
    std::filesystem::create_directories(opts.out_dir);

    Ctx ctx{opts.out_dir, seed, opts.threads, &result};
    const json expectations_before = result.expectations;
    entry.fn(cfg, ctx);
    if (result.expectations != expectations_before) throw InvariantViolation("expectations unchanged", "expect block was modified");

    json verdicts = json::array();
    for (const auto& v : result.verdicts) verdicts.push_back({{"name", v.name}, {"pass", v.pass}, {"detail", v.detail}});
    write_json(ctx.file("config.json"), result.config);
    result.files.push_back("results.json");
    write_json((std::filesystem::path(opts.out_dir) / "results.json").string(),
               json{{"scenario", scenario},
                    {"claim", entry.info.claim},
                    {"seed", seed},
                    {"expectations", result.expectations},
                    {"summary", result.summary},
                    {"verdicts", verdicts},
                    {"passed", result.passed()},
                    {"files", result.files}});
    return result;
}

}  // namespace hypdyn::lab
