#include <cmath>
#include <functional>
#include <random>
#include <string>

#include "hypdyn/hyperspace.hpp"
#include "hypdyn/kernels.hpp"
#include "hypdyn/lab.hpp"
#include "hypdyn/lattice.hpp"
#include "hypdyn/symbolic.hpp"

namespace hypdyn::lab {

namespace {

StarHomeo dyadic_interval() {
    return StarHomeo(StarSpace(1), {0}, {EdgeMap::pwl({{0, 0}, {0.5, 0.25}, {0.75, 0.5}, {1, 1}})});
}

StarHomeo mixed_star() {
    return StarHomeo(StarSpace(std::vector<double>{1.0, 0.5, 2.0}), {1, 2, 0},
                     {EdgeMap::power(2.0), EdgeMap::pwl({{0, 0}, {0.5, 0.25}, {0.75, 0.5}, {1, 1}}), EdgeMap::power(0.7)});
}

std::string metric_axioms() {
    const StarHomeo h = mixed_star();
    const StarSpace& X = h.space();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto point = [&] {
        const int e = static_cast<int>(rng() % 3);
        return canonicalize(X, {e, u(rng) * X.length(e)});
    };
    auto piece = [&] {
        std::vector<double> r;
        for (int j = 0; j < 3; ++j) r.push_back(u(rng) < 0.3 ? 0.0 : u(rng) * X.length(j));
        return Subcontinuum(make_star_piece(X, r));
    };
    for (int i = 0; i < 300; ++i) {
        const auto p = point(), q = point(), r = point();
        if (distance(X, p, p) != 0.0 || distance(X, p, q) != distance(X, q, p) ||
            distance(X, p, r) > distance(X, p, q) + distance(X, q, r) + 1e-12)
            return "star distance";
        const auto A = piece(), B = piece(), C = piece();
        if (hausdorff(X, A, A) != 0.0 || std::abs(hausdorff(X, A, B) - hausdorff(X, B, A)) > 1e-15 ||
            hausdorff(X, A, C) > hausdorff(X, A, B) + hausdorff(X, B, C) + 1e-12)
            return "hausdorff on star pieces";
    }
    return "";
}

std::string map_round_trip() {
    const StarHomeo h = mixed_star();
    const StarSpace& X = h.space();
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    for (int i = 0; i < 300; ++i) {
        const int e = static_cast<int>(rng() % 3);
        const StarPoint p{e, u(rng) * X.length(e)};
        const StarPoint q = apply_inverse(h, apply(h, p));
        if (q.edge != p.edge || std::abs(q.t - p.t) > 1e-12) return "apply_inverse(apply(p)) != p";
        StarPoint r = p;
        for (int s = 0; s < 5; ++s) r = apply(h, r);
        const StarPoint it = iterate(h, p, 5);
        if (it.edge != r.edge || std::abs(it.t - r.t) > 1e-12) return "iterate disagrees with repeated apply";
    }
    return "";
}

std::string coding_shift() {
    const StarHomeo h = dyadic_interval();
    const StarSpace& X = h.space();
    const std::vector<StarPoint> base{{0, 0.5}};
    const auto lattice = wandering_lattice(h, base, 12);
    for (int r = -11; r <= 11; ++r) {
        const FinitePointSet K = make_point_set(X, {lattice.at(0, r), StarPoint{0, 0.3}});
        const SymbolWindow w = code_set(lattice, K), hw = code_set(lattice, induced_apply(h, K));
        for (long n = w.lo + 1; n <= w.hi; ++n)
            if (hw.bit(0, n) != w.bit(0, n - 1)) return "code of h(K) is not the shifted code";
    }
    return "";
}

std::string lattice_agreement() {
    const StarHomeo h(StarSpace(1), {0}, {EdgeMap::power(2.0)});
    const LatticeAxis ax = make_axis(h, {0, 0.5}, -10, 3, 6, true, true);
    const std::pair<LatticeKind, int> kinds[] = {{LatticeKind::Points, 1},     {LatticeKind::Arcs, 1},
                                                 {LatticeKind::StarY, 1},      {LatticeKind::Product, 1},
                                                 {LatticeKind::FiniteSets, 3}, {LatticeKind::ArcUnions, 2}};
    for (const auto& [kind, q] : kinds) {
        LatticeProblem p;
        p.kind = kind;
        p.q = q;
        p.axes = {&ax};
        if (kind == LatticeKind::StarY || kind == LatticeKind::Product) p.axes = {&ax, &ax};
        for (double eps : {0.25, 0.1}) {
            if (lattice_separated(p, 6, eps).count != lattice_separated_naive(p, 6, eps).count)
                return std::string("bucketed and naive counts differ for ") + to_string(kind);
        }
    }
    return "";
}

std::string kernel_agreement() {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> a(37), b(37);
    const auto& ref = kernels::scalar_table();
    for (const auto* t : kernels::available_tables())
        for (int i = 0; i < 200; ++i) {
            for (std::size_t j = 0; j < a.size(); ++j) {
                a[j] = u(rng);
                b[j] = a[j] + (u(rng) - 0.5) * 0.1;
            }
            const std::size_t n = rng() % a.size();
            if (t->within_all(a.data(), b.data(), n, 0.04) != ref.within_all(a.data(), b.data(), n, 0.04) ||
                t->max_abs_diff(a.data(), b.data(), n) != ref.max_abs_diff(a.data(), b.data(), n))
                return std::string("kernel table ") + t->name + " disagrees with scalar";
        }
    return "";
}

std::string cylinder_identity() {
    for (auto kind : {FamilyKind::AtMostOnePerTrack, FamilyKind::FullShift})
        for (int k = 1; k <= 2; ++k)
            for (int n = 0; n <= 2; ++n)
                for (int l = 1; l <= 4; ++l)
                    if (cylinder_join_count({kind, k}, n, l) != complexity_enumerated({kind, k}, 2 * n + l))
                        return "join count differs from complexity at 2n+l";
    return "";
}

std::string span_sep() {
    const StarHomeo h(StarSpace(1), {0}, {EdgeMap::power(2.0)});
    const StarSpace& X = h.space();
    DynSystem<StarPoint> sys;
    sys.metric = [X](const StarPoint& a, const StarPoint& b) { return distance(X, a, b); };
    sys.map = [h](const StarPoint& a) { return apply(h, a); };
    std::vector<StarPoint> grid;
    for (int i = 0; i <= 64; ++i) grid.push_back(canonicalize(X, {0, i / 64.0}));
    for (int n : {1, 4, 8})
        for (double eps : {0.25, 0.1, 0.05}) {
            const auto sep = greedy_separated(sys, grid, n, eps).count();
            const auto span = greedy_spanning(sys, grid, grid, n, eps);
            if (span > sep) return "span > sep";
        }
    return "";
}

}  // namespace

int selftest(std::ostream& out) {
    const std::pair<const char*, std::function<std::string()>> checks[] = {
        {"metric_axioms", metric_axioms},         {"map_round_trip", map_round_trip},
        {"coding_shift", coding_shift},           {"lattice_agreement", lattice_agreement},
        {"kernel_agreement", kernel_agreement},   {"cylinder_identity", cylinder_identity},
        {"span_le_sep", span_sep},
    };
    int failures = 0;
    for (const auto& [name, fn] : checks) {
        std::string err;
        try {
            err = fn();
        } catch (const std::exception& e) {
            err = std::string("exception: ") + e.what();
        }
        if (err.empty()) {
            out << "ok   " << name << '\n';
        } else {
            ++failures;
            out << "FAIL " << name << ": " << err << '\n';
        }
    }
    return failures;
}

}  // namespace hypdyn::lab
