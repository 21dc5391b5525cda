#include <doctest.h>

#include <random>

#include "hypdyn/entropy.hpp"
#include "hypdyn/hyperspace.hpp"
#include "hypdyn/lattice.hpp"

using namespace hypdyn;

namespace {

const StarSpace I(1);
const StarHomeo kSquare(I, {0}, {EdgeMap::power(2.0)});
const StarHomeo kDyadic(I, {0}, {EdgeMap::pwl({{0, 0}, {0.5, 0.25}, {0.75, 0.5}, {1, 1}})});

LatticeProblem problem(LatticeKind kind, int q, const LatticeAxis& ax, int copies = 1) {
    LatticeProblem p;
    p.kind = kind;
    p.q = q;
    for (int i = 0; i < copies; ++i) p.axes.push_back(&ax);
    return p;
}

double t_of(const LatticeAxis& ax, int s) { return ax.value(s); }

}  // namespace

TEST_CASE("make_axis") {
    const LatticeAxis ax = make_axis(kSquare, {0, 0.5}, -3, 2, 4, true, true);
    CHECK(ax.labels.front() == kBranchLabel);
    CHECK(ax.labels.back() == kOuterLabel);
    for (int s = 1; s < ax.size(); ++s) CHECK(ax.value(s) > ax.value(s - 1));
    for (int s = 0; s < ax.size(); ++s)
        if (ax.labels[static_cast<std::size_t>(s)] != kBranchLabel && ax.labels[static_cast<std::size_t>(s)] != kOuterLabel)
            for (int i = 0; i < 4; ++i)
                CHECK(ax.orbit(s)[i] == iterate(kSquare, {0, 0.5}, ax.labels[static_cast<std::size_t>(s)] + i).t);
    CHECK_THROWS(make_axis(StarHomeo::identity(I), {0, 0.5}, -3, 2, 4, true, true));
    CHECK_THROWS(make_axis(kSquare, {0, 0.5}, 2, -3, 4, true, true));
}

TEST_CASE("bucketed count equals naive first-fit") {
    const LatticeAxis ax = make_axis(kSquare, {0, 0.5}, -12, 4, 8, true, true);
    const std::pair<LatticeKind, int> kinds[] = {{LatticeKind::Points, 1},     {LatticeKind::Arcs, 1},
                                                 {LatticeKind::StarY, 1},      {LatticeKind::Product, 1},
                                                 {LatticeKind::FiniteSets, 2}, {LatticeKind::FiniteSets, 4},
                                                 {LatticeKind::ArcUnions, 2}};
    for (const auto& [kind, q] : kinds) {
        const int copies = (kind == LatticeKind::StarY || kind == LatticeKind::Product) ? 3 : 1;
        const auto p = problem(kind, q, ax, copies);
        for (int n : {1, 3, 8})
            for (double eps : {0.3, 0.125, 0.05, 0.02}) {
                CAPTURE(to_string(kind));
                CAPTURE(n);
                CAPTURE(eps);
                const auto a = lattice_separated(p, n, eps), b = lattice_separated_naive(p, n, eps);
                CHECK(a.count == b.count);
                CHECK(a.candidates == b.candidates);
            }
    }
}

TEST_CASE("lattice distance equals the Hausdorff dynamic distance") {
    const LatticeAxis ax = make_axis(kDyadic, {0, 0.5}, -6, 3, 5, true, true);
    DynSystem<ArcUnion> sys;
    sys.metric = [](const ArcUnion& a, const ArcUnion& b) { return hausdorff(I, a, b); };
    sys.map = [](const ArcUnion& a) { return induced_apply(kDyadic, a); };
    const auto p = problem(LatticeKind::ArcUnions, 2, ax);
    const auto elems = lattice_elements(p);
    auto to_union = [&](const LatticeElement& e) {
        std::vector<std::pair<double, double>> arcs;
        for (int i = 0; i + 1 < e.len; i += 2) arcs.emplace_back(t_of(ax, e.s[static_cast<std::size_t>(i)]), t_of(ax, e.s[static_cast<std::size_t>(i + 1)]));
        return make_arc_union(I, arcs);
    };
    std::mt19937_64 rng(3);
    for (int i = 0; i < 400; ++i) {
        const auto& a = elems[rng() % elems.size()];
        const auto& b = elems[rng() % elems.size()];
        CHECK(lattice_distance(p, a, b, 5) == doctest::Approx(dyn_distance(sys, to_union(a), to_union(b), 5)).epsilon(1e-12));
    }
}

TEST_CASE("lattice count equals generic greedy on the same candidates") {
    // Finite sets of up to 3 orbit points, compared with the hyperspace greedy in the same order.
    const LatticeAxis ax = make_axis(kDyadic, {0, 0.5}, -7, 3, 6, true, true);
    const auto p = problem(LatticeKind::FiniteSets, 3, ax);
    std::vector<FinitePointSet> cands;
    for (const auto& e : lattice_elements(p)) {
        std::vector<StarPoint> pts;
        for (int i = 0; i < e.len; ++i) pts.push_back(canonicalize(I, {0, t_of(ax, e.s[static_cast<std::size_t>(i)])}));
        cands.push_back(make_point_set(I, pts));
    }
    DynSystem<FinitePointSet> sys;
    sys.metric = [](const FinitePointSet& a, const FinitePointSet& b) { return hausdorff(I, a, b); };
    sys.map = [](const FinitePointSet& a) { return induced_apply(kDyadic, a); };
    for (double eps : {0.2, 0.06}) CHECK(lattice_separated(p, 6, eps).count == greedy_separated(sys, cands, 6, eps).count());
}

TEST_CASE("star pieces on a three-edge star") {
    const StarHomeo h(StarSpace(3), {0, 1, 2}, {EdgeMap::power(2.0), EdgeMap::power(2.0), EdgeMap::power(3.0)});
    std::vector<LatticeAxis> axes;
    for (int j = 0; j < 3; ++j) axes.push_back(make_axis(h, {j, 0.5}, -8, 3, 6, true, true));
    LatticeProblem p;
    p.kind = LatticeKind::StarY;
    for (const auto& a : axes) p.axes.push_back(&a);
    for (double eps : {0.2, 0.05}) CHECK(lattice_separated(p, 6, eps).count == lattice_separated_naive(p, 6, eps).count);
    for (const auto& e : lattice_elements(p)) {
        int positive = 0;
        for (int j = 0; j < 3; ++j) positive += axes[static_cast<std::size_t>(j)].value(e.s[static_cast<std::size_t>(j)]) > 0;
        CHECK(positive >= 2);
    }
}
