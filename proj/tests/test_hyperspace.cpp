#include <doctest.h>

#include <random>
#include <stdexcept>

#include "hypdyn/hyperspace.hpp"
#include "oracle.hpp"

using namespace hypdyn;

namespace {

const StarSpace I(1);
const StarSpace S3(3);

FinitePointSet pts1(std::vector<double> ts) {
    std::vector<StarPoint> p;
    for (double t : ts) p.push_back(canonicalize(I, {0, t}));
    return make_point_set(I, p);
}

}  // namespace

TEST_CASE("constructors validate") {
    CHECK(std::holds_alternative<StarPiece>(make_arc(S3, 1, 0.0, 0.4)));
    CHECK(std::holds_alternative<Arc>(make_arc(S3, 1, 0.3, 0.3)));
    CHECK_THROWS_AS(make_arc(S3, 1, 0.5, 0.4), std::domain_error);
    CHECK_THROWS_AS(make_arc(S3, 3, 0.1, 0.4), std::domain_error);
    CHECK_THROWS_AS(make_star_piece(S3, {0.1, 0.2}), std::domain_error);
    CHECK_THROWS_AS(make_star_piece(S3, {0.1, 0.2, 1.5}), std::domain_error);
    CHECK_THROWS_AS(make_point_set(S3, {}), std::domain_error);
    CHECK(make_point_set(S3, {{1, 0.2}, {0, 0.5}, {1, 0.2}}).size() == 2);
    CHECK(make_point_set(S3, {{2, 0.0}}).points[0] == branch_point());
    CHECK_THROWS_AS(make_arc_union(I, {{0.1, 0.3}, {0.3, 0.5}}), std::domain_error);
    CHECK_THROWS_AS(make_arc_union(I, {{0.1, 0.2}, {0.3, 0.4}, {0.5, 0.6}}, 2), std::domain_error);
    CHECK(make_arc_union(I, {{0.5, 0.6}, {0.1, 0.2}}).arcs.front().first == 0.1);
}

TEST_CASE("hausdorff: worked examples") {
    CHECK(hausdorff(I, make_arc_union(I, {{0, 1}}), pts1({0, 1})) == 0.5);
    CHECK(hausdorff(S3, make_star_piece(S3, {0.5, 0.2, 0}), make_star_piece(S3, {0.3, 0.2, 0.1})) ==
          doctest::Approx(0.2).epsilon(1e-15));
    CHECK(hausdorff(I, make_arc_union(I, {{0.1, 0.2}, {0.5, 0.9}}), make_arc_union(I, {{0.1, 0.9}})) ==
          doctest::Approx(0.15).epsilon(1e-15));
}

TEST_CASE("hausdorff: identity and symmetry across representations") {
    const Subcontinuum arc = make_arc(I, 0, 0.2, 0.7);
    const ArcUnion same = make_arc_union(I, {{0.2, 0.7}});
    CHECK(hausdorff(I, arc, same) == 0.0);
    const FinitePointSet tip = make_point_set(S3, {{1, 0.4}});
    CHECK(hausdorff(S3, make_arc(S3, 1, 0.4, 0.4), tip) == 0.0);
    CHECK(hausdorff(S3, make_star_piece(S3, {0, 0, 0}), make_point_set(S3, {branch_point()})) == 0.0);
    CHECK(hausdorff(S3, tip, make_star_piece(S3, {0.3, 0, 0})) == hausdorff(S3, make_star_piece(S3, {0.3, 0, 0}), tip));
}

TEST_CASE("hausdorff agrees with the dense-sample oracle") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double h = 1e-3;
    auto sub = [&](const StarSpace& X) -> Subcontinuum {
        if (u(rng) < 0.5) {
            const int e = static_cast<int>(rng() % static_cast<unsigned>(X.k()));
            double a = u(rng), b = u(rng);
            if (a > b) std::swap(a, b);
            return make_arc(X, e, a, b);
        }
        std::vector<double> r;
        for (int j = 0; j < X.k(); ++j) r.push_back(u(rng) < 0.3 ? 0.0 : u(rng));
        return make_star_piece(X, r);
    };
    auto fin = [&](const StarSpace& X) {
        std::vector<StarPoint> p;
        const int n = 1 + static_cast<int>(rng() % 5);
        for (int i = 0; i < n; ++i) p.push_back(canonicalize(X, {static_cast<int>(rng() % static_cast<unsigned>(X.k())), u(rng)}));
        return make_point_set(X, p);
    };
    auto uni = [&]() {
        std::vector<double> v;
        const int n = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < 2 * n; ++i) v.push_back(u(rng));
        std::sort(v.begin(), v.end());
        std::vector<std::pair<double, double>> arcs;
        for (int i = 0; i < n; ++i) arcs.emplace_back(v[2 * i], u(rng) < 0.2 ? v[2 * i] : v[2 * i + 1]);
        return make_arc_union(I, arcs);
    };
    for (int i = 0; i < 50; ++i) {
        const auto a = sub(S3), b = sub(S3);
        const auto fa = fin(S3), fb = fin(S3);
        CHECK(std::abs(hausdorff(S3, a, b) - oracle::hausdorff(S3, a, b, h)) <= 2 * h);
        CHECK(std::abs(hausdorff(S3, a, fb) - oracle::hausdorff(S3, a, fb, h)) <= 2 * h);
        CHECK(std::abs(hausdorff(S3, fa, fb) - oracle::hausdorff(S3, fa, fb, h)) <= 2 * h);
        const auto ua = uni(), ub = uni();
        const auto ia = sub(I);
        const auto fi = fin(I);
        CHECK(std::abs(hausdorff(I, ua, ub) - oracle::hausdorff(I, ua, ub, h)) <= 2 * h);
        CHECK(std::abs(hausdorff(I, ua, ia) - oracle::hausdorff(I, ua, ia, h)) <= 2 * h);
        CHECK(std::abs(hausdorff(I, ua, fi) - oracle::hausdorff(I, ua, fi, h)) <= 2 * h);
    }
}

TEST_CASE("two-edge interval coordinates") {
    const StarSpace X2(2);
    CHECK(interval_point(X2, -0.3) == StarPoint{0, 0.3});
    CHECK(interval_point(X2, 0.4) == StarPoint{1, 0.4});
    CHECK(interval_coordinate(X2, {0, 0.25}) == -0.25);
    const ArcUnion U = make_arc_union(X2, {{-0.5, 0.2}, {0.6, 0.7}});
    const ArcUnion V = make_arc_union(X2, {{-0.4, -0.1}});
    CHECK(std::abs(hausdorff(X2, U, V) - oracle::hausdorff(X2, U, V, 1e-4)) <= 2e-4);
    CHECK(boundary(X2, U).size() == 4);
}

TEST_CASE("induced_apply") {
    const StarHomeo sq(StarSpace(2), {0, 1}, {EdgeMap::identity(), EdgeMap::power(2.0)});
    const auto img = std::get<Arc>(induced_apply(sq, make_arc(sq.space(), 1, 0.4, 0.6)));
    CHECK(img.edge == 1);
    CHECK(img.a == doctest::Approx(0.16).epsilon(1e-15));
    CHECK(img.b == doctest::Approx(0.36).epsilon(1e-15));
    const StarHomeo id = StarHomeo::identity(StarSpace(2));
    const Subcontinuum s = make_star_piece(id.space(), {0.3, 0.7});
    CHECK(induced_apply(id, s) == s);
    const StarHomeo swap(StarSpace(2), {1, 0}, {EdgeMap::identity(), EdgeMap::identity()});
    CHECK(std::get<StarPiece>(induced_apply(swap, s)).reaches == std::vector<double>{0.7, 0.3});
    const FinitePointSet F = make_point_set(StarSpace(2), {{0, 0.9}, {1, 0.1}});
    const FinitePointSet G = induced_apply(swap, F);
    CHECK(G.points[0] == StarPoint{0, 0.1});
    CHECK(G.points[1] == StarPoint{1, 0.9});
}

TEST_CASE("induced maps preserve Hausdorff distance under the identity") {
    const StarHomeo id = StarHomeo::identity(S3);
    const Subcontinuum a = make_star_piece(S3, {0.1, 0.5, 0.2}), b = make_arc(S3, 2, 0.3, 0.8);
    CHECK(hausdorff(S3, induced_apply(id, a), induced_apply(id, b)) == hausdorff(S3, a, b));
}

TEST_CASE("endpoints") {
    const auto E = endpoints(S3, make_star_piece(S3, {0.5, 0.2, 0}));
    CHECK(E.points == std::vector<StarPoint>{{0, 0.5}, {1, 0.2}});
    CHECK(endpoints(S3, make_star_piece(S3, {0, 0, 0})).points == std::vector<StarPoint>{branch_point()});
    CHECK(endpoints(S3, make_arc(S3, 2, 0.3, 0.3)).points == std::vector<StarPoint>{{2, 0.3}});
    CHECK(endpoints(S3, make_arc(S3, 2, 0.3, 0.6)).size() == 2);
    // A single positive reach is the arc [b, tip].
    CHECK(endpoints(S3, make_star_piece(S3, {0, 0.4, 0})).points == std::vector<StarPoint>{branch_point(), {1, 0.4}});
}

TEST_CASE("boundary") {
    CHECK(boundary(I, make_arc_union(I, {{0.1, 0.2}, {0.5, 0.9}})) == pts1({0.1, 0.2, 0.5, 0.9}));
    CHECK(boundary(I, make_arc_union(I, {{0.3, 0.3}})) == pts1({0.3}));
    CHECK(boundary(I, make_arc_union(I, {{0.0, 1.0}})) == pts1({0.0, 1.0}));
}

TEST_CASE("classify_C2") {
    CHECK(classify_C2(make_arc_union(I, {{0.1, 0.2}, {0.5, 0.9}})) == C2Class::A);
    CHECK(classify_C2(make_arc_union(I, {{0.1, 0.4}, {0.7, 0.7}})) == C2Class::B1);
    CHECK(classify_C2(make_arc_union(I, {{0.1, 0.1}, {0.7, 0.8}})) == C2Class::B2);
    CHECK(classify_C2(make_arc_union(I, {{0.2, 0.6}})) == C2Class::C);
    CHECK(classify_C2(make_arc_union(I, {{0.2, 0.2}, {0.6, 0.6}})) == C2Class::Other);
    CHECK_THROWS_AS(classify_C2(ArcUnion{}), std::domain_error);
    const StarHomeo h(I, {0}, {EdgeMap::pwl({{0, 0}, {0.3, 0.1}, {0.6, 0.5}, {1, 1}})});
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        std::vector<double> v{u(rng), u(rng), u(rng), u(rng)};
        std::sort(v.begin(), v.end());
        const ArcUnion U = make_arc_union(I, {{v[0], i % 3 ? v[1] : v[0]}, {v[2], i % 2 ? v[3] : v[2]}});
        CHECK(classify_C2(induced_apply(h, U)) == classify_C2(U));
    }
}

TEST_CASE("make_Y_element") {
    const auto y = make_Y_element(S3, {{0, 0.5}, {2, 0.1}});
    CHECK(y.reaches == std::vector<double>{0.5, 0, 0.1});
    CHECK(endpoints(S3, Subcontinuum(y)).points == std::vector<StarPoint>{{0, 0.5}, {2, 0.1}});
    CHECK_THROWS_AS(make_Y_element(S3, {{1, 0.3}}), std::domain_error);
    CHECK_THROWS_AS(make_Y_element(S3, {{1, 0.3}, {1, 0.4}}), std::domain_error);
    CHECK(make_Y_element(S3, {{0, 0.2}, {1, 0.2}, {2, 0.2}}).reaches == std::vector<double>{0.2, 0.2, 0.2});
}
