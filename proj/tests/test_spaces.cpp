#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "hypdyn/spaces.hpp"

using namespace hypdyn;

TEST_CASE("canonicalize normalizes the branch point") {
    const StarSpace X(4);
    const StarPoint b = canonicalize(X, {2, 0.0});
    CHECK(b.edge == 0);
    CHECK(b.t == 0.0);
    const StarPoint p = canonicalize(X, {1, 0.3});
    CHECK(p.edge == 1);
    CHECK(p.t == 0.3);
    CHECK(canonicalize(X, p) == p);
    CHECK_THROWS_AS(canonicalize(X, {0, 1.1}), std::domain_error);
    CHECK_THROWS_AS(canonicalize(X, {0, -0.1}), std::domain_error);
    CHECK_THROWS_AS(canonicalize(X, {4, 0.5}), std::domain_error);
}

TEST_CASE("negative zero is canonical zero") {
    const StarSpace X(2);
    const StarPoint b = canonicalize(X, {1, -0.0});
    CHECK(b == branch_point());
    CHECK_FALSE(std::signbit(b.t));
}

TEST_CASE("distance closed form") {
    const StarSpace X(4);
    CHECK(distance(X, {1, 0.3}, {1, 0.4}) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(distance(X, {1, 0.3}, {2, 0.4}) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(distance(X, {0, 0.0}, {3, 0.25}) == 0.25);
}

TEST_CASE("heterogeneous edge lengths") {
    const StarSpace X(std::vector<double>{1.0, 2.5});
    CHECK(X.length(1) == 2.5);
    CHECK_NOTHROW(canonicalize(X, {1, 2.4}));
    CHECK_THROWS(canonicalize(X, {0, 1.5}));
    CHECK(distance(X, {0, 1.0}, {1, 2.5}) == 3.5);
    CHECK_THROWS(StarSpace(std::vector<double>{1.0, 0.0}));
}

TEST_CASE("metric axioms on random triples") {
    const StarSpace X(std::vector<double>{1.0, 0.5, 2.0, 1.5});
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto point = [&] {
        const int e = static_cast<int>(rng() % 4);
        const double t = u(rng) < 0.05 ? 0.0 : u(rng) * X.length(e);
        return canonicalize(X, {e, t});
    };
    for (int i = 0; i < 10000; ++i) {
        const auto p = point(), q = point(), r = point();
        const double pq = distance(X, p, q);
        CHECK(pq >= 0.0);
        CHECK(pq == distance(X, q, p));
        CHECK((pq == 0.0) == (p == q));
        CHECK(distance(X, p, r) <= pq + distance(X, q, r) + 1e-12);
    }
}

TEST_CASE("distance is invariant under relabeling edges") {
    const StarSpace X(3);
    const int perm[3] = {2, 0, 1};
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const StarPoint p = canonicalize(X, {static_cast<int>(rng() % 3), u(rng)});
        const StarPoint q = canonicalize(X, {static_cast<int>(rng() % 3), u(rng)});
        const StarPoint pp = canonicalize(X, {perm[p.edge], p.t});
        const StarPoint qq = canonicalize(X, {perm[q.edge], q.t});
        CHECK(distance(X, p, q) == distance(X, pp, qq));
    }
}
