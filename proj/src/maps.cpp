#include "hypdyn/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "hypdyn/errors.hpp"

namespace hypdyn {

// ---------------------------------------------------------------------------
// EdgeMap

EdgeMap EdgeMap::power(double p) {
    if (!(p > 0.0) || !std::isfinite(p)) throw std::domain_error("EdgeMap::power: exponent must be positive");
    EdgeMap g;
    g.family_ = Family::Power;
    g.p_ = p;
    g.inv_p_ = 1.0 / p;
    return g;
}

EdgeMap EdgeMap::pwl(std::vector<std::pair<double, double>> points) {
    if (points.size() < 2) throw std::domain_error("EdgeMap::pwl: need at least two breakpoints");
    if (points.front() != std::pair<double, double>{0.0, 0.0} || points.back() != std::pair<double, double>{1.0, 1.0})
        throw std::domain_error("EdgeMap::pwl: breakpoints must start at (0,0) and end at (1,1)");
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (!(points[i].first > points[i - 1].first) || !(points[i].second > points[i - 1].second))
            throw std::domain_error("EdgeMap::pwl: breakpoints must be strictly increasing in both coordinates");
    }
    EdgeMap g;
    g.family_ = Family::Pwl;
    g.pts_ = std::move(points);
    return g;
}

namespace {

double pwl_eval(const std::vector<std::pair<double, double>>& pts, double s, bool swap) {
    auto x_of = [&](std::size_t i) { return swap ? pts[i].second : pts[i].first; };
    auto y_of = [&](std::size_t i) { return swap ? pts[i].first : pts[i].second; };
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    std::size_t lo = 0, hi = pts.size() - 1;
    while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        if (x_of(mid) <= s) lo = mid; else hi = mid;
    }
    const double x0 = x_of(lo), x1 = x_of(hi), y0 = y_of(lo), y1 = y_of(hi);
    if (s == x0) return y0;
    double y = y0 + (s - x0) * ((y1 - y0) / (x1 - x0));
    return std::clamp(y, y0, y1);
}

}  // namespace

double EdgeMap::forward(double s) const {
    switch (family_) {
    case Family::Power:
        if (p_ == 1.0 || s == 0.0 || s == 1.0) return s;
        return std::exp(std::log(s) * p_);
    case Family::Pwl:
        return pwl_eval(pts_, s, false);
    case Family::Composite:
        for (const auto& g : chain_) s = g.forward(s);
        return s;
    }
    return s;
}

double EdgeMap::inverse(double s) const {
    switch (family_) {
    case Family::Power:
        if (p_ == 1.0 || s == 0.0 || s == 1.0) return s;
        return std::exp(std::log(s) * inv_p_);
    case Family::Pwl:
        return pwl_eval(pts_, s, true);
    case Family::Composite:
        for (auto it = chain_.rbegin(); it != chain_.rend(); ++it) s = it->inverse(s);
        return s;
    }
    return s;
}

EdgeMap EdgeMap::inverted() const {
    EdgeMap g;
    g.family_ = family_;
    switch (family_) {
    case Family::Power:
        g.p_ = inv_p_;
        g.inv_p_ = p_;
        break;
    case Family::Pwl:
        g.pts_.reserve(pts_.size());
        for (const auto& [x, y] : pts_) g.pts_.emplace_back(y, x);
        break;
    case Family::Composite:
        for (auto it = chain_.rbegin(); it != chain_.rend(); ++it) g.chain_.push_back(it->inverted());
        break;
    }
    return g;
}

EdgeMap EdgeMap::then(const EdgeMap& next) const {
    if (is_identity()) return next;
    if (next.is_identity()) return *this;
    if (family_ == Family::Power && next.family_ == Family::Power) {
        EdgeMap g;
        g.family_ = Family::Power;
        g.p_ = p_ * next.p_;
        g.inv_p_ = inv_p_ * next.inv_p_;
        return g;
    }
    if (family_ == Family::Pwl && next.family_ == Family::Pwl) {
        std::vector<double> xs;
        for (const auto& pt : pts_) xs.push_back(pt.first);
        for (const auto& pt : next.pts_) xs.push_back(inverse(pt.first));
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        std::vector<std::pair<double, double>> pts;
        for (double x : xs) pts.emplace_back(x, next.forward(forward(x)));
        pts.front() = {0.0, 0.0};
        pts.back() = {1.0, 1.0};
        bool ok = true;
        for (std::size_t i = 1; i < pts.size(); ++i)
            ok = ok && pts[i].first > pts[i - 1].first && pts[i].second > pts[i - 1].second;
        if (ok) return pwl(std::move(pts));
    }
    EdgeMap g;
    g.family_ = Family::Composite;
    auto flatten = [&](const EdgeMap& m) {
        if (m.family_ == Family::Composite)
            g.chain_.insert(g.chain_.end(), m.chain_.begin(), m.chain_.end());
        else
            g.chain_.push_back(m);
    };
    flatten(*this);
    flatten(next);
    return g;
}

// ---------------------------------------------------------------------------
// StarHomeo

StarHomeo::StarHomeo(StarSpace space, std::vector<int> perm, std::vector<EdgeMap> maps)
    : space_(std::move(space)), perm_(std::move(perm)), maps_(std::move(maps)) {
    const auto k = static_cast<std::size_t>(space_.k());
    if (perm_.size() != k) throw std::domain_error("StarHomeo: permutation size must equal k");
    if (maps_.size() != k) throw std::domain_error("StarHomeo: need one edge map per edge");
    inv_perm_.assign(k, -1);
    for (std::size_t j = 0; j < k; ++j) {
        const int target = perm_[j];
        if (target < 0 || static_cast<std::size_t>(target) >= k || inv_perm_[static_cast<std::size_t>(target)] != -1)
            throw std::domain_error("StarHomeo: edge permutation is not a bijection");
        inv_perm_[static_cast<std::size_t>(target)] = static_cast<int>(j);
    }
}

StarHomeo StarHomeo::identity(const StarSpace& space) {
    std::vector<int> perm(static_cast<std::size_t>(space.k()));
    std::iota(perm.begin(), perm.end(), 0);
    return StarHomeo(space, std::move(perm), std::vector<EdgeMap>(perm.size(), EdgeMap::identity()));
}

StarHomeo StarHomeo::inverse() const {
    const auto k = perm_.size();
    std::vector<int> perm(k);
    std::vector<EdgeMap> maps(k, EdgeMap::identity());
    for (std::size_t j = 0; j < k; ++j) {
        const auto target = static_cast<std::size_t>(perm_[j]);
        perm[target] = static_cast<int>(j);
        maps[target] = maps_[j].inverted();
    }
    return StarHomeo(space_, std::move(perm), std::move(maps));
}

StarHomeo StarHomeo::power(int m) const {
    if (m < 1) throw std::domain_error("StarHomeo::power: exponent must be >= 1");
    const auto k = perm_.size();
    std::vector<int> perm(k);
    std::vector<EdgeMap> maps(k, EdgeMap::identity());
    for (std::size_t j = 0; j < k; ++j) {
        auto e = j;
        EdgeMap g = EdgeMap::identity();
        for (int step = 0; step < m; ++step) {
            g = g.then(maps_[e]);
            e = static_cast<std::size_t>(perm_[e]);
        }
        perm[j] = static_cast<int>(e);
        maps[j] = std::move(g);
    }
    return StarHomeo(space_, std::move(perm), std::move(maps));
}

namespace {

StarPoint make_point(const StarSpace& X, int edge, double s) {
    s = std::clamp(s, 0.0, 1.0);
    const double t = s * X.length(edge);
    if (t < kBranchClampFloor) return branch_point();
    return StarPoint{edge, t};
}

}  // namespace

StarPoint apply(const StarHomeo& h, const StarPoint& p) {
    if (p.is_branch()) return branch_point();
    const auto e = static_cast<std::size_t>(p.edge);
    const double s = p.t / h.space().length(p.edge);
    const int target = h.perm()[e];
    return make_point(h.space(), target, h.edge_maps()[e].forward(s));
}

StarPoint apply_inverse(const StarHomeo& h, const StarPoint& p) {
    if (p.is_branch()) return branch_point();
    const int source = h.inverse_perm()[static_cast<std::size_t>(p.edge)];
    const double s = p.t / h.space().length(p.edge);
    return make_point(h.space(), source, h.edge_maps()[static_cast<std::size_t>(source)].inverse(s));
}

StarPoint iterate(const StarHomeo& h, const StarPoint& p, long n) {
    if (p.is_branch()) return branch_point();
    const StarSpace& X = h.space();
    int edge = p.edge;
    double s = p.t / X.length(edge);
    // Pending run of power maps: the value is exp(log_s * exponent).
    bool in_log = false;
    double log_s = 0.0;
    double exponent = 1.0;
    auto flush = [&] {
        if (in_log) {
            s = std::exp(log_s * exponent);
            in_log = false;
        }
    };
    const bool forward = n > 0;
    const long steps = forward ? n : -n;
    for (long i = 0; i < steps; ++i) {
        const int map_edge = forward ? edge : h.inverse_perm()[static_cast<std::size_t>(edge)];
        const EdgeMap& g = h.edge_maps()[static_cast<std::size_t>(map_edge)];
        if (g.family() == EdgeMap::Family::Power) {
            if (!g.is_identity()) {
                if (!in_log) {
                    if (s == 0.0 || s == 1.0) {
                        edge = forward ? h.perm()[static_cast<std::size_t>(edge)] : map_edge;
                        continue;
                    }
                    log_s = std::log(s);
                    exponent = 1.0;
                    in_log = true;
                }
                exponent *= forward ? g.exponent() : g.inverse_exponent();
            }
        } else {
            flush();
            s = forward ? g.forward(s) : g.inverse(s);
        }
        edge = forward ? h.perm()[static_cast<std::size_t>(edge)] : map_edge;
    }
    flush();
    return make_point(X, edge, s);
}

int edge_period(const StarHomeo& h) {
    const auto& perm = h.perm();
    std::vector<bool> seen(perm.size(), false);
    long period = 1;
    for (std::size_t start = 0; start < perm.size(); ++start) {
        if (seen[start]) continue;
        long len = 0;
        for (auto e = start; !seen[e]; e = static_cast<std::size_t>(perm[e])) {
            seen[e] = true;
            ++len;
        }
        period = std::lcm(period, len);
    }
    return static_cast<int>(period);
}

bool is_wandering(const StarHomeo& h, const StarPoint& p) {
    const StarPoint q = canonicalize(h.space(), p);
    if (q.is_branch() || q.t >= h.space().length(q.edge))
        throw std::domain_error("is_wandering: point must be interior to an edge");
    return iterate(h, q, edge_period(h)) != q;
}

WanderingLattice wandering_lattice(const StarHomeo& h, std::span<const StarPoint> base, int radius) {
    if (radius < 0) throw std::domain_error("wandering_lattice: radius must be >= 0");
    if (edge_period(h) != 1)
        throw std::domain_error("wandering_lattice: raise the map to its edge period first");
    WanderingLattice lat;
    lat.radius = radius;
    for (const StarPoint& raw : base) {
        const StarPoint x = canonicalize(h.space(), raw);
        if (!is_wandering(h, x))
            throw std::domain_error("wandering_lattice: base point on edge " + std::to_string(x.edge) +
                                    " is not wandering");
        std::vector<StarPoint> orbit;
        orbit.reserve(static_cast<std::size_t>(2 * radius + 1));
        for (int n = -radius; n <= radius; ++n) orbit.push_back(iterate(h, x, n));
        lat.orbits.push_back(std::move(orbit));
    }

    struct Labeled {
        StarPoint p;
        int track;
        int n;
    };
    std::vector<Labeled> all;
    for (int j = 0; j < lat.tracks(); ++j)
        for (int n = -radius; n <= radius; ++n) all.push_back({lat.at(j, n), j, n});
    std::sort(all.begin(), all.end(), [](const Labeled& a, const Labeled& b) { return a.p < b.p; });

    double delta = std::numeric_limits<double>::infinity();
    const Labeled* worst_a = nullptr;
    const Labeled* worst_b = nullptr;
    auto consider = [&](const Labeled& a, const Labeled& b, double d) {
        if (d < delta) {
            delta = d;
            worst_a = &a;
            worst_b = &b;
        }
    };
    // Nearest points on one edge are adjacent in sorted order.
    for (std::size_t i = 1; i < all.size(); ++i)
        if (all[i].p.edge == all[i - 1].p.edge) consider(all[i - 1], all[i], all[i].p.t - all[i - 1].p.t);
    // Across edges the closest pair uses the innermost point of each edge.
    std::vector<const Labeled*> innermost(static_cast<std::size_t>(h.space().k()), nullptr);
    for (const auto& l : all) {
        auto& slot = innermost[static_cast<std::size_t>(l.p.edge)];
        if (!slot) slot = &l;
    }
    for (std::size_t a = 0; a < innermost.size(); ++a)
        for (std::size_t b = a + 1; b < innermost.size(); ++b)
            if (innermost[a] && innermost[b]) consider(*innermost[a], *innermost[b], innermost[a]->p.t + innermost[b]->p.t);

    if (all.size() < 2) delta = std::numeric_limits<double>::infinity();
    if (delta == 0.0) {
        throw InvariantViolation("orbit injectivity",
                                 "grid points (" + std::to_string(worst_a->track) + "," + std::to_string(worst_a->n) +
                                     ") and (" + std::to_string(worst_b->track) + "," + std::to_string(worst_b->n) +
                                     ") coincide");
    }
    lat.delta = delta;
    return lat;
}

}  // namespace hypdyn
