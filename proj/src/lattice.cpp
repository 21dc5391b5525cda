#include "hypdyn/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hypdyn/kernels.hpp"

namespace hypdyn {

const char* to_string(LatticeKind k) {
    switch (k) {
    case LatticeKind::Points: return "points";
    case LatticeKind::Arcs: return "arcs";
    case LatticeKind::StarY: return "star_y";
    case LatticeKind::Product: return "product";
    case LatticeKind::FiniteSets: return "finite_sets";
    case LatticeKind::ArcUnions: return "arc_unions";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Axes

LatticeAxis make_axis(const StarHomeo& h, const StarPoint& raw_base, long r_lo, long r_hi, int horizon,
                      bool with_branch, bool with_outer) {
    if (edge_period(h) != 1) throw std::domain_error("make_axis: map must fix every edge");
    if (r_lo > r_hi) throw std::domain_error("make_axis: empty orbit window");
    if (horizon < 1) throw std::domain_error("make_axis: horizon must be >= 1");
    const StarPoint base = canonicalize(h.space(), raw_base);
    if (!is_wandering(h, base)) throw std::domain_error("make_axis: base point is not wandering");
    const double L = h.space().length(base.edge);
    const bool decreasing = iterate(h, base, 1).t < base.t;

    const long first = r_lo, last = r_hi + horizon - 1;
    std::vector<double> orbit(static_cast<std::size_t>(last - first + 1));
    for (long i = first; i <= last; ++i) orbit[static_cast<std::size_t>(i - first)] = iterate(h, base, i).t;

    LatticeAxis ax;
    ax.edge = base.edge;
    ax.horizon = horizon;
    auto push = [&](long label, const double* src, double constant) {
        const std::size_t at = ax.values.size();
        if (src)
            ax.values.insert(ax.values.end(), src, src + horizon);
        else
            ax.values.insert(ax.values.end(), static_cast<std::size_t>(horizon), constant);
        if (!ax.labels.empty()) {
            const double* prev = ax.values.data() + at - static_cast<std::size_t>(horizon);
            if (std::equal(prev, prev + horizon, ax.values.data() + at)) {
                ax.values.resize(at);
                return;
            }
        }
        ax.labels.push_back(label);
    };
    if (with_branch) push(kBranchLabel, nullptr, 0.0);
    for (long i = 0; i <= r_hi - r_lo; ++i) {
        const long r = decreasing ? r_hi - i : r_lo + i;
        push(r, orbit.data() + (r - first), 0.0);
    }
    if (with_outer) push(kOuterLabel, nullptr, L);
    if (ax.labels.size() > 65535) throw std::domain_error("make_axis: too many slots");
    return ax;
}

std::vector<char> LatticeAxis::resolved(int n, double level) const {
    const int W = size();
    std::vector<char> out(static_cast<std::size_t>(W), 0);
    const int steps = std::min(n, horizon);
    for (int s = 0; s < W; ++s) {
        const double* o = orbit(s);
        const double* lo = s > 0 ? orbit(s - 1) : nullptr;
        const double* hi = s + 1 < W ? orbit(s + 1) : nullptr;
        for (int k = 0; k < steps; ++k) {
            if ((!lo || o[k] - lo[k] >= level) && (!hi || hi[k] - o[k] >= level)) {
                out[static_cast<std::size_t>(s)] = 1;
                break;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Enumeration in greedy order

namespace {

void validate(const LatticeProblem& p, int n) {
    if (p.axes.empty()) throw std::domain_error("lattice: no axes");
    for (const auto* ax : p.axes) {
        if (!ax) throw std::domain_error("lattice: null axis");
        if (ax->horizon < n) throw std::domain_error("lattice: axis horizon shorter than n");
        if (ax->size() == 0) throw std::domain_error("lattice: empty axis");
    }
    switch (p.kind) {
    case LatticeKind::Points:
    case LatticeKind::Arcs:
        break;
    case LatticeKind::StarY:
        if (p.axes.size() < 2) throw std::domain_error("lattice: star pieces need at least two edges");
        [[fallthrough]];
    case LatticeKind::Product:
        if (p.axes.size() > kMaxElementSlots) throw std::domain_error("lattice: too many axes");
        break;
    case LatticeKind::FiniteSets:
        if (p.q < 1 || p.q > kMaxElementSlots) throw std::domain_error("lattice: set size out of range");
        break;
    case LatticeKind::ArcUnions:
        if (p.q < 1 || 2 * p.q > kMaxElementSlots) throw std::domain_error("lattice: component count out of range");
        break;
    }
}

template <class F>
void enumerate(const LatticeProblem& p, F&& emit) {
    LatticeElement e;
    const int W = p.axes[0]->size();
    switch (p.kind) {
    case LatticeKind::Points:
        e.len = 1;
        for (int s = 0; s < W; ++s) {
            e.s[0] = static_cast<std::uint16_t>(s);
            emit(e);
        }
        return;
    case LatticeKind::Arcs:
        e.len = 2;
        for (int a = 0; a < W; ++a)
            for (int b = a; b < W; ++b) {
                e.s[0] = static_cast<std::uint16_t>(a);
                e.s[1] = static_cast<std::uint16_t>(b);
                emit(e);
            }
        return;
    case LatticeKind::StarY:
    case LatticeKind::Product: {
        const int d = static_cast<int>(p.axes.size());
        e.len = static_cast<std::uint8_t>(d);
        const bool star = p.kind == LatticeKind::StarY;
        for (;;) {
            bool ok = true;
            if (star) {
                int off = 0;
                for (int j = 0; j < d; ++j)
                    off += p.axes[static_cast<std::size_t>(j)]->labels[e.s[static_cast<std::size_t>(j)]] != kBranchLabel;
                ok = off >= 2;
            }
            if (ok) emit(e);
            int j = d - 1;
            while (j >= 0 && e.s[static_cast<std::size_t>(j)] + 1 == p.axes[static_cast<std::size_t>(j)]->size()) {
                e.s[static_cast<std::size_t>(j)] = 0;
                --j;
            }
            if (j < 0) return;
            ++e.s[static_cast<std::size_t>(j)];
        }
    }
    case LatticeKind::FiniteSets: {
        auto rec = [&](auto&& self, int start, int depth) -> void {
            for (int s = start; s < W; ++s) {
                e.s[static_cast<std::size_t>(depth)] = static_cast<std::uint16_t>(s);
                e.len = static_cast<std::uint8_t>(depth + 1);
                emit(e);
                if (depth + 1 < p.q) self(self, s + 1, depth + 1);
            }
        };
        rec(rec, 0, 0);
        return;
    }
    case LatticeKind::ArcUnions: {
        auto rec = [&](auto&& self, int start, int comp) -> void {
            for (int a = start; a < W; ++a)
                for (int b = a; b < W; ++b) {
                    e.s[static_cast<std::size_t>(2 * comp)] = static_cast<std::uint16_t>(a);
                    e.s[static_cast<std::size_t>(2 * comp + 1)] = static_cast<std::uint16_t>(b);
                    e.len = static_cast<std::uint8_t>(2 * comp + 2);
                    emit(e);
                    if (comp + 1 < p.q) self(self, b + 1, comp + 1);
                }
        };
        rec(rec, 0, 0);
        return;
    }
    }
}

inline std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    std::uint64_t z = h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

bool chebyshev_kind(LatticeKind k) {
    return k == LatticeKind::Points || k == LatticeKind::Arcs || k == LatticeKind::StarY || k == LatticeKind::Product;
}

const LatticeAxis& coord_axis(const LatticeProblem& p, int j) {
    if (p.kind == LatticeKind::StarY || p.kind == LatticeKind::Product) return *p.axes[static_cast<std::size_t>(j)];
    return *p.axes[0];
}

// Hausdorff distance between two unions of intervals on the line.
double union_directed(const double* A, int na, const double* B, int nb) {
    double worst = 0.0;
    auto dist = [&](double x) {
        double d = std::numeric_limits<double>::infinity();
        for (int i = 0; i < nb; ++i) {
            const double lo = B[2 * i], hi = B[2 * i + 1];
            d = std::min(d, x < lo ? lo - x : (x > hi ? x - hi : 0.0));
        }
        return d;
    };
    for (int i = 0; i < na; ++i) {
        const double lo = A[2 * i], hi = A[2 * i + 1];
        worst = std::max({worst, dist(lo), dist(hi)});
        for (int j = 0; j + 1 < nb; ++j) {
            const double mid = 0.5 * (B[2 * j + 1] + B[2 * j + 2]);
            if (mid > lo && mid < hi) worst = std::max(worst, dist(mid));
        }
    }
    return worst;
}

double unions_hausdorff_at(const LatticeAxis& ax, const LatticeElement& a, const LatticeElement& b, int k) {
    double A[kMaxElementSlots], B[kMaxElementSlots];
    for (int i = 0; i < a.len; ++i) A[i] = ax.orbit(a.s[static_cast<std::size_t>(i)])[k];
    for (int i = 0; i < b.len; ++i) B[i] = ax.orbit(b.s[static_cast<std::size_t>(i)])[k];
    return std::max(union_directed(A, a.len / 2, B, b.len / 2), union_directed(B, b.len / 2, A, a.len / 2));
}

class Context {
public:
    Context(const LatticeProblem& p, int n, double eps) : p_(p), n_(n), eps_(eps), kern_(kernels::active()) {
        const double level = p.kind == LatticeKind::ArcUnions ? 2.0 * eps : eps;
        for (const auto* ax : p.axes) {
            res_.push_back(ax->resolved(n, level));
            std::vector<int> prefix(res_.back().size() + 1, 0);
            for (std::size_t s = 0; s < res_.back().size(); ++s) prefix[s + 1] = prefix[s] + res_.back()[s];
            prefix_.push_back(std::move(prefix));
        }
    }

    // Returns the bucket key; `all` is set when the element is fully determined by it.
    std::uint64_t classify(const LatticeElement& e, bool& all) const {
        std::uint64_t h = 0x12345;
        all = true;
        if (chebyshev_kind(p_.kind)) {
            for (int j = 0; j < e.len; ++j) {
                const auto s = e.s[static_cast<std::size_t>(j)];
                const bool r = res_[axis_index(j)][s];
                all = all && r;
                h = mix(h, r ? static_cast<std::uint64_t>(s) + 1 : 0);
            }
            return h;
        }
        const auto& res = res_[0];
        if (p_.kind == LatticeKind::FiniteSets) {
            for (int j = 0; j < e.len; ++j) {
                const auto s = e.s[static_cast<std::size_t>(j)];
                if (res[s]) h = mix(h, static_cast<std::uint64_t>(s) + 1);
                else all = false;
            }
            return h;
        }
        // Unions of arcs: the role of every resolved slot (outside, inside, or
        // which sides of it are covered) in run form, adjacent runs glued when
        // the gap between them contains no resolved slot and no resolved end.
        const auto& pre = prefix_[0];
        long run_lo = -1, run_hi = -1;
        bool run_left = false, run_right = false;
        auto flush = [&] {
            if (run_lo < 0) return;
            h = mix(h, static_cast<std::uint64_t>(run_lo));
            h = mix(h, static_cast<std::uint64_t>(run_hi) * 4 + (run_left ? 2 : 0) + (run_right ? 1 : 0));
        };
        for (int c = 0; c < e.len / 2; ++c) {
            const auto a = e.s[static_cast<std::size_t>(2 * c)], b = e.s[static_cast<std::size_t>(2 * c + 1)];
            const bool ra = res[a], rb = res[b];
            all = all && ra && rb;
            const long lo = pre[a], hi = pre[static_cast<std::size_t>(b) + 1] - 1;
            if (lo > hi) continue;
            if (run_lo >= 0 && run_hi + 1 == lo && !run_right && !ra) {
                run_hi = hi;
                run_right = rb;
                continue;
            }
            flush();
            run_lo = lo;
            run_hi = hi;
            run_left = ra;
            run_right = rb;
        }
        flush();
        return h;
    }

    bool within(const LatticeElement& a, const LatticeElement& b) const {
        const auto n = static_cast<std::size_t>(n_);
        if (chebyshev_kind(p_.kind)) {
            for (int j = 0; j < a.len; ++j) {
                const auto& ax = coord_axis(p_, j);
                const auto sa = a.s[static_cast<std::size_t>(j)], sb = b.s[static_cast<std::size_t>(j)];
                if (sa != sb && !kern_.within_all(ax.orbit(sa), ax.orbit(sb), n, eps_)) return false;
            }
            return true;
        }
        const auto& ax = *p_.axes[0];
        // Same number of points: matching them in order bounds d_H from above.
        if (a.len == b.len) {
            bool matched = true;
            for (int i = 0; i < a.len && matched; ++i) {
                const auto sa = a.s[static_cast<std::size_t>(i)], sb = b.s[static_cast<std::size_t>(i)];
                matched = sa == sb || kern_.within_all(ax.orbit(sa), ax.orbit(sb), n, eps_);
            }
            if (matched) return true;
        }
        if (p_.kind == LatticeKind::FiniteSets) {
            const double* A[kMaxElementSlots];
            const double* B[kMaxElementSlots];
            for (int i = 0; i < a.len; ++i) A[i] = ax.orbit(a.s[static_cast<std::size_t>(i)]);
            for (int i = 0; i < b.len; ++i) B[i] = ax.orbit(b.s[static_cast<std::size_t>(i)]);
            return kern_.point_sets_within(A, a.len, B, b.len, n, eps_);
        }
        for (int k = 0; k < n_; ++k) {
            if (a.len == b.len) {
                double bound = 0.0;
                for (int i = 0; i < a.len; ++i)
                    bound = std::max(bound, std::fabs(ax.orbit(a.s[static_cast<std::size_t>(i)])[k] -
                                                      ax.orbit(b.s[static_cast<std::size_t>(i)])[k]));
                if (bound < eps_) continue;
            }
            if (!(unions_hausdorff_at(ax, a, b, k) < eps_)) return false;
        }
        return true;
    }

private:
    std::size_t axis_index(int j) const {
        return (p_.kind == LatticeKind::StarY || p_.kind == LatticeKind::Product) ? static_cast<std::size_t>(j) : 0;
    }

    const LatticeProblem& p_;
    int n_;
    double eps_;
    const kernels::KernelTable& kern_;
    std::vector<std::vector<char>> res_;
    std::vector<std::vector<int>> prefix_;
};

// Open-addressing table from 64-bit keys to 32-bit values; key 0 is remapped.
class FlatMap {
public:
    static constexpr std::uint32_t kNone = 0xffffffffu;

    FlatMap() { rehash(1u << 12); }

    std::uint32_t* find_or_insert(std::uint64_t key) {
        if (2 * (size_ + 1) > keys_.size()) rehash(keys_.size() * 2);
        key = key ? key : 1;
        std::size_t i = slot(key);
        while (keys_[i] != 0) {
            if (keys_[i] == key) return &vals_[i];
            i = (i + 1) & mask_;
        }
        keys_[i] = key;
        vals_[i] = kNone;
        ++size_;
        return &vals_[i];
    }
    bool contains(std::uint64_t key) const {
        key = key ? key : 1;
        for (std::size_t i = slot(key); keys_[i] != 0; i = (i + 1) & mask_)
            if (keys_[i] == key) return true;
        return false;
    }

private:
    std::size_t slot(std::uint64_t key) const { return static_cast<std::size_t>(key * 0x9e3779b97f4a7c15ULL >> 20) & mask_; }
    void rehash(std::size_t cap) {
        std::vector<std::uint64_t> old_keys = std::move(keys_);
        std::vector<std::uint32_t> old_vals = std::move(vals_);
        keys_.assign(cap, 0);
        vals_.assign(cap, kNone);
        mask_ = cap - 1;
        for (std::size_t j = 0; j < old_keys.size(); ++j) {
            if (old_keys[j] == 0) continue;
            std::size_t i = slot(old_keys[j]);
            while (keys_[i] != 0) i = (i + 1) & mask_;
            keys_[i] = old_keys[j];
            vals_[i] = old_vals[j];
        }
    }

    std::vector<std::uint64_t> keys_;
    std::vector<std::uint32_t> vals_;
    std::size_t mask_ = 0;
    std::size_t size_ = 0;
};

}  // namespace

std::vector<LatticeElement> lattice_elements(const LatticeProblem& p) {
    validate(p, 0);
    std::vector<LatticeElement> out;
    enumerate(p, [&](const LatticeElement& e) { out.push_back(e); });
    return out;
}

double lattice_distance(const LatticeProblem& p, const LatticeElement& a, const LatticeElement& b, int n) {
    validate(p, n);
    double d = 0.0;
    for (int k = 0; k < n; ++k) {
        if (chebyshev_kind(p.kind)) {
            for (int j = 0; j < a.len; ++j) {
                const auto& ax = coord_axis(p, j);
                d = std::max(d, std::fabs(ax.orbit(a.s[static_cast<std::size_t>(j)])[k] -
                                          ax.orbit(b.s[static_cast<std::size_t>(j)])[k]));
            }
        } else if (p.kind == LatticeKind::FiniteSets) {
            const auto& ax = *p.axes[0];
            auto directed = [&](const LatticeElement& x, const LatticeElement& y) {
                double w = 0.0;
                for (int i = 0; i < x.len; ++i) {
                    double best = std::numeric_limits<double>::infinity();
                    for (int j = 0; j < y.len; ++j)
                        best = std::min(best, std::fabs(ax.orbit(x.s[static_cast<std::size_t>(i)])[k] -
                                                        ax.orbit(y.s[static_cast<std::size_t>(j)])[k]));
                    w = std::max(w, best);
                }
                return w;
            };
            d = std::max({d, directed(a, b), directed(b, a)});
        } else {
            d = std::max(d, unions_hausdorff_at(*p.axes[0], a, b, k));
        }
    }
    return d;
}

LatticeCount lattice_separated(const LatticeProblem& p, int n, double eps) {
    validate(p, n);
    if (!(eps > 0.0)) throw std::domain_error("lattice_separated: eps must be positive");
    const Context ctx(p, n, eps);

    // Pass 1: keys that some element with an unresolved part can carry.
    FlatMap shared;
    enumerate(p, [&](const LatticeElement& e) {
        bool all;
        const auto key = ctx.classify(e, all);
        if (!all) shared.find_or_insert(key);
    });

    // Pass 2: first-fit, comparing only inside buckets.
    constexpr std::uint32_t nil = FlatMap::kNone;
    LatticeCount out;
    FlatMap head;
    std::vector<LatticeElement> store;
    std::vector<std::uint32_t> next;
    enumerate(p, [&](const LatticeElement& e) {
        ++out.candidates;
        bool all;
        const auto key = ctx.classify(e, all);
        if (all && !shared.contains(key)) {
            ++out.count;
            ++out.direct;
            return;
        }
        std::uint32_t* first = head.find_or_insert(key);
        for (std::uint32_t i = *first; i != nil; i = next[i]) {
            ++out.compared;
            if (ctx.within(e, store[i])) return;
        }
        next.push_back(*first);
        *first = static_cast<std::uint32_t>(store.size());
        store.push_back(e);
        ++out.count;
    });
    return out;
}

LatticeCount lattice_separated_naive(const LatticeProblem& p, int n, double eps) {
    validate(p, n);
    if (!(eps > 0.0)) throw std::domain_error("lattice_separated_naive: eps must be positive");
    LatticeCount out;
    std::vector<LatticeElement> accepted;
    enumerate(p, [&](const LatticeElement& e) {
        ++out.candidates;
        for (const auto& a : accepted) {
            ++out.compared;
            if (lattice_distance(p, e, a, n) < eps) return;
        }
        accepted.push_back(e);
    });
    out.count = accepted.size();
    return out;
}

}  // namespace hypdyn
