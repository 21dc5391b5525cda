#pragma once

// Separated-set counts over orbit-lattice candidates.
//
// A lattice axis lists the candidate coordinates on one edge: orbit points
// x_r = h^r(x) of a wandering base point for r in a window, plus optionally
// the branch point and the outer endpoint. Every slot carries its forward
// orbit, so the orbit of a candidate is read off by index and never
// recomputed. Elements (points, arcs, star pieces, tuples, finite sets,
// unions of arcs) are small arrays of slot indices.
//
// Counting is the same first-fit greedy as greedy_separated, with one
// shortcut: a slot whose value is isolated (no other slot of its axis within
// a level) at some step cannot be matched by a different slot within eps, so
// elements with different "resolved" content are never within eps of each
// other. Elements are bucketed by that content and only compared inside a
// bucket; an element whose bucket can hold nothing else is accepted outright.

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

#include "hypdyn/maps.hpp"
#include "hypdyn/spaces.hpp"

namespace hypdyn {

inline constexpr long kBranchLabel = std::numeric_limits<long>::min();
inline constexpr long kOuterLabel = std::numeric_limits<long>::max();

struct LatticeAxis {
    int edge = 0;
    int horizon = 0;             // orbit length stored per slot
    std::vector<double> values;  // slot-major: slot s holds values[s*horizon, (s+1)*horizon)
    std::vector<long> labels;    // orbit index r, kBranchLabel or kOuterLabel; slots in increasing t

    int size() const { return static_cast<int>(labels.size()); }
    const double* orbit(int s) const { return values.data() + static_cast<std::size_t>(s) * static_cast<std::size_t>(horizon); }
    double value(int s) const { return orbit(s)[0]; }
    /// resolved[s] != 0 iff at some step < n the slot is at distance >= level
    /// from every other slot of the axis.
    std::vector<char> resolved(int n, double level) const;
};

/// Slots for r in [r_lo, r_hi] (plus sentinels), each with `horizon` forward
/// steps. Requires edge_period(h) == 1. A slot whose stored orbit coincides
/// with that of its predecessor in spatial order is dropped: the two are the
/// same element for every d_n with n <= horizon.
LatticeAxis make_axis(const StarHomeo& h, const StarPoint& base, long r_lo, long r_hi, int horizon,
                      bool with_branch, bool with_outer);

enum class LatticeKind {
    Points,     // one slot of axis 0
    Arcs,       // slots a <= b of axis 0: the arc [a, b]
    StarY,      // one slot per axis (reach on each edge), at least two off the branch point
    Product,    // one slot per axis, max metric
    FiniteSets, // 1..q distinct slots of axis 0
    ArcUnions,  // 1..q disjoint arcs with ends on slots of axis 0 (interval, k = 1)
};
const char* to_string(LatticeKind k);

inline constexpr int kMaxElementSlots = 8;

struct LatticeElement {
    std::array<std::uint16_t, kMaxElementSlots> s{};
    std::uint8_t len = 0;
};

struct LatticeProblem {
    LatticeKind kind = LatticeKind::Points;
    std::vector<const LatticeAxis*> axes;
    int q = 1;  // FiniteSets / ArcUnions
};

struct LatticeCount {
    std::uint64_t count = 0;
    std::uint64_t candidates = 0;
    std::uint64_t direct = 0;    // accepted without comparisons
    std::uint64_t compared = 0;  // pairwise d_n evaluations
};

/// Greedy (n, eps)-separated count over all elements of the problem, in
/// lexicographic slot order (shorter prefixes first).
LatticeCount lattice_separated(const LatticeProblem& p, int n, double eps);

/// Same count by plain first-fit over all elements; for cross-checks.
LatticeCount lattice_separated_naive(const LatticeProblem& p, int n, double eps);

/// All elements in greedy order.
std::vector<LatticeElement> lattice_elements(const LatticeProblem& p);

/// d_n between two elements read from the lattice.
double lattice_distance(const LatticeProblem& p, const LatticeElement& a, const LatticeElement& b, int n);

}  // namespace hypdyn
