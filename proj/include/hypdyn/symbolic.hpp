#pragma once

// Binary multi-track coding of finite sets along wandering orbits, factor
// extraction and complexity counts.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hypdyn/growth.hpp"
#include "hypdyn/hyperspace.hpp"
#include "hypdyn/maps.hpp"

namespace hypdyn {

using BigInt = boost::multiprecision::cpp_int;

/// Natural log of a positive big integer.
double log_big(const BigInt& x);

struct SymbolWindow {
    int tracks = 1;
    long lo = 0;
    long hi = -1;
    std::vector<std::uint8_t> bits;  // bits[j * length() + (n - lo)]

    SymbolWindow() = default;
    SymbolWindow(int k, long lo_, long hi_);

    long length() const { return hi - lo + 1; }
    int bit(int track, long n) const { return bits[index(track, n)]; }
    void set(int track, long n, int v) { bits[index(track, n)] = static_cast<std::uint8_t>(v != 0); }
    /// The k bits at index n, track j in bit j.
    std::uint64_t letter(long n) const;

    bool operator==(const SymbolWindow&) const = default;

private:
    std::size_t index(int track, long n) const {
        return static_cast<std::size_t>(track) * static_cast<std::size_t>(length()) + static_cast<std::size_t>(n - lo);
    }
};

enum class FamilyKind { AtMostOnePerTrack, FullShift };
const char* to_string(FamilyKind f);

struct SymbolicFamily {
    FamilyKind kind = FamilyKind::FullShift;
    int k = 1;
};

/// Bit (j, n) = 1 iff h^n(x^j) lies in K, for |n| <= m.
SymbolWindow code_set(const StarHomeo& h, std::span<const StarPoint> base, const FinitePointSet& K, int m);
SymbolWindow code_set(const WanderingLattice& lattice, const FinitePointSet& K);

/// Index range translated by -l.
SymbolWindow shift(const SymbolWindow& w, long l);

/// Distinct length-m factors. Words are packed k*m bits, letter i in bits
/// [i*k, (i+1)*k); a uint64 fast path covers k*m <= 64.
class WordSet {
public:
    WordSet(int k, int m) : k_(k), m_(m) {}
    int k() const { return k_; }
    int m() const { return m_; }
    std::size_t size() const { return narrow_.size() + wide_.size(); }
    long skipped() const { return skipped_; }

    void add_from(const SymbolWindow& w);
    void merge(const WordSet& other);
    bool contains(const std::vector<std::uint64_t>& letters) const;

private:
    int k_;
    int m_;
    long skipped_ = 0;
    std::unordered_set<std::uint64_t> narrow_;
    std::unordered_set<std::string> wide_;
};

/// Windows shorter than m are skipped and counted in WordSet::skipped().
WordSet words_sampled(std::span<const SymbolWindow> windows, int m);

/// (m+1)^k for at-most-one-per-track, 2^(k m) for the full shift.
BigInt complexity_enumerated(const SymbolicFamily& fam, int m);

/// Nonempty cells of the join of l shifted copies of the (2n+1)-cylinder
/// cover, counted as admissible chains of overlapping cylinders.
BigInt cylinder_join_count(const SymbolicFamily& fam, int n, int l);
/// Same count over the cylinder chains that occur in the given windows.
BigInt cylinder_join_count(std::span<const SymbolWindow> windows, int n, int l);

/// Needs >= 8 distinct m, positive nondecreasing counts.
GrowthFit entropy_from_complexity(const std::map<long, BigInt>& counts, GrowthMode mode);

}  // namespace hypdyn
