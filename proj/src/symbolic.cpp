#include "hypdyn/symbolic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>

namespace hypdyn {

double log_big(const BigInt& x) {
    if (x <= 0) throw std::domain_error("log_big: argument must be positive");
    const std::size_t bits = boost::multiprecision::msb(x) + 1;
    if (bits <= 60) return std::log(static_cast<double>(x.convert_to<unsigned long long>()));
    const std::size_t drop = bits - 60;
    const BigInt top = x >> drop;
    return std::log(static_cast<double>(top.convert_to<unsigned long long>())) +
           static_cast<double>(drop) * std::log(2.0);
}

SymbolWindow::SymbolWindow(int k, long lo_, long hi_) : tracks(k), lo(lo_), hi(hi_) {
    if (k < 1) throw std::domain_error("SymbolWindow: need at least one track");
    if (hi < lo) throw std::domain_error("SymbolWindow: empty index range");
    bits.assign(static_cast<std::size_t>(k) * static_cast<std::size_t>(length()), 0);
}

std::uint64_t SymbolWindow::letter(long n) const {
    std::uint64_t v = 0;
    for (int j = 0; j < tracks; ++j) v |= static_cast<std::uint64_t>(bit(j, n)) << j;
    return v;
}

const char* to_string(FamilyKind f) {
    return f == FamilyKind::AtMostOnePerTrack ? "at_most_one_per_track" : "full_shift";
}

// ---------------------------------------------------------------------------
// Coding

SymbolWindow code_set(const WanderingLattice& lattice, const FinitePointSet& K) {
    const int k = lattice.tracks();
    SymbolWindow w(k, -lattice.radius, lattice.radius);
    auto less = [](const StarPoint& a, const StarPoint& b) { return a < b; };
    for (int j = 0; j < k; ++j)
        for (long n = -lattice.radius; n <= lattice.radius; ++n)
            w.set(j, n, std::binary_search(K.points.begin(), K.points.end(), lattice.at(j, static_cast<int>(n)), less));
    return w;
}

SymbolWindow code_set(const StarHomeo& h, std::span<const StarPoint> base, const FinitePointSet& K, int m) {
    return code_set(wandering_lattice(h, base, m), K);
}

SymbolWindow shift(const SymbolWindow& w, long l) {
    SymbolWindow out = w;
    out.lo -= l;
    out.hi -= l;
    return out;
}

// ---------------------------------------------------------------------------
// Words

void WordSet::add_from(const SymbolWindow& w) {
    if (w.tracks != k_) throw std::domain_error("WordSet: track count mismatch");
    if (w.length() < m_) {
        ++skipped_;
        return;
    }
    const long total_bits = static_cast<long>(k_) * m_;
    std::vector<std::uint64_t> letters(static_cast<std::size_t>(w.length()));
    for (long n = w.lo; n <= w.hi; ++n) letters[static_cast<std::size_t>(n - w.lo)] = w.letter(n);
    if (total_bits <= 64) {
        std::uint64_t word = 0;
        // Rolling window: new letters enter at the top.
        for (long i = 0; i < w.length(); ++i) {
            const std::uint64_t a = letters[static_cast<std::size_t>(i)];
            word = total_bits == k_ ? a : (word >> k_) | (a << (total_bits - k_));
            if (i + 1 >= m_) narrow_.insert(word);
        }
        return;
    }
    const std::size_t bytes = static_cast<std::size_t>((total_bits + 7) / 8);
    std::string word(bytes, '\0');
    for (long start = 0; start + m_ <= w.length(); ++start) {
        std::fill(word.begin(), word.end(), '\0');
        long pos = 0;
        for (long i = 0; i < m_; ++i) {
            const std::uint64_t a = letters[static_cast<std::size_t>(start + i)];
            for (int j = 0; j < k_; ++j, ++pos)
                if ((a >> j) & 1U) word[static_cast<std::size_t>(pos / 8)] |= static_cast<char>(1 << (pos % 8));
        }
        wide_.insert(word);
    }
}

void WordSet::merge(const WordSet& other) {
    if (other.k_ != k_ || other.m_ != m_) throw std::domain_error("WordSet::merge: shape mismatch");
    narrow_.insert(other.narrow_.begin(), other.narrow_.end());
    wide_.insert(other.wide_.begin(), other.wide_.end());
    skipped_ += other.skipped_;
}

bool WordSet::contains(const std::vector<std::uint64_t>& letters) const {
    if (static_cast<int>(letters.size()) != m_) return false;
    SymbolWindow w(k_, 0, m_ - 1);
    for (int i = 0; i < m_; ++i)
        for (int j = 0; j < k_; ++j) w.set(j, i, static_cast<int>((letters[static_cast<std::size_t>(i)] >> j) & 1U));
    WordSet probe(k_, m_);
    probe.add_from(w);
    if (!probe.narrow_.empty()) return narrow_.count(*probe.narrow_.begin()) > 0;
    return wide_.count(*probe.wide_.begin()) > 0;
}

WordSet words_sampled(std::span<const SymbolWindow> windows, int m) {
    if (m < 1) throw std::domain_error("words_sampled: m must be >= 1");
    const int k = windows.empty() ? 1 : windows.front().tracks;
    WordSet ws(k, m);
    for (const auto& w : windows) ws.add_from(w);
    return ws;
}

// ---------------------------------------------------------------------------
// Counts

BigInt complexity_enumerated(const SymbolicFamily& fam, int m) {
    if (m < 1) throw std::domain_error("complexity_enumerated: m must be >= 1");
    if (fam.k < 1) throw std::domain_error("complexity_enumerated: k must be >= 1");
    if (fam.kind == FamilyKind::FullShift) return BigInt(1) << (static_cast<unsigned>(fam.k) * static_cast<unsigned>(m));
    return boost::multiprecision::pow(BigInt(m + 1), static_cast<unsigned>(fam.k));
}

BigInt cylinder_join_count(const SymbolicFamily& fam, int n, int l) {
    if (n < 0 || l < 1) throw std::domain_error("cylinder_join_count: need n >= 0 and l >= 1");
    const int w = 2 * n + 1;
    if (w > 20) throw std::domain_error("cylinder_join_count: cylinder width too large");
    const std::uint32_t blocks = 1U << w;
    const bool sparse = fam.kind == FamilyKind::AtMostOnePerTrack;
    // State: (current block, ones seen so far along the chain), ones capped at 2.
    std::vector<BigInt> cur(static_cast<std::size_t>(blocks) * 3), next(cur.size());
    auto at = [](std::vector<BigInt>& v, std::uint32_t b, int ones) -> BigInt& {
        return v[static_cast<std::size_t>(b) * 3 + static_cast<std::size_t>(ones)];
    };
    for (std::uint32_t b = 0; b < blocks; ++b) {
        const int ones = std::popcount(b);
        if (sparse && ones > 1) continue;
        at(cur, b, std::min(ones, 2)) += 1;
    }
    for (int step = 1; step < l; ++step) {
        std::fill(next.begin(), next.end(), BigInt(0));
        for (std::uint32_t b = 0; b < blocks; ++b)
            for (int ones = 0; ones < 3; ++ones) {
                const BigInt& c = at(cur, b, ones);
                if (c == 0) continue;
                // The next cylinder drops the oldest symbol (bit 0) and appends one at the top.
                for (std::uint32_t s = 0; s < 2; ++s) {
                    const std::uint32_t nb = (b >> 1) | (s << (w - 1));
                    const int nones = std::min(ones + static_cast<int>(s), 2);
                    if (sparse && nones > 1) continue;
                    at(next, nb, nones) += c;
                }
            }
        std::swap(cur, next);
    }
    BigInt per_track = 0;
    for (const auto& c : cur) per_track += c;
    return boost::multiprecision::pow(per_track, static_cast<unsigned>(fam.k));
}

BigInt cylinder_join_count(std::span<const SymbolWindow> windows, int n, int l) {
    if (n < 0 || l < 1) throw std::domain_error("cylinder_join_count: need n >= 0 and l >= 1");
    const long w = 2L * n + 1;
    std::set<std::vector<std::string>> chains;
    for (const auto& win : windows) {
        const long span_len = w + l - 1;
        for (long start = win.lo; start + span_len - 1 <= win.hi; ++start) {
            std::vector<std::string> chain;
            chain.reserve(static_cast<std::size_t>(l));
            for (long j = 0; j < l; ++j) {
                std::string block;
                for (long i = 0; i < w; ++i) {
                    const std::uint64_t a = win.letter(start + j + i);
                    for (int t = 0; t < win.tracks; ++t) block.push_back(static_cast<char>('0' + ((a >> t) & 1U)));
                }
                chain.push_back(std::move(block));
            }
            chains.insert(std::move(chain));
        }
    }
    return BigInt(chains.size());
}

GrowthFit entropy_from_complexity(const std::map<long, BigInt>& counts, GrowthMode mode) {
    if (counts.size() < 8) throw std::domain_error("entropy_from_complexity: need counts at >= 8 distinct m");
    std::vector<GrowthRow> rows;
    const BigInt* prev = nullptr;
    for (const auto& [m, c] : counts) {
        if (c <= 0) throw std::domain_error("entropy_from_complexity: counts must be positive");
        if (prev && c < *prev) throw std::domain_error("entropy_from_complexity: counts must be nondecreasing in m");
        prev = &c;
        GrowthRow r;
        r.n = m;
        r.log_count = log_big(c);
        r.count = std::exp(r.log_count);
        rows.push_back(r);
    }
    return fit_growth(std::move(rows), mode);
}

}  // namespace hypdyn
