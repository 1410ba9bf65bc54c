#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace cshift {

/// Alphabet letters are identified with integers.
using Symbol = std::int64_t;

inline constexpr Symbol kNegInf = std::numeric_limits<Symbol>::min();
inline constexpr Symbol kPosInf = std::numeric_limits<Symbol>::max();

/// Largest magnitude a concrete letter may have. Keeps interval arithmetic
/// away from the infinite sentinels.
inline constexpr Symbol kMaxLetter = Symbol{1} << 60;

/// Closed interval [lo, hi]; lo may be kNegInf and hi may be kPosInf.
struct Interval {
    Symbol lo;
    Symbol hi;

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// A set of letters stored as a normalized list of disjoint, non-adjacent
/// intervals in increasing order. Closed under the boolean operations, so
/// follower and predecessor sets over infinite alphabets stay exact.
class SymbolSet {
public:
    SymbolSet() = default;

    static SymbolSet all();
    static SymbolSet single(Symbol a);
    static SymbolSet range(Symbol lo, Symbol hi);
    static SymbolSet at_least(Symbol lo) { return range(lo, kPosInf); }
    static SymbolSet at_most(Symbol hi) { return range(kNegInf, hi); }
    static SymbolSet of(const std::vector<Symbol>& letters);
    static SymbolSet from_intervals(std::vector<Interval> parts);

    bool empty() const { return parts_.empty(); }
    bool contains(Symbol a) const;
    bool is_finite() const;
    bool is_cofinite_in(const SymbolSet& universe) const;
    bool bounded_below() const { return empty() || parts_.front().lo != kNegInf; }
    bool bounded_above() const { return empty() || parts_.back().hi != kPosInf; }
    bool subset_of(const SymbolSet& other) const;

    /// Number of letters; nullopt when infinite.
    std::optional<std::uint64_t> size() const;
    std::optional<Symbol> min() const;
    std::optional<Symbol> max() const;

    /// All letters of a finite set in increasing order. Throws on infinite sets.
    std::vector<Symbol> elements() const;

    const std::vector<Interval>& intervals() const { return parts_; }

    SymbolSet operator|(const SymbolSet& other) const;
    SymbolSet operator&(const SymbolSet& other) const;
    SymbolSet operator-(const SymbolSet& other) const;
    SymbolSet complement() const;

    /// { a + c : a in this }.
    SymbolSet translate(Symbol c) const;
    /// Minkowski sum { a + b : a in this, b in other }.
    SymbolSet plus(const SymbolSet& other) const;
    /// { -a : a in this }.
    SymbolSet negate() const;

    /// Deterministic letter enumeration: nonnegative letters first in
    /// increasing order interleaved with negative ones (0, 1, -1, 2, -2, ...)
    /// restricted to this set. Returns at most `count` letters.
    std::vector<Symbol> enumerate(std::size_t count) const;

    std::string to_string() const;

    friend bool operator==(const SymbolSet&, const SymbolSet&) = default;

private:
    explicit SymbolSet(std::vector<Interval> parts) : parts_(std::move(parts)) {}
    void normalize();

    std::vector<Interval> parts_;
};

/// Saturating addition that keeps the infinite sentinels fixed.
Symbol sat_add(Symbol a, Symbol b);

}  // namespace cshift
