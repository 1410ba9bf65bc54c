#include "cshift/symbol_set.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cshift {

Symbol sat_add(Symbol a, Symbol b) {
    if (a == kNegInf || b == kNegInf) {
        if (a == kPosInf || b == kPosInf) throw std::logic_error("sat_add: -inf + inf");
        return kNegInf;
    }
    if (a == kPosInf || b == kPosInf) return kPosInf;
    Symbol r = 0;
    if (__builtin_add_overflow(a, b, &r)) return a > 0 ? kPosInf : kNegInf;
    return r;
}

namespace {

Symbol succ(Symbol a) { return a == kPosInf ? kPosInf : a + 1; }
Symbol pred(Symbol a) { return a == kNegInf ? kNegInf : a - 1; }

std::uint64_t rank_of(Symbol a) {
    return a >= 0 ? 2 * static_cast<std::uint64_t>(a) : 2 * static_cast<std::uint64_t>(-(a + 1)) + 1;
}

}  // namespace

void SymbolSet::normalize() {
    std::erase_if(parts_, [](const Interval& i) { return i.lo > i.hi; });
    std::sort(parts_.begin(), parts_.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> merged;
    for (const auto& i : parts_) {
        if (!merged.empty() && (merged.back().hi == kPosInf || i.lo <= merged.back().hi + 1)) {
            merged.back().hi = std::max(merged.back().hi, i.hi);
        } else {
            merged.push_back(i);
        }
    }
    parts_ = std::move(merged);
}

SymbolSet SymbolSet::all() { return SymbolSet({{kNegInf, kPosInf}}); }

SymbolSet SymbolSet::single(Symbol a) { return range(a, a); }

SymbolSet SymbolSet::range(Symbol lo, Symbol hi) {
    if (lo > hi) return {};
    return SymbolSet({{lo, hi}});
}

SymbolSet SymbolSet::of(const std::vector<Symbol>& letters) {
    std::vector<Interval> parts;
    parts.reserve(letters.size());
    for (Symbol a : letters) parts.push_back({a, a});
    return from_intervals(std::move(parts));
}

SymbolSet SymbolSet::from_intervals(std::vector<Interval> parts) {
    SymbolSet s(std::move(parts));
    s.normalize();
    return s;
}

bool SymbolSet::contains(Symbol a) const {
    auto it = std::upper_bound(parts_.begin(), parts_.end(), a,
                               [](Symbol v, const Interval& i) { return v < i.lo; });
    if (it == parts_.begin()) return false;
    --it;
    return a <= it->hi;
}

bool SymbolSet::is_finite() const { return bounded_below() && bounded_above(); }

bool SymbolSet::is_cofinite_in(const SymbolSet& universe) const {
    return (universe - *this).is_finite();
}

bool SymbolSet::subset_of(const SymbolSet& other) const { return (*this - other).empty(); }

std::optional<std::uint64_t> SymbolSet::size() const {
    if (!is_finite()) return std::nullopt;
    std::uint64_t n = 0;
    for (const auto& i : parts_) n += static_cast<std::uint64_t>(i.hi - i.lo) + 1;
    return n;
}

std::optional<Symbol> SymbolSet::min() const {
    if (empty() || parts_.front().lo == kNegInf) return std::nullopt;
    return parts_.front().lo;
}

std::optional<Symbol> SymbolSet::max() const {
    if (empty() || parts_.back().hi == kPosInf) return std::nullopt;
    return parts_.back().hi;
}

std::vector<Symbol> SymbolSet::elements() const {
    auto n = size();
    if (!n) throw std::logic_error("SymbolSet::elements on an infinite set");
    if (*n > 10'000'000) throw std::length_error("SymbolSet::elements: set too large");
    std::vector<Symbol> out;
    out.reserve(*n);
    for (const auto& i : parts_)
        for (Symbol a = i.lo;; ++a) {
            out.push_back(a);
            if (a == i.hi) break;
        }
    return out;
}

SymbolSet SymbolSet::operator|(const SymbolSet& other) const {
    std::vector<Interval> parts = parts_;
    parts.insert(parts.end(), other.parts_.begin(), other.parts_.end());
    return from_intervals(std::move(parts));
}

SymbolSet SymbolSet::operator&(const SymbolSet& other) const {
    std::vector<Interval> out;
    std::size_t i = 0, j = 0;
    while (i < parts_.size() && j < other.parts_.size()) {
        const auto& a = parts_[i];
        const auto& b = other.parts_[j];
        Symbol lo = std::max(a.lo, b.lo);
        Symbol hi = std::min(a.hi, b.hi);
        if (lo <= hi) out.push_back({lo, hi});
        if (a.hi < b.hi) ++i; else ++j;
    }
    return SymbolSet(std::move(out));
}

SymbolSet SymbolSet::complement() const {
    std::vector<Interval> out;
    Symbol next = kNegInf;
    bool open = true;
    for (const auto& i : parts_) {
        if (open && (i.lo == kNegInf ? false : next <= i.lo - 1)) out.push_back({next, i.lo - 1});
        if (i.hi == kPosInf) { open = false; break; }
        next = i.hi + 1;
    }
    if (open) out.push_back({next, kPosInf});
    return SymbolSet(std::move(out));
}

SymbolSet SymbolSet::operator-(const SymbolSet& other) const { return *this & other.complement(); }

SymbolSet SymbolSet::translate(Symbol c) const {
    std::vector<Interval> out;
    for (const auto& i : parts_) out.push_back({sat_add(i.lo, c), sat_add(i.hi, c)});
    return from_intervals(std::move(out));
}

SymbolSet SymbolSet::plus(const SymbolSet& other) const {
    std::vector<Interval> out;
    for (const auto& a : parts_)
        for (const auto& b : other.parts_) out.push_back({sat_add(a.lo, b.lo), sat_add(a.hi, b.hi)});
    return from_intervals(std::move(out));
}

SymbolSet SymbolSet::negate() const {
    auto neg = [](Symbol a) {
        if (a == kNegInf) return kPosInf;
        if (a == kPosInf) return kNegInf;
        return -a;
    };
    std::vector<Interval> out;
    for (const auto& i : parts_) out.push_back({neg(i.hi), neg(i.lo)});
    return from_intervals(std::move(out));
}

std::vector<Symbol> SymbolSet::enumerate(std::size_t count) const {
    std::vector<Symbol> cand;
    for (const auto& i : parts_) {
        // Letters of this interval ordered by distance from zero.
        std::size_t taken = 0;
        if (i.lo >= 0) {
            for (Symbol a = i.lo; taken < count; a = succ(a), ++taken) {
                cand.push_back(a);
                if (a == i.hi) break;
            }
        } else if (i.hi < 0) {
            for (Symbol a = i.hi; taken < count; a = pred(a), ++taken) {
                cand.push_back(a);
                if (a == i.lo) break;
            }
        } else {
            for (Symbol a = 0; taken < count; a = succ(a), ++taken) {
                cand.push_back(a);
                if (a == i.hi) break;
            }
            taken = 0;
            for (Symbol a = -1; taken < count; a = pred(a), ++taken) {
                cand.push_back(a);
                if (a == i.lo) break;
            }
        }
    }
    std::sort(cand.begin(), cand.end(), [](Symbol a, Symbol b) { return rank_of(a) < rank_of(b); });
    if (cand.size() > count) cand.resize(count);
    return cand;
}

std::string SymbolSet::to_string() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t k = 0; k < parts_.size(); ++k) {
        const auto& i = parts_[k];
        if (k) os << ',';
        if (i.lo == i.hi) {
            os << i.lo;
            continue;
        }
        if (i.lo != kNegInf) os << i.lo;
        if (i.lo != kNegInf && i.hi != kPosInf && i.hi == i.lo + 1) {
            os << ',' << i.hi;
            continue;
        }
        os << "..";
        if (i.hi != kPosInf) os << i.hi;
    }
    os << '}';
    return os.str();
}

}  // namespace cshift
