#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cshift/symbol_set.hpp"

namespace cshift {

/// Base of all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A point is outside the domain of the operation applied to it.
struct DomainError : Error {
    using Error::Error;
};

/// An argument violates an operation's precondition.
struct PreconditionError : Error {
    using Error::Error;
};

class Alphabet {
public:
    enum class Kind { finite, naturals, integers };

    /// {0, ..., n-1}.
    static Alphabet finite(Symbol n);
    /// {1, 2, 3, ...}.
    static Alphabet naturals() { return Alphabet(Kind::naturals, 0); }
    /// All of Z.
    static Alphabet integers() { return Alphabet(Kind::integers, 0); }

    Kind kind() const { return kind_; }
    Symbol size() const { return size_; }
    bool is_finite() const { return kind_ == Kind::finite; }
    bool contains(Symbol a) const { return letters().contains(a); }
    SymbolSet letters() const;
    std::string to_string() const;

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    Alphabet(Kind kind, Symbol size) : kind_(kind), size_(size) {}

    Kind kind_;
    Symbol size_;
};

/// A coordinate of a point: a symbol, or the empty letter when disengaged.
template <class Sym>
using BasicLetter = std::optional<Sym>;

using Letter = BasicLetter<Symbol>;
using Word = std::vector<Symbol>;

/// Element of the one-sided full shift: a finite sequence (padded with the
/// empty letter) or an eventually periodic infinite sequence.
///
/// Eventually periodic points are kept canonical: the period is primitive
/// and the preperiod minimal, so equality is structural.
template <class Sym>
class BasicPoint {
public:
    using Seq = std::vector<Sym>;

    /// The empty sequence.
    BasicPoint() = default;

    static BasicPoint finite(Seq word) {
        BasicPoint p;
        p.prefix_ = std::move(word);
        return p;
    }

    static BasicPoint evp(Seq preperiod, Seq period) {
        if (period.empty()) throw PreconditionError("eventually periodic point needs a nonempty period");
        BasicPoint p;
        p.prefix_ = std::move(preperiod);
        p.period_ = std::move(period);
        p.canonicalize();
        return p;
    }

    static BasicPoint constant(Sym a) { return evp({}, {std::move(a)}); }

    bool is_finite() const { return period_.empty(); }
    bool is_empty() const { return is_finite() && prefix_.empty(); }

    /// Number of non-empty coordinates; nullopt for infinite points.
    std::optional<std::size_t> length() const {
        if (!is_finite()) return std::nullopt;
        return prefix_.size();
    }

    /// The finite word of a finite point, or the preperiod of an infinite one.
    const Seq& head() const { return prefix_; }
    const Seq& period() const { return period_; }

    /// Coordinate n (1-based). Past the end of a finite point this is empty.
    BasicLetter<Sym> at(std::size_t n) const {
        if (n == 0) throw PreconditionError("coordinates are 1-based");
        if (n <= prefix_.size()) return prefix_[n - 1];
        if (period_.empty()) return std::nullopt;
        return period_[(n - 1 - prefix_.size()) % period_.size()];
    }

    /// The first min(k, length) symbols.
    Seq prefix(std::size_t k) const {
        Seq out;
        for (std::size_t n = 1; n <= k; ++n) {
            auto a = at(n);
            if (!a) break;
            out.push_back(*a);
        }
        return out;
    }

    BasicPoint shift() const { return shift(1); }

    BasicPoint shift(std::size_t n) const {
        if (n == 0) return *this;
        if (period_.empty()) {
            if (n >= prefix_.size()) return {};
            return finite(Seq(prefix_.begin() + static_cast<std::ptrdiff_t>(n), prefix_.end()));
        }
        if (n <= prefix_.size())
            return evp(Seq(prefix_.begin() + static_cast<std::ptrdiff_t>(n), prefix_.end()), period_);
        std::size_t r = (n - prefix_.size()) % period_.size();
        Seq rotated(period_.begin() + static_cast<std::ptrdiff_t>(r), period_.end());
        rotated.insert(rotated.end(), period_.begin(), period_.begin() + static_cast<std::ptrdiff_t>(r));
        return evp({}, std::move(rotated));
    }

    /// The first n coordinates, with empty letters past the end.
    std::vector<BasicLetter<Sym>> unroll(std::size_t n) const {
        std::vector<BasicLetter<Sym>> out;
        out.reserve(n);
        for (std::size_t k = 1; k <= n; ++k) out.push_back(at(k));
        return out;
    }

    friend bool operator==(const BasicPoint&, const BasicPoint&) = default;

private:
    void canonicalize() {
        const std::size_t n = period_.size();
        for (std::size_t d = 1; d < n; ++d) {
            if (n % d) continue;
            bool ok = true;
            for (std::size_t i = d; i < n && ok; ++i) ok = period_[i] == period_[i - d];
            if (ok) {
                period_.resize(d);
                break;
            }
        }
        while (!prefix_.empty() && prefix_.back() == period_.back()) {
            std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
            prefix_.pop_back();
        }
    }

    Seq prefix_;
    Seq period_;
};

using Point = BasicPoint<Symbol>;

/// w followed by p. Concatenating with the empty sequence gives finite(w).
template <class Sym>
BasicPoint<Sym> concat(const std::vector<Sym>& w, const BasicPoint<Sym>& p) {
    std::vector<Sym> head = w;
    head.insert(head.end(), p.head().begin(), p.head().end());
    if (p.is_finite()) return BasicPoint<Sym>::finite(std::move(head));
    return BasicPoint<Sym>::evp(std::move(head), p.period());
}

std::string to_string(const Word& w);
std::string to_string(const Letter& a);
std::string to_string(const Point& p);
std::ostream& operator<<(std::ostream& os, const Point& p);

}  // namespace cshift
