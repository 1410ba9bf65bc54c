#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cshift/core.hpp"

namespace cshift {

/// Generalized cylinder Z(base, excluded): points extending `base` whose
/// next coordinate is not in `excluded`. The empty letter is never excluded.
class Cylinder {
public:
    Cylinder() = default;
    explicit Cylinder(Word base, std::vector<Symbol> excluded = {});

    const Word& base() const { return base_; }
    const std::vector<Symbol>& excluded() const { return excluded_; }

    bool contains(const Point& p) const;
    /// |base|, plus one when the excluded set is nonempty.
    std::size_t length() const { return base_.size() + (excluded_.empty() ? 0 : 1); }

    std::string to_string() const;

    friend bool operator==(const Cylinder&, const Cylinder&) = default;

private:
    Word base_;
    std::vector<Symbol> excluded_;
};

inline bool cyl_contains(const Cylinder& c, const Point& p) { return c.contains(p); }
inline std::size_t cyl_length(const Cylinder& c) { return c.length(); }

/// Basic neighbourhoods of p. Infinite p: Z(prefix_k(p)) for 1 <= k <= max_len.
/// Finite p: the same prefixes up to its length, plus Z(p, F) for F drawn
/// from the first `max_excl` letters of `letters` (each singleton and the
/// nested chain of initial segments).
std::vector<Cylinder> basic_nbhds(const Point& p, std::size_t max_len, std::size_t max_excl,
                                  const SymbolSet& letters = SymbolSet::all());

/// A sequence of points indexed from 1, with the limit it is claimed to
/// converge to.
struct PointFamily {
    std::function<Point(std::size_t)> generator;
    Point claimed_limit;
    std::string description;
};

struct ConvergenceVerdict {
    bool refuted = false;
    std::optional<Cylinder> cylinder;  // neighbourhood of the limit that is escaped
    std::size_t index = 0;             // first escaping index in the tested tail

    bool consistent() const { return !refuted; }
};

/// Desk-scale falsifier for convergence. A neighbourhood refutes the claim
/// when the member at the largest tested index lies outside it and at least
/// half of the upper half of tested indices do too. Never proves convergence.
ConvergenceVerdict check_convergence(const PointFamily& family, std::size_t nbhd_budget,
                                     std::size_t index_budget,
                                     const SymbolSet& letters = SymbolSet::all());

}  // namespace cshift
