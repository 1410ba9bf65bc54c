#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cshift/sbc.hpp"

namespace cshift {

/// A point over block letters: each coordinate is a window of M base letters.
using BlockPoint = BasicPoint<Word>;

std::string to_string(const BlockPoint& p);

/// The M-th higher block code.
BlockPoint xi(std::size_t m, const Point& p);
/// The inverse local rule. Throws DomainError when consecutive blocks do not
/// overlap.
Point xi_inverse(std::size_t m, const BlockPoint& q);

/// The higher block code on S as a code into integer letters (each window
/// encoded by encode_block).
SlidingBlockCode xi_code(const ShiftPresentation& s, std::size_t m);
BlockPoint decode_point(std::size_t m, const Point& encoded);
Point encode_point(const BlockPoint& q);

/// The image of S under the M-th higher block code, as a presentation over
/// block letters derived from S on demand.
class HigherPresentation {
public:
    HigherPresentation(ShiftPresentation base, std::size_t m);

    const ShiftPresentation& base() const { return base_; }
    std::size_t m() const { return m_; }

    bool block_letter(const Word& b) const;
    /// [a_1..a_M] may be followed by [b_1..b_M].
    bool edge(const Word& a, const Word& b) const;
    bool in_language(const std::vector<Word>& blocks) const;
    /// Last letters b_M of the blocks that may follow the word.
    SymbolSet follower_last(const std::vector<Word>& blocks) const;
    bool contains(const BlockPoint& q) const;
    /// Infinite extension property at a nonempty block word, checked by the
    /// construction extending it with distinct last letters.
    bool has_iep(const std::vector<Word>& blocks) const;

private:
    Word unblock(const std::vector<Word>& blocks) const;

    ShiftPresentation base_;
    std::size_t m_;
};

HigherPresentation higher_presentation(const ShiftPresentation& s, std::size_t m);

struct SupCorollary {
    bool sup_len_lt_m = false;
    bool lambda_star_fin_trivial = false;
    bool inverse_is_sbc = false;

    bool agree() const { return sup_len_lt_m == lambda_star_fin_trivial && sup_len_lt_m == inverse_is_sbc; }
};

/// The three equivalent statements about finite points, each computed its
/// own way.
SupCorollary check_hbc_corollary_sup(const ShiftPresentation& s, std::size_t m, std::size_t samples = 200,
                                     std::uint64_t seed = 1);

struct RowFiniteCorollary {
    bool row_finite = false;
    bool injective = true;
    bool roundtrip = true;
    std::optional<std::pair<Point, Point>> collision;

    bool agree() const { return row_finite == injective && (!row_finite || roundtrip); }
};

RowFiniteCorollary check_hbc_corollary_rowfinite(const ShiftPresentation& s, std::size_t m,
                                                 std::size_t samples = 200, std::uint64_t seed = 1);

}  // namespace cshift
