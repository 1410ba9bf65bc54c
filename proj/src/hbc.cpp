#include "cshift/hbc.hpp"

#include <map>
#include <random>

namespace cshift {

std::string to_string(const BlockPoint& p) {
    std::string out = "[";
    for (std::size_t i = 0; i < p.head().size(); ++i) out += (i ? "," : "") + to_string(p.head()[i]);
    if (!p.is_finite()) {
        out += "|";
        for (std::size_t i = 0; i < p.period().size(); ++i) out += (i ? "," : "") + to_string(p.period()[i]);
    }
    return out + "]";
}

BlockPoint xi(std::size_t m, const Point& p) {
    if (m == 0) throw PreconditionError("block width must be positive");
    auto window = [&](std::size_t i) {
        Word w;
        for (std::size_t j = 0; j < m; ++j) w.push_back(*p.at(i + j));
        return w;
    };
    if (p.is_finite()) {
        const std::size_t len = p.head().size();
        std::vector<Word> blocks;
        for (std::size_t i = 1; i + m <= len + 1; ++i) blocks.push_back(window(i));
        return BlockPoint::finite(std::move(blocks));
    }
    std::vector<Word> head, period;
    for (std::size_t i = 1; i <= p.head().size(); ++i) head.push_back(window(i));
    for (std::size_t i = 1; i <= p.period().size(); ++i) period.push_back(window(p.head().size() + i));
    return BlockPoint::evp(std::move(head), std::move(period));
}

namespace {

void check_overlap(const Word& a, const Word& b, std::size_t m) {
    if (a.size() != m || b.size() != m) throw DomainError("block letter of the wrong width");
    if (!std::equal(a.begin() + 1, a.end(), b.begin())) throw DomainError("consecutive blocks do not overlap");
}

}  // namespace

Point xi_inverse(std::size_t m, const BlockPoint& q) {
    if (m == 0) throw PreconditionError("block width must be positive");
    if (q.is_empty()) return {};
    if (q.is_finite()) {
        const auto& b = q.head();
        if (b.back().size() != m) throw DomainError("block letter of the wrong width");
        for (std::size_t i = 0; i + 1 < b.size(); ++i) check_overlap(b[i], b[i + 1], m);
        Word x;
        for (const auto& blk : b) x.push_back(blk.front());
        x.insert(x.end(), b.back().begin() + 1, b.back().end());
        return Point::finite(std::move(x));
    }
    std::vector<Word> all = q.head();
    all.insert(all.end(), q.period().begin(), q.period().end());
    all.push_back(q.period().front());
    for (std::size_t i = 0; i + 1 < all.size(); ++i) check_overlap(all[i], all[i + 1], m);
    Word head, period;
    for (const auto& blk : q.head()) head.push_back(blk.front());
    for (const auto& blk : q.period()) period.push_back(blk.front());
    return Point::evp(std::move(head), std::move(period));
}

SlidingBlockCode xi_code(const ShiftPresentation& s, std::size_t m) {
    if (m == 0) throw PreconditionError("block width must be positive");
    auto empty = CodeTrie::leaf(LeafOutput::empty());
    CodeTrie::Ptr n = CodeTrie::leaf(LeafOutput::window(m));
    for (std::size_t j = 0; j < m; ++j) n = CodeTrie::node({}, n, empty);
    return SlidingBlockCode(s, Alphabet::integers(), CodeTrie(n), "xi" + std::to_string(m));
}

BlockPoint decode_point(std::size_t m, const Point& encoded) {
    std::vector<Word> head, period;
    for (Symbol a : encoded.head()) head.push_back(decode_block(a, m));
    if (encoded.is_finite()) return BlockPoint::finite(std::move(head));
    for (Symbol a : encoded.period()) period.push_back(decode_block(a, m));
    return BlockPoint::evp(std::move(head), std::move(period));
}

Point encode_point(const BlockPoint& q) {
    Word head, period;
    for (const auto& b : q.head()) head.push_back(encode_block(b));
    if (q.is_finite()) return Point::finite(std::move(head));
    for (const auto& b : q.period()) period.push_back(encode_block(b));
    return Point::evp(std::move(head), std::move(period));
}

// ------------------------------------------------------------ presentation

HigherPresentation::HigherPresentation(ShiftPresentation base, std::size_t m) : base_(std::move(base)), m_(m) {
    if (m == 0) throw PreconditionError("block width must be positive");
}

HigherPresentation higher_presentation(const ShiftPresentation& s, std::size_t m) { return {s, m}; }

bool HigherPresentation::block_letter(const Word& b) const {
    if (b.size() != m_) return false;
    try {
        return base_.in_language(b);
    } catch (const DomainError&) {
        return false;
    }
}

bool HigherPresentation::edge(const Word& a, const Word& b) const {
    if (!block_letter(a) || !block_letter(b)) return false;
    if (!std::equal(a.begin() + 1, a.end(), b.begin())) return false;
    Word w = a;
    w.push_back(b.back());
    return base_.in_language(w);
}

Word HigherPresentation::unblock(const std::vector<Word>& blocks) const {
    for (std::size_t i = 0; i + 1 < blocks.size(); ++i) check_overlap(blocks[i], blocks[i + 1], m_);
    if (blocks.empty()) return {};
    if (blocks.back().size() != m_) throw DomainError("block letter of the wrong width");
    Word x;
    for (const auto& b : blocks) x.push_back(b.front());
    x.insert(x.end(), blocks.back().begin() + 1, blocks.back().end());
    return x;
}

bool HigherPresentation::in_language(const std::vector<Word>& blocks) const {
    try {
        return base_.in_language(unblock(blocks));
    } catch (const DomainError&) {
        return false;
    }
}

SymbolSet HigherPresentation::follower_last(const std::vector<Word>& blocks) const {
    if (blocks.empty()) return base_.letters();
    return base_.follower(unblock(blocks));
}

bool HigherPresentation::contains(const BlockPoint& q) const {
    if (q.is_empty()) return base_.contains(Point{});
    try {
        return base_.contains(xi_inverse(m_, q));
    } catch (const DomainError&) {
        return false;
    }
}

bool HigherPresentation::has_iep(const std::vector<Word>& blocks) const {
    if (blocks.empty()) return base_.has_iep({});
    if (!in_language(blocks)) return false;
    const SymbolSet last = follower_last(blocks);
    if (last.is_finite()) return false;
    // Extend by blocks ending in distinct letters, as many as sampled.
    for (Symbol a : representatives(last, 3)) {
        Word next(blocks.back().begin() + 1, blocks.back().end());
        next.push_back(a);
        if (!edge(blocks.back(), next)) return false;
    }
    return true;
}

// ------------------------------------------------------------ corollaries

namespace {

std::vector<Point> corollary_samples(const ShiftPresentation& s, std::size_t m, std::size_t samples,
                                     std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto pts = enumerate_finite_points(s, m + 1, 2);
    auto more = sample_points(s, rng, samples, m + 4);
    pts.insert(pts.end(), more.begin(), more.end());
    return pts;
}

}  // namespace

SupCorollary check_hbc_corollary_sup(const ShiftPresentation& s, std::size_t m, std::size_t samples,
                                     std::uint64_t seed) {
    SupCorollary out;
    // Finite points are closed under the shift, so one of length >= M
    // yields one of length exactly M.
    out.sup_len_lt_m = true;
    for (const auto& p : enumerate_finite_points(s, m, 3))
        if (p.length() == m) out.sup_len_lt_m = false;

    // Nonempty finite points of the higher presentation.
    const HigherPresentation h(s, m);
    out.lambda_star_fin_trivial = true;
    for (std::size_t extra = 0; extra <= 1 && out.lambda_star_fin_trivial; ++extra) {
        for (const auto& w : enumerate_words(s, m + extra, 3)) {
            std::vector<Word> blocks;
            for (std::size_t i = 0; i + m <= w.size(); ++i) blocks.emplace_back(w.begin() + i, w.begin() + i + m);
            if (h.contains(BlockPoint::finite(blocks))) {
                out.lambda_star_fin_trivial = false;
                break;
            }
        }
    }

    // The inverse formula commutes with the shift on the image.
    out.inverse_is_sbc = true;
    for (const auto& p : corollary_samples(s, m, samples, seed)) {
        const BlockPoint q = xi(m, p);
        if (q.is_empty()) continue;
        if (!(xi_inverse(m, q.shift()) == xi_inverse(m, q).shift())) {
            out.inverse_is_sbc = false;
            break;
        }
    }
    return out;
}

RowFiniteCorollary check_hbc_corollary_rowfinite(const ShiftPresentation& s, std::size_t m, std::size_t samples,
                                                 std::uint64_t seed) {
    RowFiniteCorollary out;
    out.row_finite = s.classify().row_finite;
    std::map<std::string, Point> seen;
    for (const auto& p : corollary_samples(s, m, samples, seed)) {
        const BlockPoint q = xi(m, p);
        auto [it, fresh] = seen.emplace(to_string(q), p);
        if (!fresh && !(it->second == p) && out.injective) {
            out.injective = false;
            out.collision = {it->second, p};
        }
        if ((!p.is_finite() || p.head().size() >= m) && !(xi_inverse(m, q) == p)) out.roundtrip = false;
    }
    return out;
}

}  // namespace cshift
