#include <random>

#include "cshift/chl.hpp"
#include "cshift/gallery.hpp"
#include "cshift/hbc.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace cshift;

namespace {

const ShiftPresentation kFullN = ShiftPresentation::full(Alphabet::naturals());

using Blocks = std::vector<std::optional<Word>>;

Blocks unroll_blocks(const BlockPoint& q, std::size_t n) {
    Blocks out;
    for (std::size_t i = 0; i < n; ++i) {
        if (i < q.head().size()) out.push_back(q.head()[i]);
        else if (q.period().empty()) out.push_back(std::nullopt);
        else out.push_back(q.period()[(i - q.head().size()) % q.period().size()]);
    }
    return out;
}

// Windows of length m read off an unrolled sequence.
Blocks windows(const oracle::Seq& x, std::size_t m, std::size_t n) {
    Blocks out;
    for (std::size_t i = 0; i < n; ++i) {
        Word w;
        for (std::size_t j = 0; j < m; ++j) {
            const Letter a = i + j < x.size() ? x[i + j] : std::nullopt;
            if (!a) break;
            w.push_back(*a);
        }
        out.push_back(w.size() == m ? std::optional<Word>(w) : std::nullopt);
    }
    return out;
}

std::vector<Point> samples(const ShiftPresentation& s, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return sample_points(s, rng, n);
}

}  // namespace

TEST_CASE("higher block code") {
    const Symbol a = 1, b = 2, c = 3;
    CHECK(xi(2, Point::finite({a, b, c})) == BlockPoint::finite({{a, b}, {b, c}}));
    CHECK(xi(3, Point::finite({a})) == BlockPoint{});
    for (std::size_t m = 1; m <= 4; ++m) CHECK(xi(m, Point{}) == BlockPoint{});
    CHECK(xi(2, Point::evp({}, {a, b})) == BlockPoint::evp({}, {{a, b}, {b, a}}));
    CHECK(xi(1, Point::finite({5, 6})) == BlockPoint::finite({{5}, {6}}));
}

TEST_CASE("higher block code reads windows") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 1000; ++i) {
        const Point p = oracle::random_point(rng, 1, 5);
        const std::size_t m = 1 + rng() % 4;
        const BlockPoint q = xi(m, p);
        CHECK(unroll_blocks(q, 20) == windows(oracle::unroll(p, 40), m, 20));
        if (p.is_finite()) {
            const std::size_t len = p.head().size();
            CHECK(q.length() == (len >= m ? len - m + 1 : 0));
        } else {
            CHECK_FALSE(q.is_finite());
        }
    }
}

TEST_CASE("inverse local rule") {
    const Symbol a = 1, b = 2, c = 3;
    CHECK(xi_inverse(2, BlockPoint::finite({{a, b}, {b, c}})) == Point::finite({a, b, c}));
    CHECK(xi_inverse(2, BlockPoint{}) == Point{});
    CHECK(xi_inverse(2, BlockPoint::evp({}, {{a, b}, {b, a}})) == Point::evp({}, {a, b}));
    CHECK_THROWS_AS(xi_inverse(2, BlockPoint::finite({{a, b}, {c, a}})), DomainError);
}

TEST_CASE("roundtrip on long and infinite points") {
    for (std::size_t m = 1; m <= 3; ++m)
        for (char id : kGalleryIds) {
            const auto s = gallery_shift(id);
            for (const auto& p : samples(s, 200, m)) {
                if (p.is_finite() && p.head().size() < m) continue;
                CHECK(xi_inverse(m, xi(m, p)) == p);
                CHECK(xi(m, p.shift()) == xi(m, p).shift());
            }
        }
}

TEST_CASE("encoded block letters") {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 300; ++i) {
        const Point p = oracle::random_point(rng, -3, 6);
        const BlockPoint q = xi(2, p);
        CHECK(decode_point(2, encode_point(q)) == q);
    }
    const auto code = xi_code(kFullN, 2);
    CHECK(check_shift_commute(code, 1000).pass);
    for (const auto& p : samples(kFullN, 200, 9)) CHECK(decode_point(2, apply(code, p)) == xi(2, p));
}

TEST_CASE("the higher block code is continuous") {
    for (std::size_t m = 1; m <= 3; ++m)
        for (char id : kGalleryIds) {
            const auto v = certify_T1(xi_code(gallery_shift(id), m));
            CHECK(v.kind == ContinuityVerdict::Kind::continuous);
        }
}

TEST_CASE("higher presentations") {
    const auto full = higher_presentation(kFullN, 2);
    CHECK(full.block_letter({4, 9}));
    CHECK_FALSE(full.block_letter({4}));
    CHECK(full.edge({1, 2}, {2, 7}));
    CHECK_FALSE(full.edge({1, 2}, {3, 7}));

    const auto no11 = higher_presentation(ShiftPresentation::forbidden(Alphabet::naturals(), {{1, 1}}), 2);
    CHECK_FALSE(no11.block_letter({1, 1}));
    CHECK(no11.block_letter({1, 2}));

    const auto bin = higher_presentation(ShiftPresentation::full(Alphabet::finite(2)), 2);
    int letters = 0;
    for (Symbol x = -1; x <= 2; ++x)
        for (Symbol y = -1; y <= 2; ++y) letters += bin.block_letter({x, y});
    CHECK(letters == 4);
    CHECK_FALSE(bin.has_iep({{0, 1}}));
    CHECK(full.has_iep({{1, 2}}));
}

TEST_CASE("higher languages are images of base languages") {
    for (std::size_t m = 1; m <= 3; ++m)
        for (char id : kGalleryIds) {
            const auto s = gallery_shift(id);
            const auto h = higher_presentation(s, m);
            for (const auto& p : samples(s, 100, 11)) CHECK(h.contains(xi(m, p)));
            for (const auto& w : enumerate_words(s, m + 1, 2)) {
                const Word left(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(m));
                const Word right(w.begin() + 1, w.end());
                CHECK(h.edge(left, right));
                CHECK(h.in_language({left, right}));
                CHECK(h.follower_last({left}).contains(w.back()));
            }
        }
}

TEST_CASE("finite point corollary") {
    for (std::size_t m = 1; m <= 3; ++m) {
        const auto b = check_hbc_corollary_sup(gallery_shift('b'), m);
        CHECK(b.sup_len_lt_m);
        CHECK(b.lambda_star_fin_trivial);
        CHECK(b.inverse_is_sbc);
        CHECK(check_hbc_corollary_sup(ShiftPresentation::full(Alphabet::finite(2)), m).agree());
    }
    const auto full = check_hbc_corollary_sup(kFullN, 2);
    CHECK_FALSE(full.sup_len_lt_m);
    CHECK_FALSE(full.lambda_star_fin_trivial);
    CHECK_FALSE(full.inverse_is_sbc);
    for (std::size_t m = 2; m <= 3; ++m)
        for (char id : kGalleryIds) CHECK(check_hbc_corollary_sup(gallery_shift(id), m).agree());
}

TEST_CASE("row finite corollary") {
    const auto b = check_hbc_corollary_rowfinite(gallery_shift('b'), 2);
    CHECK(b.row_finite);
    CHECK(b.injective);
    CHECK(b.roundtrip);

    const auto full = check_hbc_corollary_rowfinite(kFullN, 2);
    CHECK_FALSE(full.row_finite);
    CHECK_FALSE(full.injective);
    REQUIRE(full.collision);
    const auto [p, q] = *full.collision;
    CHECK_FALSE(p == q);
    CHECK(xi(2, p) == xi(2, q));

    CHECK(check_hbc_corollary_rowfinite(ShiftPresentation::full(Alphabet::finite(2)), 2).injective);
    for (std::size_t m = 2; m <= 3; ++m)
        for (char id : kGalleryIds) CHECK(check_hbc_corollary_rowfinite(gallery_shift(id), m).agree());
}
