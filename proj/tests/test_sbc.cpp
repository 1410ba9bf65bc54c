#include <random>

#include "cshift/chl.hpp"
#include "cshift/gallery.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace cshift;

namespace {

const ShiftPresentation kFullN = ShiftPresentation::full(Alphabet::naturals());

// The maximum of the remaining coordinates inside a block {2i-1, 2i}: decided
// once the top letter of the block shows up, never on a constant bottom letter.
SlidingBlockCode max_rule() {
    ComputableRule r;
    r.fuel = 64;
    r.name = "max";
    r.rule = [](const LetterPrefix& w) -> std::optional<Letter> {
        if (w.empty()) return std::nullopt;
        if (!w[0]) return Letter{};
        const Symbol top = *w[0] % 2 ? *w[0] + 1 : *w[0];
        for (const auto& a : w)
            if (a == top) return Letter{top};
        return std::nullopt;
    };
    return SlidingBlockCode(gallery_shift('b'), Alphabet::naturals(), r, "max");
}

std::vector<Point> samples(const ShiftPresentation& s, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return sample_points(s, rng, n);
}

}  // namespace

TEST_CASE("evaluation") {
    CHECK(apply(shift_code(kFullN), Point::finite({1, 2, 3})) == Point::finite({2, 3}));
    CHECK(apply(gallery_code('d'), Point::evp({}, {3})) == Point::evp({}, {2}));
    CHECK(apply(gallery_code('d'), Point::evp({}, {6})) == Point::evp({}, {3}));
    for (char id : std::string("acde")) CHECK(apply(gallery_code(id), Point{}) == Point{});
    for (char id : std::string("hi")) CHECK(apply(gallery_code(id), Point{}) == Point::evp({}, {3}));
    CHECK_THROWS_AS(apply(gallery_code('i'), Point::finite({5, 3})), DomainError);
}

TEST_CASE("validation") {
    const auto ok = validate(shift_code(kFullN), 200);
    CHECK(ok.prefix_free);
    CHECK(ok.total);
    CHECK(ok.upsilon_suffix_closed);
    CHECK(ok.c_empty_invariant);
    CHECK(ok.fibers_finitely_defined);

    CHECK_FALSE(prefix_free({{Letter{1}}, {Letter{1}, Letter{2}}}));
    CHECK(prefix_free({{Letter{1}, Letter{3}}, {Letter{1}, Letter{2}}}));
    CHECK_THROWS_AS(trie_from_words({{{Letter{1}}, LeafOutput::constant(1)},
                                     {{Letter{1}, Letter{2}}, LeafOutput::constant(2)}}),
                    PreconditionError);

    CHECK_FALSE(validate(max_rule(), 200).total);
    for (char id : std::string("adfghi")) CHECK(validate(gallery_code(id), 200).ok());
}

TEST_CASE("fibers") {
    const auto sc = shift_code(kFullN);
    std::mt19937_64 rng(6);
    for (Symbol a = 1; a <= 3; ++a) {
        const FDS f = fiber(sc, Letter{a});
        for (int i = 0; i < 200; ++i) {
            const Point p = oracle::random_point(rng, 1, 4);
            CHECK(fds_member(f, p) == (p.at(2) == Letter{a}));
        }
    }
    const FDS b_empty = fiber(max_rule(), Letter{});
    CHECK(fds_member(b_empty, Point{}) == true);
    CHECK(fds_member(b_empty, Point::evp({}, {1, 2})) == false);
}

TEST_CASE("fibers partition the domain by the first image letter") {
    for (char id : std::string("adfghi")) {
        const auto c = gallery_code(id);
        for (const auto& p : samples(c.domain(), 1000, 5)) {
            const Letter label = apply(c, p).at(1);
            CHECK(fds_member(fiber(c, label), p) == true);
            const Letter other = label ? Letter{*label + 1} : Letter{1};
            CHECK(fds_member(fiber(c, other), p) == false);
        }
    }
}

TEST_CASE("evaluation agrees with coordinatewise reading of the rule") {
    for (char id : std::string("adfghi")) {
        const auto c = gallery_code(id);
        const auto& t = c.rule().trie();
        for (const auto& p : samples(c.domain(), 500, 3)) {
            const Point y = apply(c, p);
            CHECK(oracle::unroll(y, 24) == oracle::code_prefix(t, oracle::unroll(p, 40), 24));
            // f and g send 0 to the empty letter, the others never end an infinite point
            if (!p.is_finite() && id != 'f' && id != 'g') CHECK_FALSE(y.is_finite());
        }
    }
}

TEST_CASE("shift commutation") {
    CHECK(check_shift_commute(shift_code(kFullN), 1000).pass);
    CHECK(check_shift_commute(gallery_code('d'), 1000).pass);
    std::mt19937_64 rng(2);
    const auto r = check_shift_commute(PointMap(prepend_one), sample_points(kFullN, rng, 50));
    CHECK_FALSE(r.pass);
    REQUIRE(r.witness);
    CHECK_FALSE(prepend_one(r.witness->shift()) == prepend_one(*r.witness).shift());
}

TEST_CASE("periods are preserved") {
    CHECK(check_period_preserved(gallery_code('d'), Point::evp({}, {3, 5}), 2).pass);
    for (char id : std::string("adhi")) CHECK(check_period_preserved(gallery_code(id), Point{}, 1).pass);
    CHECK(check_period_preserved(shift_code(kFullN), Point::evp({}, {1, 2}), 2).pass);
    CHECK_THROWS_AS(check_period_preserved(gallery_code('d'), Point::evp({}, {1, 2}), 3), PreconditionError);
}

TEST_CASE("the empty sequence maps to a constant sequence") {
    const auto s = check_empty_image_constant(shift_code(kFullN));
    CHECK(s.constant);
    CHECK(s.image == Point{});
    const auto g = check_empty_image_constant(gallery_code('g'));
    CHECK(g.constant);
    CHECK(g.image == Point::evp({}, {0}));
    CHECK(g.letter == Letter{0});
    CHECK(check_empty_image_constant(gallery_code('f')).image == Point::evp({}, {0}));
}

TEST_CASE("finite images are no longer than their points") {
    CHECK(apply(shift_code(kFullN), Point::finite({1, 2})).length() == 1u);
    CHECK(apply(gallery_code('d'), Point::finite({4, 2})) == Point::finite({2, 1}));
    CHECK(check_length_bound(gallery_code('d'), 500).pass);
    CHECK(check_length_bound(shift_code(kFullN), 500).pass);
    CHECK_THROWS_AS(check_length_bound(gallery_code('f'), 10), PreconditionError);
}

TEST_CASE("sliding block falsifier") {
    const auto b = gallery_shift('b');
    const auto w = falsify_sliding_block(PointMap(max_map), point_pool(b, 7, 9, 4000), 5);
    REQUIRE(w);
    CHECK(w->first.prefix(6) == w->second.prefix(6));
    CHECK(max_map(w->first).at(1) != max_map(w->second).at(1));

    const auto sc = as_map(shift_code(kFullN));
    for (std::size_t d = 1; d <= 4; ++d) CHECK_FALSE(falsify_sliding_block(sc, kFullN, d, 4).has_value());

    const auto f = gallery_code('f');
    for (std::size_t d = 1; d <= 6; ++d) {
        std::vector<Point> images;
        for (const auto& x : point_pool(f.domain(), d + 3, static_cast<Symbol>(d) + 4, 4000))
            images.push_back(apply(f, x));
        CHECK(falsify_sliding_block(PointMap(inverse_f), images, d).has_value());
    }
}

TEST_CASE("composition") {
    const auto sc = shift_code(kFullN);
    const auto twice = compose(sc, sc);
    const auto d = gallery_code('d');
    for (const auto& p : samples(kFullN, 300, 8)) {
        CHECK(apply(twice, p) == p.shift(2));
        CHECK(apply(compose(d, identity_code(kFullN)), p) == apply(d, p));
        CHECK(apply(compose(d, d), p) == apply(d, apply(d, p)));
    }
    CHECK(apply(compose(d, d), Point::evp({}, {7})) == Point::evp({}, {2}));
}
