#include <random>

#include "cshift/gallery.hpp"
#include "cshift/text.hpp"
#include "doctest.h"
#include "corpus.hpp"
#include "oracle.hpp"

using namespace cshift;

namespace {

ParseError error_of(const std::string& text) {
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("no parse error for " << text);
    return ParseError(0, 0, "");
}

}  // namespace

TEST_CASE("literals") {
    CHECK(parse_point("[1|2,3]") == Point::evp({1}, {2, 3}));
    CHECK(parse_point("[]") == Point{});
    CHECK(parse_point("[ |3 ]") == Point::evp({}, {3}));
    CHECK(parse_point("[-4,0]") == Point::finite({-4, 0}));
    CHECK(parse_block_point("[[1,2],[2,3]]") == BlockPoint::finite({{1, 2}, {2, 3}}));

    const auto d = parse("c = Z([1]; {5})");
    REQUIRE(d.items.size() == 1);
    CHECK(d.items[0].name == "c");
    CHECK(std::get<Cylinder>(d.items[0].value) == Cylinder({1}, {5}));

    CHECK(print_value(Point::evp({1}, {2, 3})) == "[1|2,3]");
    CHECK(print_alphabet(Alphabet::finite(3)) == "finite(3)");
    CHECK(print_shift(gallery_shift('a')) == "shift { alphabet = naturals }");
    CHECK(print_code(parse("c = code { domain = shift { alphabet = naturals }; out-alphabet = naturals; "
                           "rule = {_: half@0, empty: empty} }")
                         .first<SlidingBlockCode>()) ==
          "code { domain = shift { alphabet = naturals }; out-alphabet = naturals; rule = {empty: empty, _: half@0} }");
}

TEST_CASE("parsed values mean what they say") {
    const SetTrie t = parse("t = {1: {2: in, _: out}, {3..5}: in, empty: out, _: out}").first<SetTrie>();
    std::mt19937_64 rng(3);
    for (int i = 0; i < 300; ++i) {
        const Point p = oracle::random_point(rng, 0, 6);
        const auto x = oracle::unroll(p, 4);
        bool expected = false;
        if (x[0] && *x[0] == 1) expected = x[1] && *x[1] == 2;
        else if (x[0] && *x[0] >= 3 && *x[0] <= 5) expected = true;
        CHECK(oracle::walk<bool>(t.root(), x) == expected);
    }

    const ShiftPresentation s = parse("s = shift { alphabet = naturals; edges = [{3..} -> abs {} rel {-1}, rest -> abs {1..} rel {}] }")
                        .first<ShiftPresentation>();
    CHECK(s.follower({7}) == SymbolSet::single(6));
    CHECK(s.follower({2}) == SymbolSet::at_least(1));
    const ShiftPresentation f = parse("s = shift { alphabet = integers; edges = gallery:f }").first<ShiftPresentation>();
    CHECK(print_shift(f) == print_shift(gallery_shift('f')));
}

TEST_CASE("roundtrip corpus") {
    const auto corpus = roundtrip_corpus();
    REQUIRE(corpus.size() >= 30);

    for (const auto& text : corpus) {
        INFO(text);
        const Document d = parse(text);
        const std::string once = print(d);
        const Document again = parse(once);
        CHECK(print(again) == once);
        REQUIRE(again.items.size() == d.items.size());
        for (std::size_t i = 0; i < d.items.size(); ++i) {
            CHECK(again.items[i].name == d.items[i].name);
            CHECK(again.items[i].value.index() == d.items[i].value.index());
            if (auto* p = std::get_if<Point>(&d.items[i].value)) CHECK(std::get<Point>(again.items[i].value) == *p);
            if (auto* t = std::get_if<SetTrie>(&d.items[i].value))
                CHECK(trie_equivalent(std::get<SetTrie>(again.items[i].value), *t));
        }
    }
}

TEST_CASE("parsed codes evaluate like the originals") {
    for (char id : std::string("adfghi")) {
        const auto c = gallery_code(id);
        const auto back = std::get<SlidingBlockCode>(parse_value(print_code(c)));
        std::mt19937_64 rng(static_cast<std::uint64_t>(id));
        for (const auto& p : sample_points(c.domain(), rng, 200)) CHECK(apply(back, p) == apply(c, p));
    }
}

TEST_CASE("errors carry positions") {
    const auto open = error_of("p = [1|");
    CHECK(open.line == 1);
    CHECK(open.column == 5);

    const auto second = error_of("a = naturals\nq = Z([1]; {2}");
    CHECK(second.line == 2);

    CHECK(error_of("y = {1: 2}").expected.find("default") != std::string::npos);
    CHECK(error_of("m = {1: in, _: 3}").column == 16);
    CHECK(error_of("q = shift { alphabet = naturals; edges = [1 -> {2}] }").expected == "'abs'");
    error_of("p = [1] q = [2]");
    error_of("= [1]");
    error_of("s = shift { alphabet = reals }");
    CHECK_THROWS_AS(print_code(SlidingBlockCode(gallery_shift('a'), Alphabet::naturals(),
                                                ComputableRule{[](const LetterPrefix&) -> std::optional<Letter> {
                                                                   return Letter{};
                                                               },
                                                               4, "empty"})),
                    PreconditionError);
}
