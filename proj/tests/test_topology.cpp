#include <random>

#include "doctest.h"
#include "oracle.hpp"

using namespace cshift;

TEST_CASE("cylinder membership") {
    CHECK(Cylinder().contains(Point::evp({3}, {1, 2})));
    CHECK(Cylinder().contains(Point{}));
    CHECK_FALSE(Cylinder({}, {1, 2}).contains(Point::finite({2})));
    CHECK(Cylinder({1}).contains(Point::evp({1}, {5})));
    // A finite point ending where the base ends belongs: the next letter is empty.
    CHECK(Cylinder({1, 2}, {3}).contains(Point::finite({1, 2})));
    CHECK_FALSE(Cylinder({1, 2}, {3}).contains(Point::finite({1, 2, 3})));
}

TEST_CASE("cylinder length") {
    CHECK(Cylinder({1, 2}).length() == 2u);
    CHECK(Cylinder({1, 2}, {9}).length() == 3u);
    CHECK(Cylinder().length() == 0u);
}

TEST_CASE("cylinder membership matches the definition") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 2000; ++i) {
        const Word base = oracle::random_word(rng, 2, 1, 3);
        const Word ex = oracle::random_word(rng, 2, 1, 4);
        const Point p = oracle::random_point(rng, 1, 3);
        const Cylinder c(base, ex);
        CHECK(c.contains(p) == oracle::in_cylinder(base, ex, oracle::unroll(p, 8)));
    }
}

TEST_CASE("prefix cylinders contain their point") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 500; ++i) {
        const Point p = oracle::random_point(rng, 0, 6);
        const std::size_t len = p.length().value_or(8);
        for (std::size_t k = 0; k <= len; ++k) CHECK(Cylinder(p.prefix(k)).contains(p));
    }
}

TEST_CASE("longer base and larger excluded set give a smaller cylinder") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 500; ++i) {
        const Word b = oracle::random_word(rng, 2, 1, 3);
        Word b2 = b;
        if (rng() % 2) b2.push_back(1 + static_cast<Symbol>(rng() % 3));
        const Word f = oracle::random_word(rng, 2, 1, 3);
        Word f2 = f;
        f2.push_back(1 + static_cast<Symbol>(rng() % 3));
        const Cylinder big(b, b2.size() == b.size() ? f : Word{}), small(b2, f2);
        for (int j = 0; j < 20; ++j) {
            const Point p = oracle::random_point(rng, 1, 3);
            if (small.contains(p)) CHECK(big.contains(p));
        }
    }
}

TEST_CASE("basic neighbourhoods") {
    auto at_empty = basic_nbhds(Point{}, 0, 2, Alphabet::naturals().letters());
    CHECK(std::count(at_empty.begin(), at_empty.end(), Cylinder({}, {1})) == 1);
    CHECK(std::count(at_empty.begin(), at_empty.end(), Cylinder({}, {2})) == 1);

    auto constant = basic_nbhds(Point::evp({}, {1}), 3, 0);
    CHECK(constant == std::vector<Cylinder>{Cylinder({1}), Cylinder({1, 1}), Cylinder({1, 1, 1})});

    auto one = basic_nbhds(Point::finite({2}), 1, 1, Alphabet::naturals().letters());
    CHECK(std::count(one.begin(), one.end(), Cylinder({2}, {1})) == 1);

    std::mt19937_64 rng(1);
    for (int i = 0; i < 200; ++i) {
        const Point p = oracle::random_point(rng, 1, 5);
        for (const auto& c : basic_nbhds(p, 4, 3)) CHECK(c.contains(p));
    }
}

TEST_CASE("convergence falsifier") {
    PointFamily escaping{[](std::size_t i) { return Point::finite({static_cast<Symbol>(i)}); }, Point{}, ""};
    CHECK(check_convergence(escaping, 6, 16).consistent());

    PointFamily stuck{[](std::size_t) { return Point::evp({}, {1}); }, Point{}, ""};
    auto v = check_convergence(stuck, 6, 16);
    REQUIRE(v.refuted);
    REQUIRE(v.cylinder);
    CHECK(v.cylinder->contains(Point{}));
    CHECK_FALSE(v.cylinder->contains(Point::evp({}, {1})));

    PointFamily tails{[](std::size_t i) { return Point::finite({1, static_cast<Symbol>(i)}); }, Point::finite({1}), ""};
    CHECK(check_convergence(tails, 6, 16).consistent());

    PointFamily broken{[](std::size_t i) -> Point {
                           if (i > 3) throw DomainError("no member");
                           return Point{};
                       },
                       Point{}, ""};
    CHECK_THROWS(check_convergence(broken, 6, 16));
}
