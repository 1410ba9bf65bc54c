#include <random>

#include "cshift/gallery.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace cshift;

namespace {

using T = SetTrie;

T random_trie(std::mt19937_64& rng) { return oracle::random_set_trie(rng); }

Cylinder random_cylinder(std::mt19937_64& rng) { return oracle::random_cylinder(rng); }

bool member(const FDS& s, const Point& p) { return fds_member(s, p).value(); }

bool walk(const T& t, const Point& p) { return oracle::walk<bool>(t.root(), oracle::unroll(p, 8)); }

}  // namespace

TEST_CASE("membership in trie and predicate sets") {
    const FDS z = cylinder_to_trie(Cylinder({}, {1, 2}));
    CHECK(member(z, Point::finite({3, 1})));
    CHECK_FALSE(member(z, Point::finite({2, 3})));

    const Symbol a = 4;
    const FDS second = T(T::node({}, T::node({{SymbolSet::single(a), T::leaf(true)}}, T::leaf(false))));
    CHECK(member(second, Point::evp({}, {a})));
    CHECK_FALSE(member(second, Point::evp({}, {a + 1})));

    const FDS stairs = staircase_set();
    CHECK(fds_member(stairs, Point::finite({2, 2})) == true);
    CHECK(fds_member(stairs, Point::finite({2, 1})) == false);
    CHECK_FALSE(fds_member(FDS(staircase_set(4)), Point::evp({}, {9})).has_value());
}

TEST_CASE("anticipation") {
    CHECK(anticipation(cylinder_to_trie(Cylinder({1, 2, 3}))) == 2u);
    CHECK(anticipation(cylinder_to_trie(Cylinder({1, 2, 3}, {4}))) == 3u);
    CHECK(anticipation(whole_space_trie()) == 0u);
    CHECK(anticipation(T(T::node({{SymbolSet::single(1), T::leaf(true)}}, T::leaf(true)))) == 0u);
    CHECK_FALSE(anticipation(staircase_set()).has_value());
}

TEST_CASE("complement") {
    const FDS z = cylinder_to_trie(Cylinder({}, {1}));
    CHECK(trie_equivalent(complement(complement(z)).trie(), z.trie()));
    CHECK(trie_equivalent(complement(whole_space_trie()).trie(), empty_set_trie()));
    CHECK(member(complement(z), Point::finite({1})));
    CHECK(fds_member(complement(staircase_set()), Point::finite({1})) == false);
}

TEST_CASE("union and intersection") {
    const FDS z = cylinder_to_trie(Cylinder({1}));
    CHECK(trie_equivalent(fds_union(z, complement(z)).trie(), whole_space_trie()));
    const FDS clash = fds_intersect(z, cylinder_to_trie(Cylinder({}, {1})));
    CHECK(trie_equivalent(clash.trie(), empty_set_trie()));

    FDS any = empty_set_trie();
    for (Symbol a = 1; a <= 3; ++a) any = fds_union(any, cylinder_to_trie(Cylinder({a})));
    std::mt19937_64 rng(4);
    for (int i = 0; i < 100; ++i) {
        const Point p = oracle::random_point(rng, 0, 5);
        const Letter x1 = p.at(1);
        CHECK(member(any, p) == (x1 && *x1 >= 1 && *x1 <= 3));
    }
}

TEST_CASE("cylinder tries") {
    const T open = cylinder_to_trie(Cylinder({}, {5}));
    CHECK(walk(open, Point{}));
    CHECK_FALSE(walk(open, Point::finite({5})));
    CHECK(walk(open, Point::finite({6})));

    const T path = cylinder_to_trie(Cylinder({1, 2}));
    CHECK(walk(path, Point::finite({1, 2})));
    CHECK_FALSE(walk(path, Point::finite({1, 3})));
    CHECK_FALSE(walk(path, Point::finite({2})));

    const T mixed = cylinder_to_trie(Cylinder({1}, {5}));
    CHECK(walk(mixed, Point::finite({1})));
    CHECK(walk(mixed, Point::finite({1, 4})));
    CHECK_FALSE(walk(mixed, Point::finite({1, 5})));
    CHECK_FALSE(walk(mixed, Point::finite({2})));
}

TEST_CASE("cylinder extraction") {
    const auto one = trie_to_cylinders(cylinder_to_trie(Cylinder({1}, {5})));
    REQUIRE(one.representable);
    CHECK(one.cylinders == std::vector<Cylinder>{Cylinder({1}, {5})});

    const auto whole = trie_to_cylinders(whole_space_trie());
    REQUIRE(whole.representable);
    CHECK(whole.cylinders == std::vector<Cylinder>{Cylinder()});

    const Symbol a = 7;
    const T t(T::node({{SymbolSet::single(1), T::node({{SymbolSet::single(a), T::leaf(true)}}, T::leaf(false))}},
                      T::leaf(true)));
    const auto two = trie_to_cylinders(t);
    REQUIRE(two.representable);
    CHECK(two.cylinders.size() == 2);
    CHECK(std::count(two.cylinders.begin(), two.cylinders.end(), Cylinder({1, a})) == 1);
    CHECK(std::count(two.cylinders.begin(), two.cylinders.end(), Cylinder({}, {1})) == 1);

    CHECK_FALSE(trie_to_cylinders(FDS(staircase_set()), ShiftPresentation::full(Alphabet::naturals())).representable);
}

TEST_CASE("shift invariance") {
    const FDS only_empty = T(T::node({}, T::leaf(false), T::leaf(true)));
    CHECK(fds_shift_invariant(only_empty, gallery_shift('b'), 4, 200).holds);

    const auto full = ShiftPresentation::full(Alphabet::naturals());
    const auto v = fds_shift_invariant(cylinder_to_trie(Cylinder({1})), full, 3, 200);
    REQUIRE_FALSE(v.holds);
    REQUIRE(v.counterexample);
    CHECK(Cylinder({1}).contains(*v.counterexample));
    CHECK_FALSE(Cylinder({1}).contains(v.counterexample->shift()));

    CHECK(fds_shift_invariant(whole_space_trie(), full, 4, 200).holds);
}

TEST_CASE("boolean algebra agrees pointwise on random tries") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 300; ++i) {
        const T s = random_trie(rng), t = random_trie(rng);
        const FDS u = fds_union(s, t), n = fds_intersect(s, t);
        const FDS lhs = complement(u), rhs = fds_intersect(complement(s), complement(t));
        CHECK(trie_equivalent(lhs.trie(), rhs.trie()));
        CHECK(anticipation(u) <= std::max(anticipation(s), anticipation(t)));
        for (int j = 0; j < 100; ++j) {
            const Point p = oracle::random_point(rng, 0, 6);
            const bool a = walk(s, p), b = walk(t, p);
            CHECK(member(u, p) == (a || b));
            CHECK(member(n, p) == (a && b));
            CHECK(member(lhs, p) == !(a || b));
            CHECK(member(complement(s), p) == !a);
        }
    }
}

TEST_CASE("cylinders survive the trie roundtrip") {
    std::mt19937_64 rng(123);
    for (int i = 0; i < 500; ++i) {
        const Cylinder c = random_cylinder(rng);
        const T t = cylinder_to_trie(c);
        const auto back = trie_to_cylinders(t);
        REQUIRE(back.representable);
        const T again = cylinders_to_trie(back.cylinders);
        CHECK(trie_equivalent(t, again));
        for (int j = 0; j < 100; ++j) {
            const Point p = oracle::random_point(rng, 0, 6);
            const auto x = oracle::unroll(p, 8);
            CHECK(walk(t, p) == oracle::in_cylinder(c.base(), c.excluded(), x));
            bool any = false;
            for (const auto& z : back.cylinders) any = any || oracle::in_cylinder(z.base(), z.excluded(), x);
            CHECK(any == walk(t, p));
        }
    }
}

TEST_CASE("extracted cylinders of random tries cover the accepted points") {
    std::mt19937_64 rng(321);
    int representable = 0;
    for (int i = 0; i < 300; ++i) {
        const T t = random_trie(rng);
        const auto ex = trie_to_cylinders(t);
        if (!ex.representable) continue;
        ++representable;
        CHECK(trie_equivalent(cylinders_to_trie(ex.cylinders), t));
    }
    CHECK(representable > 50);
}

TEST_CASE("membership reads at most anticipation plus one coordinates") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 300; ++i) {
        const T t = random_trie(rng);
        const auto ant = anticipation(t).value();
        for (int j = 0; j < 30; ++j) {
            const Point p = oracle::random_point(rng, 0, 6);
            const auto tr = fds_member_traced(t, p);
            CHECK(tr.consulted <= ant + 1);
            CHECK(tr.value == walk(t, p));
        }
    }
}
