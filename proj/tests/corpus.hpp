#pragma once

// Documents for the parse/print roundtrip: handwritten literals of every kind,
// the gallery in text form and seeded random points and tries.

#include <random>
#include <string>
#include <vector>

#include "cshift/gallery.hpp"
#include "cshift/text.hpp"
#include "oracle.hpp"

inline std::vector<std::string> handwritten() {
    return {
        "p = [1|2,3]",
        "p = [1,2,3]\nq = []\nr = [|3]",
        "# a comment\nb = [[1,2],[2,3]|[3,3]]",
        "c = Z([1]; {5})",
        "c = Z([1,2] ; {3,4})\nd = Z(; {3})\ne = Z()",
        "a = naturals\nb = integers\nc = finite(3)",
        "s = shift { alphabet = naturals }",
        "s = shift { alphabet = integers; forbidden = [[1,1],[2,3]] }",
        "s = shift { alphabet = naturals; edges = [{1..} -> abs {} rel {0,1} block 2 base 1] }",
        "s = shift { alphabet = integers; edges = gallery:f }",
        "s = shift { alphabet = naturals; edges = [{3..} -> abs {} rel {-1}, rest -> abs {1..} rel {}] }",
        "t = {1: {2: in, _: out}, {3..5}: in, empty: out, _: out}",
        "r = {{1..2}: id@0, empty: 3, _: -3}",
        "l = {_: half@0}",
        "w = {_: window@2, empty: empty}",
        "u = {1: undefined, _: 4}",
        "c = code {\n  domain = shift { alphabet = naturals };  # full shift\n  out-alphabet = naturals;\n"
        "  rule = {_: half@0, empty: empty} }",
    };
}

inline std::vector<std::string> roundtrip_corpus() {
    using namespace cshift;
    std::vector<std::string> corpus = handwritten();
    for (char id : kGalleryIds) {
        corpus.push_back("s = " + print_shift(gallery_shift(id)));
        if (id != 'b' && id != 'c' && id != 'e') corpus.push_back("c = " + print_code(gallery_code(id)));
    }
    std::mt19937_64 rng(12);
    for (int i = 0; i < 10; ++i) {
        std::string doc;
        for (int j = 0; j < 4; ++j)
            doc += "p" + std::to_string(j) + " = " + print_value(oracle::random_point(rng, -3, 9)) + "\n";
        doc += "t = " + print_trie(oracle::random_set_trie(rng)) + "\n";
        corpus.push_back(doc);
    }
    return corpus;
}
