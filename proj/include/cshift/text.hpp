#pragma once

#include <string>
#include <variant>
#include <vector>

#include "cshift/hbc.hpp"

namespace cshift {

/// Positioned parse failure.
struct ParseError : Error {
    ParseError(std::size_t line, std::size_t column, std::string expected);

    std::size_t line;
    std::size_t column;
    std::string expected;
};

using Value = std::variant<Point, BlockPoint, Cylinder, Alphabet, ShiftPresentation, SetTrie, CodeTrie, SlidingBlockCode>;

struct Item {
    std::string name;
    Value value;
};

/// Named literals, one per item: `name = <literal>`; `#` starts a comment.
///
///   point     [1,2,3]  [1|2,3]  []  [|3]
///   blocks    [[1,2],[2,3]|[3,3]]
///   cylinder  Z([1,2] ; {3,4})  Z([1,2])  Z(; {3})  Z()
///   alphabet  naturals  integers  finite(3)
///   shift     shift { alphabet = naturals }
///             shift { alphabet = naturals; forbidden = [[1,1],[2,1]] }
///             shift { alphabet = integers; edges = gallery:f }
///             shift { alphabet = naturals; edges = [{3..} -> abs {} rel {-1}, rest -> abs {1..} rel {}] }
///   set trie  {1: {2: in, _: out}, {3..5}: in, empty: out, _: out}
///   code trie {{1,2}: id@0, empty: 3, _: 3}
///   code      code { domain = <shift>; out-alphabet = <alphabet>; rule = <code trie> }
///
/// Letter sets are written {1..3,5,7..}, {..0}, {..} or {}. An edge class may
/// carry `block N base B`; `rest` is every letter not named by earlier classes.
/// Code trie leaves: undefined, empty, a letter, id@k, half@k, window@m.
struct Document {
    std::vector<Item> items;

    /// First item holding a T; throws PreconditionError when there is none.
    template <class T>
    const T& first() const {
        for (const auto& i : items)
            if (auto* v = std::get_if<T>(&i.value)) return *v;
        throw PreconditionError("document has no item of the requested kind");
    }
};

Document parse(const std::string& text);
std::string print(const Document& d);

Value parse_value(const std::string& text);
Point parse_point(const std::string& text);
BlockPoint parse_block_point(const std::string& text);
std::string print_value(const Value& v);

std::string print_shift(const ShiftPresentation& s);
std::string print_alphabet(const Alphabet& a);
std::string print_trie(const SetTrie& t);
std::string print_trie(const CodeTrie& t);
/// Throws PreconditionError for computable rules, which have no text form.
std::string print_code(const SlidingBlockCode& c);

}  // namespace cshift
