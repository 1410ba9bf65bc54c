#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "cshift/fds.hpp"

namespace cshift {

/// Finite-to-one letter maps a rule leaf may apply to one coordinate.
enum class LetterFn { identity, half_up };

Symbol apply_fn(LetterFn f, Symbol a);
/// { a : f(a) = b }.
SymbolSet preimage(LetterFn f, Symbol b);

/// Injective encoding of a word of fixed length as one letter (zigzag then
/// Cantor pairing). Throws DomainError when the code would leave the
/// representable letter range.
Symbol encode_block(const Word& w);
Word decode_block(Symbol code, std::size_t length);

/// What a rule-trie leaf outputs for the point it was reached from.
struct LeafOutput {
    enum class Kind { undefined, empty, constant, map, window };

    Kind kind = Kind::undefined;
    Symbol value = 0;              // constant letter
    LetterFn fn = LetterFn::identity;
    std::size_t offset = 0;        // map reads coordinate offset + 1
    std::size_t width = 0;         // window encodes coordinates 1..width

    static LeafOutput undefined() { return {}; }
    static LeafOutput empty() { return {Kind::empty}; }
    static LeafOutput constant(Symbol c) { return {Kind::constant, c}; }
    static LeafOutput map(LetterFn f, std::size_t offset) { return {Kind::map, 0, f, offset}; }
    static LeafOutput window(std::size_t width) { return {Kind::window, 0, LetterFn::identity, 0, width}; }

    /// Coordinates of the point the output reads (0 for constant leaves).
    std::size_t reach() const;
    Letter eval(const Point& p, std::size_t start = 1) const;

    friend bool operator==(const LeafOutput&, const LeafOutput&) = default;
};

std::string to_string(const LeafOutput& o);

using CodeTrie = RuleTrie<LeafOutput>;

/// First output coordinate from a prefix of the input: a letter, the empty
/// letter, or nothing when more coordinates are needed. At most `fuel`
/// coordinates are offered.
struct ComputableRule {
    std::function<std::optional<Letter>(const LetterPrefix&)> rule;
    std::size_t fuel = 64;
    std::string name;
};

/// Raised when a computable rule needs more coordinates than its fuel.
struct FuelExhausted : Error {
    using Error::Error;
};

class LocalRule {
public:
    LocalRule(CodeTrie t) : rep_(std::move(t)) {}
    LocalRule(ComputableRule r) : rep_(std::move(r)) {}

    bool is_trie() const { return std::holds_alternative<CodeTrie>(rep_); }
    const CodeTrie& trie() const;
    const ComputableRule& computable() const;

private:
    std::variant<CodeTrie, ComputableRule> rep_;
};

class SlidingBlockCode {
public:
    SlidingBlockCode(ShiftPresentation domain, Alphabet out, LocalRule rule, std::string name = {});

    const ShiftPresentation& domain() const { return domain_; }
    const Alphabet& out_alphabet() const { return out_; }
    const LocalRule& rule() const { return rule_; }
    const std::string& name() const { return name_; }

private:
    ShiftPresentation domain_;
    Alphabet out_;
    LocalRule rule_;
    std::string name_;
};

using PointMap = std::function<Point(const Point&)>;

/// First output coordinate of the code at coordinate `start` of p.
/// `consulted` receives the number of input coordinates read.
Letter first_coordinate(const SlidingBlockCode& c, const Point& p, std::size_t start = 1,
                        std::size_t* consulted = nullptr);
/// Same from a finite prefix; nothing when the prefix is too short.
std::optional<Letter> first_coordinate(const SlidingBlockCode& c, const LetterPrefix& w);

/// Image of a point of the domain. Throws DomainError outside the domain
/// and FuelExhausted when a computable rule runs out of fuel.
Point apply(const SlidingBlockCode& c, const Point& p);
PointMap as_map(const SlidingBlockCode& c);
/// Shift-commuting map whose output coordinate n is first(shift^(n-1) p).
/// Used for black-box maps given by a formula for the first coordinate.
PointMap coordinate_map(std::function<Letter(const Point&)> first);

/// Largest number of coordinates past the current one any reachable leaf
/// depends on; nothing for computable rules.
std::optional<std::size_t> code_anticipation(const SlidingBlockCode& c);

struct CodeReport {
    bool prefix_free = false;
    bool total = false;
    bool upsilon_suffix_closed = false;
    bool c_empty_invariant = false;
    bool fibers_finitely_defined = false;
    std::vector<std::string> notes;

    bool ok() const {
        return prefix_free && total && upsilon_suffix_closed && c_empty_invariant && fibers_finitely_defined;
    }
};

CodeReport validate(const SlidingBlockCode& c, std::size_t budget, std::uint64_t seed = 1);

/// Prefix-freeness of a list of rule words (letters may be empty).
bool prefix_free(const std::vector<LetterPrefix>& words);
/// Rule trie from a prefix-free word list; unlisted points get the
/// undefined leaf. Throws PreconditionError when the list is not prefix-free.
CodeTrie trie_from_words(const std::vector<std::pair<LetterPrefix, LeafOutput>>& words);

/// The set of points whose image starts with `a` (the empty letter allowed).
FDS fiber(const SlidingBlockCode& c, const Letter& a);

/// Output letters of reachable leaves: the fiber labels that can be
/// nonempty. Map leaves contribute the image of their letter group;
/// nothing when that image is infinite or the rule is computable.
std::optional<SymbolSet> output_letters(const SlidingBlockCode& c);
/// Whether some reachable leaf outputs the empty letter.
bool outputs_empty(const SlidingBlockCode& c);

struct MapCheck {
    bool pass = true;
    std::optional<Point> witness;
    std::string detail;
};

MapCheck check_shift_commute(const PointMap& f, const std::vector<Point>& samples);
MapCheck check_shift_commute(const SlidingBlockCode& c, std::size_t samples, std::uint64_t seed = 1);
/// Throws PreconditionError unless shift^period(p) = p.
MapCheck check_period_preserved(const SlidingBlockCode& c, const Point& p, std::size_t period);

struct EmptyImage {
    bool constant = false;
    Letter letter;  // the repeated letter, or empty for the empty sequence
    Point image;
};

EmptyImage check_empty_image_constant(const SlidingBlockCode& c);
/// Throws PreconditionError unless the code sends the empty sequence to itself.
MapCheck check_length_bound(const SlidingBlockCode& c, std::size_t samples, std::uint64_t seed = 1);

/// Two points agreeing on coordinates 1..depth+1 whose images differ at
/// coordinate 1: no rule with anticipation <= depth produces the map.
struct BlockWitness {
    Point first;
    Point second;
    Letter image_first;
    Letter image_second;
    std::size_t depth = 0;
};

std::optional<BlockWitness> falsify_sliding_block(const PointMap& f, const std::vector<Point>& pool,
                                                  std::size_t depth);
std::optional<BlockWitness> falsify_sliding_block(const PointMap& f, const ShiftPresentation& s,
                                                  std::size_t depth, std::size_t width);

/// Test points of S: completions of every language word of length at most
/// max_len over letters within `radius` of zero, at most `cap` points.
std::vector<Point> point_pool(const ShiftPresentation& s, std::size_t max_len, Symbol radius, std::size_t cap,
                              std::size_t per_word = 3);

/// Psi after Phi as a code with a computable rule whose fuel covers both
/// anticipations.
SlidingBlockCode compose(const SlidingBlockCode& phi, const SlidingBlockCode& psi);

/// A finite image point violating the infinite extension property of the
/// image set: the image letter set is finite, so no finite image point but
/// the empty one may belong, and that one only if the letter set is infinite.
struct IepFailure {
    Point image;
    Point preimage;
    std::string reason;
};

std::optional<IepFailure> image_iep_failure(const SlidingBlockCode& c, const std::vector<Point>& pool);

}  // namespace cshift
