#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "cshift/topology.hpp"
#include "cshift/trie.hpp"

namespace cshift {

/// Leaf labels of a set trie: true means the point belongs to the set.
using SetTrie = RuleTrie<bool>;

/// Coordinates 1..n of a point, empty letters included.
using LetterPrefix = std::vector<Letter>;

/// Set given by a prefix rule: decide returns a verdict, or nothing when it
/// needs a longer prefix. Verdicts never change once given. At most `fuel`
/// coordinates are consulted.
struct PredicateSet {
    std::function<std::optional<bool>(const LetterPrefix&)> decide;
    std::size_t fuel = 64;
    std::string name;
};

/// A finitely defined set in trie or predicate form.
class FDS {
public:
    /// Stored normalized, so membership reads no more than anticipation + 1
    /// coordinates.
    FDS(SetTrie trie) : rep_(trie.normalized()) {}
    FDS(PredicateSet pred) : rep_(std::move(pred)) {}

    bool is_trie() const { return std::holds_alternative<SetTrie>(rep_); }
    const SetTrie& trie() const;
    const PredicateSet& pred() const;

private:
    std::variant<SetTrie, PredicateSet> rep_;
};

struct MemberTrace {
    std::optional<bool> value;  // nothing when the predicate ran out of fuel
    std::size_t consulted = 0;
};

MemberTrace fds_member_traced(const FDS& s, const Point& p);
/// Membership; predicate sets give nothing when fuel runs out.
std::optional<bool> fds_member(const FDS& s, const Point& p);

/// depth - 1 of the normalized trie (0 for constant tries); nothing for
/// predicate sets.
std::optional<std::size_t> anticipation(const FDS& s);

FDS complement(const FDS& s);
FDS fds_union(const FDS& s, const FDS& t);
FDS fds_intersect(const FDS& s, const FDS& t);

SetTrie whole_space_trie();
SetTrie empty_set_trie();
SetTrie cylinder_to_trie(const Cylinder& c);
/// Union of the cylinders as one trie.
SetTrie cylinders_to_trie(const std::vector<Cylinder>& cs);

/// Exact equivalence on all of the full shift.
bool trie_equivalent(const SetTrie& a, const SetTrie& b);
/// Equivalence on the points of S (class-abstraction sampling of infinite
/// letter groups, exhaustive near explicit letters).
bool trie_equivalent_on(const SetTrie& a, const SetTrie& b, const ShiftPresentation& s);

struct CylinderExtraction {
    bool representable = false;
    std::vector<Cylinder> cylinders;
    std::string reason;
};

/// Cylinders whose union meets S exactly where the trie accepts. Regions
/// that would need infinitely many cylinders (an infinite and co-infinite
/// letter group, or an empty-letter verdict opposite to a cofinite group)
/// are reported as not representable.
CylinderExtraction trie_to_cylinders(const SetTrie& t, const ShiftPresentation& s);
CylinderExtraction trie_to_cylinders(const FDS& f, const ShiftPresentation& s);
/// Same over the full shift on the given alphabet.
CylinderExtraction trie_to_cylinders(const SetTrie& t, const Alphabet& a = Alphabet::integers());

struct InvarianceVerdict {
    bool holds = true;
    std::optional<Point> counterexample;
};

/// Tests sigma(C) within C on finite points of S up to `depth` letters and
/// `samples` seeded random points.
InvarianceVerdict fds_shift_invariant(const FDS& s, const ShiftPresentation& shift, std::size_t depth,
                                      std::size_t samples, std::uint64_t seed = 1);

/// The set of points whose first k letters all equal k for some k. Needs
/// unbounded lookahead; the predicate form is the only one available.
PredicateSet staircase_set(std::size_t fuel = 64);

}  // namespace cshift
