#pragma once

#include <optional>
#include <random>
#include <vector>

#include "cshift/core.hpp"

namespace cshift {

/// One transition clause of a 1-step presentation. A letter a in `source`
/// may be followed by every letter of `absolute` and of anchor(a) + `relative`,
/// where anchor(a) is a itself (block == 1) or the first letter of the
/// width-`block` block containing a, blocks starting at letters congruent
/// to `block_base`.
struct EdgeClause {
    SymbolSet source;
    SymbolSet absolute;
    SymbolSet relative;
    Symbol block = 1;
    Symbol block_base = 0;

    Symbol anchor(Symbol a) const;
    SymbolSet targets(Symbol a) const;
    /// { a in source : targets(a) meets t }.
    SymbolSet sources_reaching(const SymbolSet& t) const;

    friend bool operator==(const EdgeClause&, const EdgeClause&) = default;
};

/// Finite partition of an alphabet into letter classes (intervals) on which
/// a presentation behaves uniformly up to translation.
struct SymbolClassPartition {
    std::vector<SymbolSet> classes;

    std::size_t class_of(Symbol a) const;
};

struct ShiftClass {
    bool is_sft = false;
    std::optional<std::size_t> m_step;
    bool row_finite = false;
    bool column_finite = false;

    friend bool operator==(const ShiftClass&, const ShiftClass&) = default;
};

/// A shift space X_F given either by a finite list of forbidden words or by
/// 1-step edge clauses. Letters without an infinite forward path are pruned
/// once at construction, so language queries are exact.
class ShiftPresentation {
public:
    static ShiftPresentation full(Alphabet alphabet);
    static ShiftPresentation forbidden(Alphabet alphabet, std::vector<Word> words);
    static ShiftPresentation edges(Alphabet alphabet, std::vector<EdgeClause> clauses);

    bool is_edge_form() const { return edge_form_; }
    const Alphabet& alphabet() const { return alphabet_; }
    const std::vector<Word>& forbidden_words() const { return words_; }
    const std::vector<EdgeClause>& clauses() const { return clauses_; }
    /// Longest forbidden word minus one (forbidden form) or 1 (edge form).
    std::size_t memory() const;

    /// The letters L of the shift space.
    const SymbolSet& letters() const { return live_; }

    /// True iff w is a factor of some point. Throws DomainError for letters
    /// outside the alphabet.
    bool in_language(const Word& w) const;
    /// { b : wb in the language }. Throws DomainError if w is not in it.
    SymbolSet follower(const Word& w) const;
    /// { b : bw in the language }. Throws DomainError if w is not in it.
    SymbolSet predecessor(const Word& w) const;
    /// Infinite extension property at w (for the empty word: L is infinite).
    bool has_iep(const Word& w) const;
    bool contains(const Point& p) const;

    SymbolClassPartition classes() const;
    ShiftClass classify() const;

    friend bool operator==(const ShiftPresentation& a, const ShiftPresentation& b) {
        return a.alphabet_ == b.alphabet_ && a.edge_form_ == b.edge_form_ && a.words_ == b.words_ &&
               a.clauses_ == b.clauses_;
    }

private:
    explicit ShiftPresentation(Alphabet alphabet) : alphabet_(alphabet) {}

    void check_letters(const Word& w) const;
    SymbolSet raw_follower(Symbol a) const;
    bool factor_free(const Word& w) const;
    bool extendable(const Word& w) const;
    void compute_live();

    Alphabet alphabet_;
    bool edge_form_ = false;
    std::vector<Word> words_;
    std::vector<EdgeClause> clauses_;
    SymbolSet explicit_;  // letters occurring in forbidden words
    SymbolSet generic_;   // alphabet letters not occurring in forbidden words
    SymbolSet live_;
};

inline bool block_in_language(const ShiftPresentation& s, const Word& w) { return s.in_language(w); }
inline SymbolSet follower(const ShiftPresentation& s, const Word& w) { return s.follower(w); }
inline SymbolSet predecessor(const ShiftPresentation& s, const Word& w) { return s.predecessor(w); }
inline bool has_iep_at(const ShiftPresentation& s, const Word& w) { return s.has_iep(w); }
inline bool contains_point(const ShiftPresentation& s, const Point& p) { return s.contains(p); }
inline ShiftClass classify(const ShiftPresentation& s) { return s.classify(); }

/// Far-offset used for class representatives of unbounded classes.
inline constexpr Symbol kFarOffset = 1000;

/// Representatives of a letter set: every letter when the set is small,
/// otherwise the `near` letters at each finite end of every interval plus
/// one letter `kFarOffset` beyond them on each unbounded side.
std::vector<Symbol> representatives(const SymbolSet& s, std::size_t near);

/// Language words of exactly `len` letters, branching over representatives
/// of each class within every follower set.
std::vector<Word> enumerate_words(const ShiftPresentation& s, std::size_t len, std::size_t near);

/// Finite points of the shift with length at most max_len.
std::vector<Point> enumerate_finite_points(const ShiftPresentation& s, std::size_t max_len,
                                           std::size_t per_class_reps);

/// Points of the shift extending the language word w: w itself when it is a
/// finite point, then eventually periodic completions built by greedy
/// continuation with cycle detection. At most `count` distinct points.
std::vector<Point> completions(const ShiftPresentation& s, const Word& w, std::size_t count);

/// Seeded mixture of finite and eventually periodic points of the shift.
std::vector<Point> sample_points(const ShiftPresentation& s, std::mt19937_64& rng, std::size_t count,
                                 std::size_t max_len = 6);

}  // namespace cshift
