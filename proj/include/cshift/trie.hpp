#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "cshift/core.hpp"
#include "cshift/shiftspace.hpp"

namespace cshift {

/// Finite decision trie over letters. An internal node branches on disjoint
/// letter sets, has an optional edge for the empty letter, and a fallback
/// child taking every other letter (and the empty letter when there is no
/// dedicated edge). Nodes are immutable and shared between tries.
template <class Leaf>
class RuleTrie {
public:
    struct Node;
    using Ptr = std::shared_ptr<const Node>;

    struct Branch {
        SymbolSet letters;
        Ptr child;
    };

    struct Node {
        std::optional<Leaf> leaf;
        std::vector<Branch> branches;
        Ptr on_empty;
        Ptr fallback;

        bool is_leaf() const { return leaf.has_value(); }

        const Ptr& child(const Letter& a) const {
            if (!a) return on_empty ? on_empty : fallback;
            for (const auto& b : branches)
                if (b.letters.contains(*a)) return b.child;
            return fallback;
        }
    };

    static Ptr leaf(Leaf value) {
        auto n = std::make_shared<Node>();
        n->leaf = std::move(value);
        return n;
    }

    static Ptr node(std::vector<Branch> branches, Ptr fallback, Ptr on_empty = nullptr) {
        if (!fallback) throw PreconditionError("trie node needs a fallback child");
        SymbolSet seen;
        std::vector<Branch> kept;
        for (auto& b : branches) {
            if (!b.child) throw PreconditionError("trie branch without child");
            if (!(seen & b.letters).empty()) throw PreconditionError("trie branches overlap");
            seen = seen | b.letters;
            if (!b.letters.empty()) kept.push_back(std::move(b));
        }
        auto n = std::make_shared<Node>();
        n->branches = std::move(kept);
        n->fallback = std::move(fallback);
        n->on_empty = std::move(on_empty);
        return n;
    }

    RuleTrie() : root_(leaf(Leaf{})) {}
    explicit RuleTrie(Ptr root) : root_(std::move(root)) {
        if (!root_) throw PreconditionError("trie without root");
    }

    const Ptr& root() const { return root_; }

    /// Leaf reached by reading p from coordinate `start` on. `consulted`
    /// receives the number of coordinates read.
    const Leaf& eval(const Point& p, std::size_t start = 1, std::size_t* consulted = nullptr) const {
        const Node* n = root_.get();
        std::size_t read = 0;
        while (!n->is_leaf()) {
            n = n->child(p.at(start + read)).get();
            ++read;
        }
        if (consulted) *consulted = read;
        return *n->leaf;
    }

    /// Edges on the longest root-to-leaf path.
    std::size_t depth() const { return depth_of(root_); }

    /// Distinct leaf values in first-seen order.
    std::vector<Leaf> leaves() const {
        std::vector<Leaf> out;
        collect(root_, out);
        return out;
    }

    template <class F>
    auto map(F f) const {
        using Out = std::invoke_result_t<F, const Leaf&>;
        return RuleTrie<Out>(map_node<Out>(root_, f));
    }

    /// Equivalent trie with constant subtrees collapsed to leaves and sibling
    /// branches into equal subtrees merged.
    RuleTrie normalized() const { return RuleTrie(normalize(root_)); }

    static bool same(const Ptr& a, const Ptr& b) {
        if (a == b) return true;
        if (!a || !b) return false;
        if (a->leaf != b->leaf) return false;
        if (a->is_leaf()) return true;
        if (a->branches.size() != b->branches.size()) return false;
        for (std::size_t i = 0; i < a->branches.size(); ++i)
            if (!(a->branches[i].letters == b->branches[i].letters) ||
                !same(a->branches[i].child, b->branches[i].child))
                return false;
        return same(a->on_empty, b->on_empty) && same(a->fallback, b->fallback);
    }

    friend bool operator==(const RuleTrie& a, const RuleTrie& b) { return same(a.root_, b.root_); }

    static std::size_t depth_of(const Ptr& n) {
        if (!n || n->is_leaf()) return 0;
        std::size_t d = depth_of(n->fallback);
        for (const auto& b : n->branches) d = std::max(d, depth_of(b.child));
        if (n->on_empty) d = std::max(d, depth_of(n->on_empty));
        return d + 1;
    }

    static Ptr normalize(const Ptr& n) {
        if (n->is_leaf()) return n;
        Ptr fallback = normalize(n->fallback);
        Ptr on_empty = n->on_empty ? normalize(n->on_empty) : nullptr;
        if (on_empty && same(on_empty, fallback)) on_empty = nullptr;
        std::vector<Branch> merged;
        for (const auto& b : n->branches) {
            Ptr c = normalize(b.child);
            if (same(c, fallback)) continue;
            bool joined = false;
            for (auto& m : merged) {
                if (same(m.child, c)) {
                    m.letters = m.letters | b.letters;
                    joined = true;
                    break;
                }
            }
            if (!joined) merged.push_back({b.letters, c});
        }
        if (merged.empty() && !on_empty && fallback->is_leaf()) return fallback;
        std::sort(merged.begin(), merged.end(), [](const Branch& x, const Branch& y) {
            return x.letters.intervals().front().lo < y.letters.intervals().front().lo;
        });
        return node(std::move(merged), fallback, on_empty);
    }

private:
    static void collect(const Ptr& n, std::vector<Leaf>& out) {
        if (n->is_leaf()) {
            if (std::find(out.begin(), out.end(), *n->leaf) == out.end()) out.push_back(*n->leaf);
            return;
        }
        for (const auto& b : n->branches) collect(b.child, out);
        if (n->on_empty) collect(n->on_empty, out);
        collect(n->fallback, out);
    }

    template <class Out, class F>
    static typename RuleTrie<Out>::Ptr map_node(const Ptr& n, F& f) {
        using T = RuleTrie<Out>;
        if (n->is_leaf()) return T::leaf(f(*n->leaf));
        std::vector<typename T::Branch> bs;
        for (const auto& b : n->branches) bs.push_back({b.letters, map_node<Out>(b.child, f)});
        return T::node(std::move(bs), map_node<Out>(n->fallback, f),
                       n->on_empty ? map_node<Out>(n->on_empty, f) : nullptr);
    }

    Ptr root_;
};

/// Pointwise combination of two tries: the result reads a point once and
/// returns f(leaf of a, leaf of b).
template <class A, class B, class F>
auto trie_product(const RuleTrie<A>& a, const RuleTrie<B>& b, F f) {
    using Out = std::invoke_result_t<F, const A&, const B&>;
    using T = RuleTrie<Out>;
    using PA = typename RuleTrie<A>::Ptr;
    using PB = typename RuleTrie<B>::Ptr;
    std::function<typename T::Ptr(const PA&, const PB&)> go = [&](const PA& x, const PB& y) -> typename T::Ptr {
        if (x->is_leaf() && y->is_leaf()) return T::leaf(f(*x->leaf, *y->leaf));
        auto step_a = [&](const Letter& c) -> PA { return x->is_leaf() ? x : x->child(c); };
        auto step_b = [&](const Letter& c) -> PB { return y->is_leaf() ? y : y->child(c); };
        std::vector<SymbolSet> sa, sb;
        if (!x->is_leaf())
            for (const auto& br : x->branches) sa.push_back(br.letters);
        if (!y->is_leaf())
            for (const auto& br : y->branches) sb.push_back(br.letters);
        // Regions where both sides take fixed children.
        std::vector<SymbolSet> regions;
        SymbolSet ua, ub;
        for (const auto& s : sa) ua = ua | s;
        for (const auto& s : sb) ub = ub | s;
        for (const auto& s : sa) {
            for (const auto& t : sb)
                if (auto r = s & t; !r.empty()) regions.push_back(r);
            if (auto r = s - ub; !r.empty()) regions.push_back(r);
        }
        for (const auto& t : sb)
            if (auto r = t - ua; !r.empty()) regions.push_back(r);
        std::vector<typename T::Branch> out;
        for (const auto& r : regions) {
            const auto& i = r.intervals().front();
            const Symbol rep = i.lo != kNegInf ? i.lo : (i.hi != kPosInf ? i.hi : 0);
            out.push_back({r, go(step_a(rep), step_b(rep))});
        }
        auto fa = x->is_leaf() ? x : x->fallback;
        auto fb = y->is_leaf() ? y : y->fallback;
        auto empty = go(step_a(std::nullopt), step_b(std::nullopt));
        return T::node(std::move(out), go(fa, fb), empty);
    };
    return T(go(a.root(), b.root()));
}

/// Finite stand-in for an infinite letter group: every letter within
/// `radius` of zero plus class representatives of the shift beyond it.
/// Rules and presentations behave uniformly on each class far from the
/// explicit letters, so the sample decides questions about the whole group.
struct LetterSampler {
    Symbol radius = 3;
    SymbolClassPartition classes;

    template <class Leaf>
    static LetterSampler for_trie(const RuleTrie<Leaf>& t, const ShiftPresentation& s) {
        using Ptr = typename RuleTrie<Leaf>::Ptr;
        LetterSampler out;
        out.classes = s.classes();
        std::function<void(const Ptr&)> scan = [&](const Ptr& n) {
            if (n->is_leaf()) return;
            for (const auto& b : n->branches) {
                for (const auto& i : b.letters.intervals()) {
                    if (i.lo != kNegInf) out.widen(i.lo);
                    if (i.hi != kPosInf) out.widen(i.hi);
                }
                scan(b.child);
            }
            if (n->on_empty) scan(n->on_empty);
            scan(n->fallback);
        };
        scan(t.root());
        return out;
    }

    void widen(Symbol a) { radius = std::max(radius, (a < 0 ? -a : a) + 3); }

    SymbolSet window() const { return SymbolSet::range(-radius, radius); }

    /// Representatives of the part of g outside the window.
    std::vector<Symbol> far(const SymbolSet& g) const {
        std::vector<Symbol> out;
        const SymbolSet rest = g - window();
        for (const auto& c : classes.classes) {
            auto r = representatives(rest & c, 2);
            out.insert(out.end(), r.begin(), r.end());
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    std::vector<Symbol> sample(const SymbolSet& g) const {
        if (auto size = g.size(); size && *size <= 64) return g.elements();
        std::vector<Symbol> out = (g & window()).elements();
        auto f = far(g);
        out.insert(out.end(), f.begin(), f.end());
        return out;
    }
};

/// Verdict at the end of the word: follow empty-letter edges to a leaf.
template <class Leaf>
const Leaf& empty_leaf(const typename RuleTrie<Leaf>::Ptr& n) {
    const auto* m = n.get();
    while (!m->is_leaf()) m = m->child(std::nullopt).get();
    return *m->leaf;
}

/// Visits the leaves of a trie reachable along words of the language of S.
/// `visit(prefix, leaf, ended)` receives the language word read before the
/// leaf and whether the walk consumed the empty letter (then the prefix is
/// a finite point of S). Infinite letter groups are sampled.
template <class Leaf, class Visit>
void visit_reachable(const RuleTrie<Leaf>& t, const ShiftPresentation& s, Visit visit) {
    using Ptr = typename RuleTrie<Leaf>::Ptr;
    const auto sampler = LetterSampler::for_trie(t, s);
    std::function<void(const Ptr&, Word&)> go = [&](const Ptr& n, Word& p) {
        if (n->is_leaf()) {
            visit(static_cast<const Word&>(p), *n->leaf, false);
            return;
        }
        const bool empty_ok = p.empty() ? s.contains(Point{}) : s.has_iep(p);
        if (empty_ok) visit(static_cast<const Word&>(p), empty_leaf<Leaf>(n), true);
        const SymbolSet follow = s.follower(p);
        SymbolSet listed;
        auto descend = [&](const SymbolSet& g, const Ptr& child) {
            for (Symbol a : sampler.sample(g)) {
                p.push_back(a);
                go(child, p);
                p.pop_back();
            }
        };
        for (const auto& b : n->branches) {
            listed = listed | b.letters;
            descend(b.letters & follow, b.child);
        }
        descend(follow - listed, n->fallback);
    };
    Word p;
    go(t.root(), p);
}

}  // namespace cshift
