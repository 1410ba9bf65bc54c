#include "cshift/fds.hpp"

#include <algorithm>

namespace cshift {

const SetTrie& FDS::trie() const {
    if (auto* t = std::get_if<SetTrie>(&rep_)) return *t;
    throw PreconditionError("finitely defined set is not in trie form");
}

const PredicateSet& FDS::pred() const {
    if (auto* p = std::get_if<PredicateSet>(&rep_)) return *p;
    throw PreconditionError("finitely defined set is not in predicate form");
}

MemberTrace fds_member_traced(const FDS& s, const Point& p) {
    MemberTrace out;
    if (s.is_trie()) {
        out.value = s.trie().eval(p, 1, &out.consulted);
        return out;
    }
    const auto& pred = s.pred();
    LetterPrefix prefix;
    for (std::size_t n = 1; n <= pred.fuel; ++n) {
        prefix.push_back(p.at(n));
        out.consulted = n;
        if (auto v = pred.decide(prefix)) {
            out.value = *v;
            return out;
        }
    }
    return out;
}

std::optional<bool> fds_member(const FDS& s, const Point& p) { return fds_member_traced(s, p).value; }

std::optional<std::size_t> anticipation(const FDS& s) {
    if (!s.is_trie()) return std::nullopt;
    const std::size_t d = s.trie().normalized().depth();
    return d == 0 ? 0 : d - 1;
}

namespace {

PredicateSet as_pred(const FDS& s) {
    if (!s.is_trie()) return s.pred();
    SetTrie t = s.trie();
    const std::size_t fuel = t.depth() + 1;
    return {[t](const LetterPrefix& w) -> std::optional<bool> {
                const auto* n = t.root().get();
                for (const auto& a : w) {
                    if (n->is_leaf()) break;
                    n = n->child(a).get();
                }
                if (n->is_leaf()) return *n->leaf;
                return std::nullopt;
            },
            fuel, "trie"};
}

PredicateSet combine(const PredicateSet& a, const PredicateSet& b, bool want_union) {
    return {[a, b, want_union](const LetterPrefix& w) -> std::optional<bool> {
                auto x = a.decide(w);
                auto y = b.decide(w);
                // A decisive side settles the result without the other.
                if (x && *x == want_union) return want_union;
                if (y && *y == want_union) return want_union;
                if (x && y) return !want_union;
                return std::nullopt;
            },
            std::max(a.fuel, b.fuel), a.name + (want_union ? " | " : " & ") + b.name};
}

}  // namespace

FDS complement(const FDS& s) {
    if (s.is_trie()) return FDS(s.trie().map([](bool v) { return !v; }));
    auto p = s.pred();
    auto inner = p.decide;
    p.decide = [inner](const LetterPrefix& w) -> std::optional<bool> {
        if (auto v = inner(w)) return !*v;
        return std::nullopt;
    };
    p.name = "not " + p.name;
    return FDS(p);
}

FDS fds_union(const FDS& s, const FDS& t) {
    if (s.is_trie() && t.is_trie())
        return FDS(trie_product(s.trie(), t.trie(), [](bool x, bool y) { return x || y; }).normalized());
    return FDS(combine(as_pred(s), as_pred(t), true));
}

FDS fds_intersect(const FDS& s, const FDS& t) {
    if (s.is_trie() && t.is_trie())
        return FDS(trie_product(s.trie(), t.trie(), [](bool x, bool y) { return x && y; }).normalized());
    return FDS(combine(as_pred(s), as_pred(t), false));
}

SetTrie whole_space_trie() { return SetTrie(SetTrie::leaf(true)); }
SetTrie empty_set_trie() { return SetTrie(SetTrie::leaf(false)); }

SetTrie cylinder_to_trie(const Cylinder& c) {
    auto out = SetTrie::leaf(false);
    SetTrie::Ptr n = SetTrie::leaf(true);
    if (!c.excluded().empty())
        n = SetTrie::node({{SymbolSet::of(c.excluded()), out}}, SetTrie::leaf(true));
    const auto& base = c.base();
    for (auto it = base.rbegin(); it != base.rend(); ++it) n = SetTrie::node({{SymbolSet::single(*it), n}}, out);
    return SetTrie(n);
}

SetTrie cylinders_to_trie(const std::vector<Cylinder>& cs) {
    SetTrie acc = empty_set_trie();
    for (const auto& c : cs)
        acc = trie_product(acc, cylinder_to_trie(c), [](bool x, bool y) { return x || y; }).normalized();
    return acc;
}

bool trie_equivalent(const SetTrie& a, const SetTrie& b) {
    auto diff = trie_product(a, b, [](bool x, bool y) { return x != y; }).normalized();
    return diff.root()->is_leaf() && !*diff.root()->leaf;
}

bool trie_equivalent_on(const SetTrie& a, const SetTrie& b, const ShiftPresentation& s) {
    auto diff = trie_product(a, b, [](bool x, bool y) { return x != y; }).normalized();
    bool differs = false;
    visit_reachable(diff, s, [&](const Word&, bool v, bool) { differs = differs || v; });
    return !differs;
}

namespace {

struct Extractor {
    // Language hooks; over a full shift these ignore the prefix.
    std::function<SymbolSet(const Word&)> follower;
    std::function<bool(const Word&)> ends_ok;
    LetterSampler sampler;
    CylinderExtraction out;

    void fail(const Word& p, const std::string& why) {
        if (!out.representable) return;
        out.representable = false;
        out.reason = "at prefix " + to_string(p) + ": " + why;
    }

    // The common verdict of all points of the shift extending p, or nothing
    // when the subtree accepts some and rejects others.
    std::optional<bool> constant_on(const SetTrie::Ptr& n, Word& p) {
        if (n->is_leaf()) return *n->leaf;
        std::optional<bool> seen;
        bool mixed = false;
        auto meet = [&](bool v) {
            if (seen && *seen != v) mixed = true;
            seen = v;
        };
        if (ends_ok(p)) meet(empty_leaf<bool>(n));
        const SymbolSet follow = follower(p);
        SymbolSet listed;
        auto scan = [&](const SymbolSet& g, const SetTrie::Ptr& child) {
            for (Symbol a : sampler.sample(g)) {
                if (mixed) return;
                p.push_back(a);
                auto v = constant_on(child, p);
                p.pop_back();
                if (!v) mixed = true;
                else meet(*v);
            }
        };
        for (const auto& b : n->branches) {
            listed = listed | b.letters;
            scan(b.letters & follow, b.child);
        }
        scan(follow - listed, n->fallback);
        if (mixed) return std::nullopt;
        return seen.value_or(false);
    }

    void go(const SetTrie::Ptr& n, Word& p) {
        if (!out.representable) return;
        if (n->is_leaf()) {
            if (*n->leaf) out.cylinders.emplace_back(p);
            return;
        }
        const SymbolSet follow = follower(p);
        const bool empty_possible = ends_ok(p);
        const bool empty_in = empty_leaf<bool>(n);

        SymbolSet accepted;
        std::vector<std::pair<SymbolSet, SetTrie::Ptr>> mixed;
        SymbolSet listed;
        auto group = [&](const SymbolSet& g, const SetTrie::Ptr& child) {
            if (g.empty()) return;
            if (child->is_leaf()) {
                if (*child->leaf) accepted = accepted | g;
            } else {
                mixed.emplace_back(g, child);
            }
        };
        for (const auto& b : n->branches) {
            listed = listed | b.letters;
            group(b.letters & follow, b.child);
        }
        group(follow - listed, n->fallback);

        auto expand = [&](Symbol a, const SetTrie::Ptr& child) {
            p.push_back(a);
            auto v = constant_on(child, p);
            if (!v) go(child, p);
            p.pop_back();
            if (v && *v) accepted = accepted | SymbolSet::single(a);
        };
        for (const auto& [g, child] : mixed) {
            if (auto size = g.size(); size && *size <= 4096) {
                for (Symbol a : g.elements()) expand(a, child);
                continue;
            }
            for (Symbol a : (g & sampler.window()).elements()) expand(a, child);
            // Far letters must agree on one verdict to be grouped.
            std::optional<bool> far_verdict;
            for (Symbol a : sampler.far(g)) {
                p.push_back(a);
                auto v = constant_on(child, p);
                p.pop_back();
                if (!v || (far_verdict && *far_verdict != *v))
                    return fail(p, "infinitely many letters lead to a mixed subtree");
                far_verdict = v;
            }
            if (far_verdict && *far_verdict) accepted = accepted | (g - sampler.window());
            if (!out.representable) return;
        }
        const SymbolSet others = follow - accepted;
        const bool need_empty = empty_possible && empty_in;
        const bool avoid_empty = empty_possible && !empty_in;
        if (need_empty) {
            if (!others.is_finite()) return fail(p, "finite point accepted but infinitely many letters rejected");
            out.cylinders.emplace_back(p, others.elements());
        } else if (accepted.empty()) {
            return;
        } else if (accepted.is_finite()) {
            for (Symbol a : accepted.elements()) {
                Word q = p;
                q.push_back(a);
                out.cylinders.emplace_back(std::move(q));
            }
        } else if (others.is_finite() && !avoid_empty) {
            out.cylinders.emplace_back(p, others.elements());
        } else {
            return fail(p, avoid_empty ? "finite point rejected but infinitely many letters accepted"
                                       : "infinite and co-infinite letter group accepted");
        }
    }
};

CylinderExtraction run(Extractor ex, const SetTrie& t) {
    ex.out.representable = true;
    Word p;
    ex.go(t.normalized().root(), p);
    if (!ex.out.representable) ex.out.cylinders.clear();
    return ex.out;
}

}  // namespace

CylinderExtraction trie_to_cylinders(const SetTrie& t, const ShiftPresentation& s) {
    Extractor ex;
    ex.follower = [&s](const Word& p) { return s.follower(p); };
    ex.ends_ok = [&s](const Word& p) { return p.empty() ? s.contains(Point{}) : s.has_iep(p); };
    ex.sampler = LetterSampler::for_trie(t, s);
    return run(std::move(ex), t);
}

CylinderExtraction trie_to_cylinders(const FDS& f, const ShiftPresentation& s) {
    if (!f.is_trie()) return {false, {}, "predicate-form set"};
    return trie_to_cylinders(f.trie(), s);
}

CylinderExtraction trie_to_cylinders(const SetTrie& t, const Alphabet& a) {
    const auto full = ShiftPresentation::full(a);
    Extractor ex;
    const SymbolSet letters = a.letters();
    ex.follower = [letters](const Word&) { return letters; };
    ex.ends_ok = [](const Word&) { return true; };
    ex.sampler = LetterSampler::for_trie(t, full);
    return run(std::move(ex), t);
}

InvarianceVerdict fds_shift_invariant(const FDS& s, const ShiftPresentation& shift, std::size_t depth,
                                      std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto points = enumerate_finite_points(shift, depth, 2);
    auto more = sample_points(shift, rng, samples);
    points.insert(points.end(), more.begin(), more.end());
    for (const auto& p : points) {
        if (fds_member(s, p) != std::optional<bool>(true)) continue;
        auto q = p.shift();
        if (fds_member(s, q) != std::optional<bool>(true)) return {false, p};
    }
    return {};
}

PredicateSet staircase_set(std::size_t fuel) {
    return {[](const LetterPrefix& w) -> std::optional<bool> {
                if (w.empty()) return std::nullopt;
                if (!w[0] || *w[0] < 1) return false;
                const auto k = static_cast<std::size_t>(*w[0]);
                for (std::size_t i = 0; i < std::min(k, w.size()); ++i)
                    if (w[i] != w[0]) return false;
                if (w.size() >= k) return true;
                return std::nullopt;
            },
            fuel, "staircase"};
}

}  // namespace cshift
