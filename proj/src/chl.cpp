#include "cshift/chl.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace cshift {

std::string to_string(ContinuityVerdict::Kind k) {
    switch (k) {
        case ContinuityVerdict::Kind::continuous: return "certified_continuous";
        case ContinuityVerdict::Kind::discontinuous: return "certified_discontinuous";
        case ContinuityVerdict::Kind::unknown: return "unknown";
    }
    return {};
}

bool sigma_continuity(const ShiftPresentation& s) { return s.classify().column_finite; }

SlidingBlockCode shift_code(const ShiftPresentation& s) {
    auto empty = CodeTrie::leaf(LeafOutput::empty());
    auto second = CodeTrie::node({}, CodeTrie::leaf(LeafOutput::map(LetterFn::identity, 1)), empty);
    return SlidingBlockCode(s, s.alphabet(), CodeTrie(CodeTrie::node({}, second, empty)), "shift");
}

SlidingBlockCode identity_code(const ShiftPresentation& s) {
    auto t = CodeTrie::node({}, CodeTrie::leaf(LeafOutput::map(LetterFn::identity, 0)),
                            CodeTrie::leaf(LeafOutput::empty()));
    return SlidingBlockCode(s, s.alphabet(), CodeTrie(t), "identity");
}

// ------------------------------------------------------------ families

namespace {

// Letter sequences a_1, a_2, ... leaving every finite subset of g.
std::vector<std::function<Symbol(std::size_t)>> escapes(const SymbolSet& g) {
    std::vector<std::function<Symbol(std::size_t)>> out;
    if (g.intervals().empty()) return out;
    const auto& top = g.intervals().back();
    if (top.hi == kPosInf) {
        const Symbol base = top.lo == kNegInf ? 0 : std::max<Symbol>(top.lo - 1, 0);
        out.push_back([base](std::size_t i) { return base + static_cast<Symbol>(i); });
    }
    const auto& bottom = g.intervals().front();
    if (bottom.lo == kNegInf) {
        const Symbol base = bottom.hi == kPosInf ? 0 : std::min<Symbol>(bottom.hi + 1, 0);
        out.push_back([base](std::size_t i) { return base - static_cast<Symbol>(i); });
    }
    return out;
}

Point pick(const std::vector<Point>& pts, std::size_t k) {
    if (pts.empty()) throw Error("word has no completion");
    return pts[std::min(k, pts.size() - 1)];
}

}  // namespace

std::vector<PointFamily> family_catalog(const ShiftPresentation& s, std::size_t count, std::uint64_t seed) {
    std::vector<PointFamily> all;
    // Letters escaping into the empty sequence.
    if (s.contains(Point{})) {
        for (const auto& esc : escapes(s.letters()))
            for (std::size_t k = 0; k < 3; ++k)
                all.push_back({[s, esc, k](std::size_t i) { return pick(completions(s, {esc(i)}, 3), k); }, Point{},
                               "escape into the empty sequence, completion " + std::to_string(k)});
    }
    // Letters escaping after a frozen finite point.
    std::size_t frozen = 0;
    for (const auto& x : enumerate_finite_points(s, 2, 2)) {
        if (x.is_empty() || frozen >= 6) continue;
        ++frozen;
        const Word head = x.head();
        for (const auto& esc : escapes(s.follower(head)))
            for (std::size_t k = 0; k < 2; ++k)
                all.push_back({[s, head, esc, k](std::size_t i) {
                                   Word w = head;
                                   w.push_back(esc(i));
                                   return pick(completions(s, w, 3), k);
                               },
                               x, "escape after " + to_string(x) + ", completion " + std::to_string(k)});
    }
    // Longer and longer prefixes of a limit, completed another way.
    std::mt19937_64 rng(seed);
    auto limits = sample_points(s, rng, count);
    for (const auto& x : limits) {
        if (x.is_empty()) continue;
        all.push_back({[s, x](std::size_t i) {
                           const auto len = x.length();
                           const std::size_t n = len ? std::min(i, *len) : i;
                           for (const auto& q : completions(s, x.prefix(n), 3))
                               if (!(q == x)) return q;
                           return x;
                       },
                       x, "prefixes of " + to_string(x)});
    }

    std::vector<PointFamily> out;
    for (auto& f : all) {
        if (out.size() >= count) break;
        try {
            if (check_convergence(f, 6, 16).consistent()) out.push_back(std::move(f));
        } catch (const Error&) {
        }
    }
    return out;
}

namespace {

std::optional<DiscontinuityWitness> refute(const PointMap& f, const PointFamily& fam, std::size_t nbhds,
                                           std::size_t indices) {
    try {
        PointFamily images{[f, g = fam.generator](std::size_t i) { return f(g(i)); }, f(fam.claimed_limit),
                           "images of " + fam.description};
        auto v = check_convergence(images, nbhds, indices);
        if (!v.refuted) return std::nullopt;
        // Slowly converging images (lookahead growing with the letters) escape
        // early neighbourhoods too; a witness must keep escaping far down the
        // family, past the largest letter of the limit and first member.
        Symbol scale = 0;
        for (const Point& x : {fam.claimed_limit, fam.generator(1)}) {
            for (Symbol a : x.head()) scale = std::max(scale, a < 0 ? -a : a);
            for (Symbol a : x.period()) scale = std::max(scale, a < 0 ? -a : a);
        }
        const auto late_start = static_cast<std::size_t>(std::min<Symbol>(scale, 1 << 16)) * 2 + 64;
        PointFamily late{[f, g = fam.generator, late_start](std::size_t i) { return f(g(i + late_start)); },
                         images.claimed_limit,
                         images.description};
        if (!check_convergence(late, nbhds, 8).refuted) return std::nullopt;
        return DiscontinuityWitness{fam, images, *v.cylinder, v.index, fam.description};
    } catch (const Error&) {
    }
    return std::nullopt;
}

}  // namespace

std::optional<DiscontinuityWitness> find_discontinuity(const PointMap& f, const ShiftPresentation& s,
                                                       const ChlBudget& budget) {
    for (const auto& fam : family_catalog(s, budget.families))
        if (auto w = refute(f, fam, budget.nbhds, budget.indices)) return w;
    return std::nullopt;
}

EmpiricalVerdict empirical_continuity(const PointMap& f, const std::vector<PointFamily>& families,
                                      std::size_t nbhd_budget, std::size_t index_budget) {
    EmpiricalVerdict out;
    for (const auto& fam : families) {
        try {
            if (!check_convergence(fam, nbhd_budget, index_budget).consistent()) continue;
        } catch (const Error&) {
            continue;
        }
        ++out.families_checked;
        if (auto w = refute(f, fam, nbhd_budget, index_budget)) {
            out.consistent = false;
            out.refutation = std::move(w);
            return out;
        }
    }
    return out;
}

// ------------------------------------------------------------ theorem 1

namespace {

// Output letters the code produces on sampled points reaching every leaf.
std::vector<Symbol> sampled_labels(const SlidingBlockCode& c, std::size_t cap) {
    std::set<Symbol> labels;
    const auto& s = c.domain();
    visit_reachable(c.rule().trie(), s, [&](const Word& p, const LeafOutput& leaf, bool ended) {
        if (labels.size() >= cap) return;
        if (leaf.kind == LeafOutput::Kind::constant) {
            labels.insert(leaf.value);
            return;
        }
        if (leaf.kind == LeafOutput::Kind::empty || leaf.kind == LeafOutput::Kind::undefined) return;
        std::vector<Point> pts;
        if (ended) pts.push_back(Point::finite(p));
        else pts = completions(s, p, 3);
        for (const auto& q : pts) {
            try {
                if (auto a = first_coordinate(c, q)) labels.insert(*a);
            } catch (const Error&) {
            }
        }
    });
    return {labels.begin(), labels.end()};
}

ContinuityVerdict discontinuous_or_unknown(const SlidingBlockCode& c, const ChlBudget& budget, std::string why) {
    ContinuityVerdict v;
    if (auto w = find_discontinuity(as_map(c), c.domain(), budget)) {
        v.kind = ContinuityVerdict::Kind::discontinuous;
        v.witness = std::move(w);
        v.reason = std::move(why);
        return v;
    }
    v.kind = ContinuityVerdict::Kind::unknown;
    v.reason = std::move(why);
    return v;
}

// Cylinder lists for each fiber; a reason when some fiber has none.
std::optional<std::string> collect_evidence(const SlidingBlockCode& c, const std::vector<Symbol>& labels,
                                            std::vector<FiberEvidence>& out) {
    for (Symbol a : labels) {
        const FDS f = fiber(c, a);
        auto ext = trie_to_cylinders(f, c.domain());
        if (!ext.representable) return "fiber of " + std::to_string(a) + " not a finite union of cylinders (" +
                                        ext.reason + ")";
        if (!trie_equivalent_on(cylinders_to_trie(ext.cylinders), f.trie(), c.domain()))
            throw Error("cylinder evidence for fiber " + std::to_string(a) + " does not reproduce the fiber");
        out.push_back({a, std::move(ext.cylinders)});
    }
    return std::nullopt;
}

}  // namespace

ContinuityVerdict certify_T1(const SlidingBlockCode& c, const ChlBudget& budget) {
    const Letter at_empty = first_coordinate(c, Point{});
    if (at_empty) {
        // The theorem does not apply, but a witness still settles the question.
        if (auto w = find_discontinuity(as_map(c), c.domain(), budget)) {
            ContinuityVerdict v;
            v.kind = ContinuityVerdict::Kind::discontinuous;
            v.witness = std::move(w);
            v.reason = "image of the empty sequence is not empty";
            return v;
        }
        throw HypothesisNotMet("the code does not send the empty sequence to itself");
    }
    if (!c.rule().is_trie()) return discontinuous_or_unknown(c, budget, "fiber not trie-representable");

    ContinuityVerdict v;
    if (auto why = collect_evidence(c, sampled_labels(c, 256), v.evidence))
        return discontinuous_or_unknown(c, budget, *why);
    v.kind = ContinuityVerdict::Kind::continuous;
    return v;
}

// ------------------------------------------------------------ theorem 2

namespace {

// Output coordinates 1..m from a prefix padded with empty letters; nothing
// when some coordinate cannot be decided or the rule is undefined there.
bool outputs_d(const SlidingBlockCode& c, const LetterPrefix& w, Symbol d, std::size_t m) {
    for (std::size_t n = 0; n < m; ++n) {
        LetterPrefix tail(w.begin() + static_cast<std::ptrdiff_t>(std::min(n, w.size())), w.end());
        try {
            auto v = first_coordinate(c, tail);
            if (!v || *v != Letter(d)) return false;
        } catch (const Error&) {
            return false;
        }
    }
    return true;
}

}  // namespace

std::optional<std::vector<Symbol>> find_FM(const SlidingBlockCode& c, Symbol d, std::size_t m,
                                           std::size_t class_budget) {
    if (!c.rule().is_trie()) throw PreconditionError("find_FM needs a trie rule");
    const auto& s = c.domain();
    const std::size_t ant = code_anticipation(c).value_or(0);
    const std::size_t len = m + ant;
    auto sampler = LetterSampler::for_trie(c.rule().trie(), s);
    sampler.radius += static_cast<Symbol>(len) + 2;
    std::size_t nodes = 0;
    bool exhausted = false;

    // Some point of S extending w breaks the condition.
    std::function<bool(Word&)> bad = [&](Word& w) -> bool {
        if (++nodes > class_budget) {
            exhausted = true;
            return true;
        }
        if (s.has_iep(w)) {
            LetterPrefix p(w.begin(), w.end());
            p.resize(len + 1, std::nullopt);
            if (!outputs_d(c, p, d, m)) return true;
        }
        if (w.size() >= len) return !outputs_d(c, LetterPrefix(w.begin(), w.end()), d, m);
        for (Symbol a : sampler.sample(s.follower(w))) {
            w.push_back(a);
            const bool b = bad(w);
            w.pop_back();
            if (b) return true;
        }
        return false;
    };

    std::vector<Symbol> out;
    const SymbolSet first = s.letters();
    for (Symbol a : (first & sampler.window()).elements()) {
        Word w{a};
        if (bad(w)) out.push_back(a);
        if (exhausted) return std::nullopt;
    }
    for (Symbol a : sampler.far(first)) {
        Word w{a};
        if (bad(w) || exhausted) return std::nullopt;
    }
    return out;
}

bool verify_FM_brute(const SlidingBlockCode& c, Symbol d, std::size_t m, const std::vector<Symbol>& f) {
    const auto& s = c.domain();
    const std::size_t ant = code_anticipation(c).value_or(0);
    const std::size_t len = m + ant + 1;

    // Explicit letters: trie edge ends and F itself, a little widened.
    std::set<Symbol> pool_set(f.begin(), f.end());
    std::function<void(const CodeTrie::Ptr&)> scan = [&](const CodeTrie::Ptr& n) {
        if (n->is_leaf()) return;
        for (const auto& b : n->branches) {
            for (const auto& i : b.letters.intervals()) {
                for (Symbol e : {i.lo, i.hi})
                    if (e != kNegInf && e != kPosInf)
                        for (Symbol x = e - 1; x <= e + 1; ++x) pool_set.insert(x);
            }
            scan(b.child);
        }
        if (n->on_empty) scan(n->on_empty);
        scan(n->fallback);
    };
    scan(c.rule().trie().root());
    if (!f.empty()) {
        const Symbol hi = *std::max_element(f.begin(), f.end());
        const Symbol lo = *std::min_element(f.begin(), f.end());
        for (Symbol x = 1; x <= 2; ++x) {
            pool_set.insert(hi + x);
            pool_set.insert(lo - x);
        }
    }
    SymbolSet explicit_letters;
    for (Symbol x : pool_set) explicit_letters = explicit_letters | SymbolSet::single(x);
    for (const auto& cls : s.classes().classes)
        for (Symbol x : representatives((cls & s.letters()) - explicit_letters, 2)) pool_set.insert(x);
    SymbolSet pool;
    for (Symbol x : pool_set)
        if (s.letters().contains(x)) pool = pool | SymbolSet::single(x);

    auto good_point = [&](const Point& x) {
        const Point y = apply(c, x);
        for (std::size_t n = 1; n <= m; ++n)
            if (y.at(n) != Letter(d)) return false;
        return true;
    };
    std::size_t budget = 400000;
    std::function<bool(Word&)> all_good = [&](Word& w) -> bool {
        if (budget == 0) return true;
        --budget;
        if (s.has_iep(w) && !good_point(Point::finite(w))) return false;
        if (w.size() >= len) {
            for (const auto& x : completions(s, w, 2))
                if (!good_point(x)) return false;
            return true;
        }
        for (Symbol a : (s.follower(w) & pool).elements()) {
            w.push_back(a);
            const bool g = all_good(w);
            w.pop_back();
            if (!g) return false;
        }
        return true;
    };
    const std::set<Symbol> excluded(f.begin(), f.end());
    for (Symbol a : pool.elements()) {
        Word w{a};
        const bool g = all_good(w);
        // Letters outside F must be good, letters of F bad.
        if (g == static_cast<bool>(excluded.count(a))) return false;
    }
    for (Symbol a : f)
        if (!pool.contains(a)) return false;
    return true;
}

ContinuityVerdict certify_T2(const SlidingBlockCode& c, Symbol d, std::size_t m_max, const ChlBudget& budget) {
    const Letter at_empty = first_coordinate(c, Point{});
    if (at_empty != Letter(d))
        throw HypothesisNotMet("the code does not send the empty sequence to the constant sequence of " +
                               std::to_string(d));
    if (!c.rule().is_trie()) return discontinuous_or_unknown(c, budget, "fiber not trie-representable");

    auto labels = output_letters(c);
    if (!labels || !labels->is_finite())
        return discontinuous_or_unknown(c, budget, "infinitely many nonempty fibers");

    ContinuityVerdict v;
    if (auto why = collect_evidence(c, labels->elements(), v.evidence))
        return discontinuous_or_unknown(c, budget, *why);
    FMTable table;
    for (std::size_t m = 1; m <= m_max; ++m) {
        auto f = find_FM(c, d, m, budget.class_budget);
        if (!f) return discontinuous_or_unknown(c, budget, "no finite F_" + std::to_string(m));
        table.sets[m] = *f;
    }
    v.kind = ContinuityVerdict::Kind::continuous;
    v.fm = std::move(table);
    return v;
}

}  // namespace cshift
