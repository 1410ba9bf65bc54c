#include "cshift/gallery.hpp"

#include <functional>
#include <map>
#include <random>

namespace cshift {

namespace {

using Ptr = CodeTrie::Ptr;

Ptr out(LeafOutput o) { return CodeTrie::leaf(o); }

EdgeClause clause(SymbolSet source, SymbolSet absolute, SymbolSet relative, Symbol block = 1, Symbol base = 0) {
    return {std::move(source), std::move(absolute), std::move(relative), block, base};
}

std::vector<EdgeClause> f_rules(std::optional<Symbol> cap) {
    const SymbolSet nonneg = cap ? SymbolSet::range(0, *cap) : SymbolSet::at_least(0);
    return {clause(SymbolSet::at_most(-2), {}, SymbolSet::single(1)),
            clause(SymbolSet::single(-1), nonneg, {}),
            clause(nonneg, {}, SymbolSet::single(0))};
}

}  // namespace

ShiftPresentation gallery_shift(char id, const GalleryParams& p) {
    const Symbol k = p.k;
    switch (id) {
        case 'a':
        case 'd': return ShiftPresentation::full(Alphabet::naturals());
        case 'b':
        case 'e':
            return ShiftPresentation::edges(Alphabet::naturals(),
                                            {clause(SymbolSet::at_least(1), {}, SymbolSet::range(0, 1), 2, 1)});
        case 'c':
            return ShiftPresentation::edges(Alphabet::naturals(),
                                            {clause(SymbolSet::at_least(1), {}, SymbolSet::at_least(-1))});
        case 'f': return ShiftPresentation::edges(Alphabet::integers(), f_rules(std::nullopt));
        case 'g': return ShiftPresentation::edges(Alphabet::integers(), f_rules(k));
        case 'h':
            return ShiftPresentation::edges(Alphabet::naturals(),
                                            {clause(SymbolSet::at_least(k + 1), {}, SymbolSet::single(-1)),
                                             clause(SymbolSet::range(1, k), SymbolSet::at_least(1), {})});
        case 'i':
            return ShiftPresentation::edges(Alphabet::naturals(),
                                            {clause(SymbolSet::at_least(k + 1), {}, SymbolSet::single(-1)),
                                             clause(SymbolSet::range(1, k), SymbolSet::range(1, k - 1), {})});
    }
    throw PreconditionError(std::string("no gallery case ") + id);
}

SlidingBlockCode gallery_code(char id, const GalleryParams& p) {
    const auto s = gallery_shift(id, p);
    const std::string name = std::string("gallery:") + id;
    const Symbol k = p.k, d = p.d;
    const auto empty = out(LeafOutput::empty());
    switch (id) {
        case 'a': {
            auto c = shift_code(s);
            return SlidingBlockCode(s, c.out_alphabet(), c.rule(), name);
        }
        case 'b': throw PreconditionError("the map of case b is not a sliding block code");
        case 'c': {
            ComputableRule r;
            r.fuel = 4096;
            r.name = name;
            r.rule = [](const LetterPrefix& w) -> std::optional<Letter> {
                if (w.empty()) return std::nullopt;
                if (!w[0]) return Letter{};
                const auto reach = static_cast<std::size_t>(*w[0]);
                if (w.size() <= reach) return std::nullopt;
                return w[reach];
            };
            return SlidingBlockCode(s, Alphabet::naturals(), r, name);
        }
        case 'd':
            return SlidingBlockCode(s, Alphabet::naturals(),
                                    CodeTrie(CodeTrie::node({}, out(LeafOutput::map(LetterFn::half_up, 0)), empty)),
                                    name);
        case 'e': {
            // On the i-th block the code reads i coordinates ahead.
            ComputableRule r;
            r.fuel = 4096;
            r.name = name;
            r.rule = [](const LetterPrefix& w) -> std::optional<Letter> {
                if (w.empty()) return std::nullopt;
                if (!w[0]) return Letter{};
                const auto reach = static_cast<std::size_t>((*w[0] + 1) / 2);
                if (w.size() <= reach) return std::nullopt;
                return w[reach];
            };
            return SlidingBlockCode(s, Alphabet::naturals(), r, name);
        }
        case 'f':
        case 'g': {
            const Symbol negative = id == 'f' ? -1 : 0;
            auto t = CodeTrie::node({{SymbolSet::at_most(-1), out(LeafOutput::constant(negative))},
                                     {SymbolSet::single(0), empty},
                                     {SymbolSet::at_least(1), out(LeafOutput::map(LetterFn::identity, 0))}},
                                    out(LeafOutput::undefined()), out(LeafOutput::constant(0)));
            return SlidingBlockCode(s, Alphabet::integers(), CodeTrie(t), name);
        }
        case 'h': {
            auto dd = out(LeafOutput::constant(d));
            auto second =
                CodeTrie::node({{SymbolSet::range(1, k), out(LeafOutput::map(LetterFn::identity, 0))}}, dd, dd);
            auto t = CodeTrie::node({{SymbolSet::range(1, k), second}}, dd, dd);
            return SlidingBlockCode(s, Alphabet::naturals(), CodeTrie(t), name);
        }
        case 'i': {
            auto dd = out(LeafOutput::constant(d));
            auto t = CodeTrie::node({{SymbolSet::range(1, k), out(LeafOutput::map(LetterFn::identity, 0))}}, dd, dd);
            return SlidingBlockCode(s, Alphabet::naturals(), CodeTrie(t), name);
        }
    }
    throw PreconditionError(std::string("no gallery case ") + id);
}

// ------------------------------------------------------------ black boxes

Point max_map(const Point& x) {
    if (x.is_finite()) return {};
    const Symbol top = *std::max_element(x.period().begin(), x.period().end());
    Word head(x.head().size());
    Symbol m = top;
    for (std::size_t n = x.head().size(); n-- > 0;) {
        m = std::max(m, x.head()[n]);
        head[n] = m;
    }
    return Point::evp(head, {top});
}

namespace {

// Length of the run of letter a starting at coordinate 1; nothing when
// the point is constantly a from there.
std::optional<std::size_t> run_length(const Point& y, Symbol a) {
    if (!y.is_finite() && y.period().size() == 1 && y.period()[0] == a &&
        std::all_of(y.head().begin(), y.head().end(), [a](Symbol b) { return b == a; }))
        return std::nullopt;
    std::size_t n = 0;
    while (y.at(n + 1) == Letter(a)) ++n;
    return n;
}

}  // namespace

Point inverse_f(const Point& y) {
    return coordinate_map([](const Point& q) -> Letter {
        const Letter a = q.at(1);
        if (!a) return 0;
        if (*a == 0) return std::nullopt;
        if (*a > 0) return *a;
        auto r = run_length(q, -1);
        if (!r) throw DomainError("constant -1 is not an image point");
        return -static_cast<Symbol>(*r);
    })(y);
}

Point inverse_g(const Point& y) {
    return coordinate_map([](const Point& q) -> Letter {
        const Letter a = q.at(1);
        if (!a) return 0;
        if (*a > 0) return *a;
        auto r = run_length(q, 0);
        if (!r) return std::nullopt;
        return -static_cast<Symbol>(*r);
    })(y);
}

Point inverse_i(const Point& y, const GalleryParams& p) {
    return coordinate_map([p](const Point& q) -> Letter {
        const Letter a = q.at(1);
        if (!a) throw DomainError("finite points are not images");
        if (*a <= p.k) return *a;
        auto r = run_length(q, p.d);
        if (!r) return std::nullopt;
        return p.k + static_cast<Symbol>(*r);
    })(y);
}

Point prepend_one(const Point& x) { return concat(Word{1}, x); }

// ------------------------------------------------------------ cases

GalleryCase build(char id, const GalleryParams& p) {
    GalleryCase c{id, gallery_shift(id, p), std::nullopt, std::nullopt, std::nullopt, {}, {}};
    if (id != 'b') c.code = gallery_code(id, p);
    auto expect = [&](std::string property, std::string anchor, std::string expected = "pass") {
        c.expectations.push_back({std::move(property), std::move(expected), std::move(anchor)});
    };
    switch (id) {
        case 'a':
            expect("equals the shift map", "coincides with the shift map");
            expect("commutes with the shift", "sliding block code with anticipation 1");
            expect("anticipation 1", "sliding block code with anticipation 1");
            expect("continuous iff column-finite", "the shift map is continuous if and only if");
            break;
        case 'b':
            c.map = max_map;
            c.metadata.push_back({"blocks", "A_i = {2i-1, 2i}"});
            expect("commutes with the shift", "It is immediate that $\\Phi$ is shift commuting");
            expect("empty fiber is the empty sequence", "$C_{\\o}=\\Phi^{-1}(\\O)=\\{\\O\\}$");
            expect("not a sliding block code", "$\\Phi$ is not a sliding block code");
            expect("not continuous", "on can check that $\\Phi$ is not continuous");
            break;
        case 'c':
            expect("commutes with the shift", "non-continuous sliding block code");
            expect("not continuous", "non-continuous sliding block code");
            break;
        case 'd':
            expect("commutes with the shift", "$\\Phi$ is a sliding block code");
            expect("continuous", "$\\Phi$ is continuous");
            expect("onto", "onto but not one-to-one");
            expect("not one-to-one", "onto but not one-to-one");
            break;
        case 'e':
            c.metadata.push_back({"blocks", "A_i = {2i-1, 2i}"});
            c.metadata.push_back({"block rule", "coordinate i ahead on A_i"});
            expect("commutes with the shift", "continuous sliding block code with unbounded anticipation");
            expect("unbounded anticipation", "continuous sliding block code with unbounded anticipation");
            expect("continuous", "continuous sliding block code with unbounded anticipation", "unknown");
            expect("consistent with continuity on convergent families",
                   "continuous sliding block code with unbounded anticipation");
            break;
        case 'f':
            c.inverse = inverse_f;
            expect("1-block code", "invertible 1-block code which is not continuous");
            expect("injective", "invertible 1-block code which is not continuous");
            expect("not continuous", "invertible 1-block code which is not continuous");
            expect("inverse commutes with the shift", "$\\Phi^{-1}$ is a sliding block code with unbounded anticipation");
            expect("inverse has unbounded anticipation",
                   "$\\Phi^{-1}$ is a sliding block code with unbounded anticipation");
            break;
        case 'g':
            c.inverse = inverse_g;
            c.metadata.push_back({"k", std::to_string(p.k)});
            expect("1-block code", "$\\Phi$ is an injective 1-block code which is continuous");
            expect("injective", "$\\Phi$ is an injective 1-block code which is continuous");
            expect("continuous", "$\\Phi$ is an injective 1-block code which is continuous");
            expect("inverse not a sliding block code", "$\\Phi^{-1}$ is not a sliding block code");
            expect("image fails the infinite extension property",
                   "does not satisfy the infinite extension property");
            break;
        case 'h':
            c.metadata.push_back({"k", std::to_string(p.k)});
            c.metadata.push_back({"d", std::to_string(p.d)});
            expect("2-block code", "continuous 2-block code");
            expect("continuous", "continuous 2-block code");
            expect("not invertible", "which is not invertible");
            expect("image has no finite points", "$\\Phi(\\Lambda)$ is a shift space");
            break;
        case 'i':
            c.inverse = [p](const Point& y) { return inverse_i(y, p); };
            c.metadata.push_back({"k", std::to_string(p.k)});
            c.metadata.push_back({"d", std::to_string(p.d)});
            expect("1-block code", "continuous 1-block code");
            expect("continuous", "continuous 1-block code");
            expect("invertible on the image", "$\\Phi$ is invertible on its image");
            expect("inverse not a sliding block code", "since $D_{\\o}$ is not a finitely defined set");
            break;
        default: throw PreconditionError(std::string("no gallery case ") + id);
    }
    return c;
}

// ------------------------------------------------------------ report

namespace {

struct Outcome {
    std::string verdict;
    std::string detail;
};

Outcome pass(std::string detail = {}) { return {"pass", std::move(detail)}; }
Outcome fail(std::string detail) { return {"fail", std::move(detail)}; }
Outcome check(bool ok, std::string detail) { return {ok ? "pass" : "fail", std::move(detail)}; }

std::optional<std::pair<Point, Point>> collision(const PointMap& f, const std::vector<Point>& pool) {
    std::map<std::string, Point> seen;
    for (const auto& x : pool) {
        auto [it, fresh] = seen.emplace(to_string(f(x)), x);
        if (!fresh && !(it->second == x)) return std::make_pair(it->second, x);
    }
    return std::nullopt;
}

std::string witness_text(const BlockWitness& w) {
    return to_string(w.first) + " and " + to_string(w.second) + " agree on " + std::to_string(w.depth + 1) +
           " coordinates, images start " + to_string(w.image_first) + " and " + to_string(w.image_second);
}

// Every depth up to `depth` has a witness in the pool.
Outcome unbounded(const PointMap& f, const std::function<std::vector<Point>(std::size_t)>& pool,
                  std::size_t depth) {
    std::string last;
    for (std::size_t t = 1; t <= depth; ++t) {
        auto w = falsify_sliding_block(f, pool(t), t);
        if (!w) return fail("no witness at depth " + std::to_string(t));
        last = witness_text(*w);
    }
    return pass(last);
}

std::vector<Point> images(const PointMap& f, const std::vector<Point>& pts) {
    std::vector<Point> out;
    for (const auto& x : pts) out.push_back(f(x));
    return out;
}

// Completions of the words of length `len` inside the blocks of the
// given first letters.
std::vector<Point> block_pool(const ShiftPresentation& s, const std::vector<Symbol>& first, std::size_t len) {
    std::vector<Point> out;
    Word w;
    std::function<void()> go = [&] {
        if (w.size() == len) {
            for (const auto& q : completions(s, w, 3)) out.push_back(q);
            return;
        }
        for (Symbol a : s.follower(w).elements()) {
            w.push_back(a);
            go();
            w.pop_back();
        }
    };
    for (Symbol a : first) {
        w = {a};
        go();
    }
    return out;
}

std::string verdict_text(const ContinuityVerdict& v) {
    std::string out = to_string(v.kind);
    if (v.witness) out += " via " + v.witness->shape + ", escaping " + v.witness->refuting.to_string();
    if (!v.reason.empty()) out += " (" + v.reason + ")";
    return out;
}

Outcome evaluate(const GalleryCase& c, const Expectation& e, const RunBudget& b, const GalleryParams& p) {
    const auto& s = c.shift;
    std::mt19937_64 rng(b.seed);
    const auto samples = sample_points(s, rng, b.samples);
    const PointMap f = c.code ? as_map(*c.code) : *c.map;
    const std::string& q = e.property;

    if (q == "commutes with the shift") {
        auto r = check_shift_commute(f, samples);
        return check(r.pass, r.detail);
    }
    if (q == "equals the shift map") {
        for (const auto& x : samples)
            if (!(f(x) == x.shift())) return fail("differs at " + to_string(x));
        return pass();
    }
    if (q == "anticipation 1" || q == "1-block code" || q == "2-block code") {
        const std::size_t want = q == "2-block code" ? 1 : q == "anticipation 1" ? 1 : 0;
        auto a = code_anticipation(*c.code);
        return check(a == want, "anticipation " + (a ? std::to_string(*a) : std::string("unbounded")));
    }
    if (q == "continuous iff column-finite") {
        auto v = certify_T1(shift_code(s));
        const bool cont = v.kind == ContinuityVerdict::Kind::continuous;
        const bool disc = v.kind == ContinuityVerdict::Kind::discontinuous;
        return check(sigma_continuity(s) ? cont : disc, verdict_text(v));
    }
    if (q == "empty fiber is the empty sequence") {
        auto pool = point_pool(s, 4, 6, 2000);
        for (const auto& x : pool)
            if (f(x).is_empty() != x.is_empty()) return fail(to_string(x));
        return pass();
    }
    if (q == "not a sliding block code") {
        return unbounded(f, [&](std::size_t t) { return point_pool(s, t + 2, static_cast<Symbol>(t) + 4, 4000); },
                         b.depth);
    }
    if (q == "not continuous") {
        if (c.code) {
            auto v = certify_T1(*c.code);
            return check(v.kind == ContinuityVerdict::Kind::discontinuous, verdict_text(v));
        }
        auto w = find_discontinuity(f, s);
        if (!w) return fail("no witness family");
        return pass(w->shape + ", escaping " + w->refuting.to_string());
    }
    if (q == "continuous") {
        ContinuityVerdict v = (c.id == 'g')   ? certify_T2(*c.code, 0, b.m_max)
                              : (c.id == 'h' || c.id == 'i') ? certify_T2(*c.code, p.d, b.m_max)
                                                             : certify_T1(*c.code);
        if (v.kind == ContinuityVerdict::Kind::unknown) return {"unknown", verdict_text(v)};
        return check(v.kind == ContinuityVerdict::Kind::continuous, verdict_text(v));
    }
    if (q == "consistent with continuity on convergent families") {
        auto fams = family_catalog(s, 60, b.seed);
        auto v = empirical_continuity(f, fams);
        return check(v.consistent && v.families_checked > 0,
                     std::to_string(v.families_checked) + " families checked");
    }
    if (q == "onto") {
        for (const auto& y : samples) {
            auto dbl = [](const Word& w) {
                Word o;
                for (Symbol a : w) o.push_back(2 * a);
                return o;
            };
            const Point x = y.is_finite() ? Point::finite(dbl(y.head())) : Point::evp(dbl(y.head()), dbl(y.period()));
            if (!(f(x) == y)) return fail("no preimage found for " + to_string(y));
        }
        return pass();
    }
    if (q == "not one-to-one" || q == "not invertible") {
        auto hit = collision(f, point_pool(s, 3, 6, 3000));
        if (!hit) return fail("no collision found");
        return pass(to_string(hit->first) + " and " + to_string(hit->second) + " share an image");
    }
    if (q == "injective") {
        auto hit = collision(f, point_pool(s, 4, 6, 3000));
        if (hit) return fail(to_string(hit->first) + " and " + to_string(hit->second) + " share an image");
        return pass();
    }
    if (q == "unbounded anticipation") {
        return unbounded(f, [&](std::size_t t) { return block_pool(s, {2 * static_cast<Symbol>(t) + 1}, t + 2); },
                         b.depth);
    }
    if (q == "inverse commutes with the shift") {
        auto r = check_shift_commute(*c.inverse, images(f, point_pool(s, 4, 6, 2000)));
        return check(r.pass, r.detail);
    }
    if (q == "invertible on the image") {
        auto pool = point_pool(s, 4, 8, 3000);
        pool.insert(pool.end(), samples.begin(), samples.end());
        for (const auto& x : pool)
            if (!((*c.inverse)(f(x)) == x)) return fail("inverse misses " + to_string(x));
        return pass();
    }
    if (q == "inverse has unbounded anticipation" || q == "inverse not a sliding block code") {
        const Symbol extra = c.id == 'i' ? p.k + 4 : 4;
        return unbounded(*c.inverse,
                         [&](std::size_t t) {
                             return images(f, point_pool(s, t + 3, static_cast<Symbol>(t) + extra, 4000));
                         },
                         b.depth);
    }
    if (q == "image fails the infinite extension property") {
        auto r = image_iep_failure(*c.code, point_pool(s, 4, 6, 2000));
        if (!r) return fail("every sampled image point passes");
        return pass(to_string(r->image) + " from " + to_string(r->preimage) + ": " + r->reason);
    }
    if (q == "image has no finite points") {
        for (const auto& x : point_pool(s, 4, 8, 2000))
            if (f(x).is_finite()) return fail("finite image " + to_string(f(x)));
        return pass();
    }
    return fail("no check for property " + q);
}

}  // namespace

std::vector<ReportLine> run_case(char id, const RunBudget& budget, const GalleryParams& p) {
    const GalleryCase c = build(id, p);
    std::vector<ReportLine> out;
    for (const auto& e : c.expectations) {
        Outcome o;
        try {
            o = evaluate(c, e, budget, p);
        } catch (const std::exception& ex) {
            o = fail(std::string("error: ") + ex.what());
        }
        out.push_back({id, e.property, o.verdict, e.expected, e.anchor, o.detail});
    }
    return out;
}

std::vector<ReportLine> run_all(const RunBudget& budget, const GalleryParams& p) {
    std::vector<ReportLine> out;
    for (char id : kGalleryIds) {
        auto lines = run_case(id, budget, p);
        out.insert(out.end(), lines.begin(), lines.end());
    }
    return out;
}

std::string to_string(const ReportLine& r) {
    std::string out = std::string(1, r.id) + " | " + r.property + " | " + r.verdict;
    if (r.verdict != r.expected) out += " (expected " + r.expected + ")";
    out += " | \"" + r.anchor + "\"";
    if (!r.detail.empty()) out += " | " + r.detail;
    return out;
}

}  // namespace cshift
