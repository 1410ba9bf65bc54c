#include "cshift/sbc.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <set>

namespace cshift {

// ------------------------------------------------------------ letter maps

Symbol apply_fn(LetterFn f, Symbol a) {
    switch (f) {
        case LetterFn::identity: return a;
        case LetterFn::half_up: {
            Symbol b = a + 1;
            return b >= 0 ? b / 2 : -((-b + 1) / 2);
        }
    }
    return a;
}

SymbolSet preimage(LetterFn f, Symbol b) {
    switch (f) {
        case LetterFn::identity: return SymbolSet::single(b);
        case LetterFn::half_up: return SymbolSet::range(2 * b - 1, 2 * b);
    }
    return {};
}

namespace {

SymbolSet image_of(LetterFn f, const SymbolSet& s) {
    if (f == LetterFn::identity) return s;
    std::vector<Interval> out;
    for (const auto& i : s.intervals())
        out.push_back({i.lo == kNegInf ? kNegInf : apply_fn(f, i.lo), i.hi == kPosInf ? kPosInf : apply_fn(f, i.hi)});
    return SymbolSet::from_intervals(std::move(out));
}

using Wide = __int128;

Wide zigzag(Symbol a) { return a >= 0 ? Wide(2) * a : Wide(-2) * a - 1; }
Symbol unzigzag(Wide z) { return static_cast<Symbol>(z % 2 == 0 ? z / 2 : -(z + 1) / 2); }

}  // namespace

Symbol encode_block(const Word& w) {
    if (w.empty()) throw PreconditionError("cannot encode an empty block");
    Wide code = zigzag(w[0]);
    for (std::size_t i = 1; i < w.size(); ++i) {
        Wide y = zigzag(w[i]);
        Wide s = code + y;
        if (s > Wide(kMaxLetter)) throw DomainError("block " + to_string(w) + " too large to encode");
        code = s * (s + 1) / 2 + y;
    }
    if (code > Wide(kMaxLetter)) throw DomainError("block " + to_string(w) + " too large to encode");
    return static_cast<Symbol>(code);
}

Word decode_block(Symbol code, std::size_t length) {
    if (length == 0) throw PreconditionError("block length must be positive");
    if (code < 0) throw DomainError("negative block code");
    Word out(length);
    Wide c = code;
    for (std::size_t i = length - 1; i >= 1; --i) {
        auto t = static_cast<Wide>((std::sqrt(8.0L * static_cast<long double>(c) + 1.0L) - 1.0L) / 2.0L);
        while (t * (t + 1) / 2 > c) --t;
        while ((t + 1) * (t + 2) / 2 <= c) ++t;
        Wide y = c - t * (t + 1) / 2;
        Wide x = t - y;
        out[i] = unzigzag(y);
        c = x;
    }
    out[0] = unzigzag(c);
    return out;
}

// ------------------------------------------------------------ leaf outputs

std::size_t LeafOutput::reach() const {
    switch (kind) {
        case Kind::map: return offset + 1;
        case Kind::window: return width;
        default: return 0;
    }
}

Letter LeafOutput::eval(const Point& p, std::size_t start) const {
    switch (kind) {
        case Kind::undefined: throw DomainError("rule is undefined at " + to_string(p.shift(start - 1)));
        case Kind::empty: return std::nullopt;
        case Kind::constant: return value;
        case Kind::map: {
            auto a = p.at(start + offset);
            if (!a) throw DomainError("rule reads an empty coordinate");
            return apply_fn(fn, *a);
        }
        case Kind::window: {
            Word w;
            for (std::size_t j = 0; j < width; ++j) {
                auto a = p.at(start + j);
                if (!a) throw DomainError("window reads an empty coordinate");
                w.push_back(*a);
            }
            return encode_block(w);
        }
    }
    return std::nullopt;
}

std::string to_string(const LeafOutput& o) {
    switch (o.kind) {
        case LeafOutput::Kind::undefined: return "undefined";
        case LeafOutput::Kind::empty: return "empty";
        case LeafOutput::Kind::constant: return std::to_string(o.value);
        case LeafOutput::Kind::map:
            return std::string(o.fn == LetterFn::identity ? "id" : "half") + "@" + std::to_string(o.offset);
        case LeafOutput::Kind::window: return "window@" + std::to_string(o.width);
    }
    return {};
}

// ------------------------------------------------------------------ codes

const CodeTrie& LocalRule::trie() const {
    if (auto* t = std::get_if<CodeTrie>(&rep_)) return *t;
    throw PreconditionError("local rule is not a trie");
}

const ComputableRule& LocalRule::computable() const {
    if (auto* r = std::get_if<ComputableRule>(&rep_)) return *r;
    throw PreconditionError("local rule is not computable");
}

SlidingBlockCode::SlidingBlockCode(ShiftPresentation domain, Alphabet out, LocalRule rule, std::string name)
    : domain_(std::move(domain)), out_(out), rule_(std::move(rule)), name_(std::move(name)) {}

Letter first_coordinate(const SlidingBlockCode& c, const Point& p, std::size_t start, std::size_t* consulted) {
    if (c.rule().is_trie()) {
        std::size_t read = 0;
        const auto& leaf = c.rule().trie().eval(p, start, &read);
        if (consulted) *consulted = std::max(read, leaf.reach());
        return leaf.eval(p, start);
    }
    const auto& r = c.rule().computable();
    LetterPrefix w;
    for (std::size_t n = 1; n <= r.fuel; ++n) {
        w.push_back(p.at(start + n - 1));
        if (auto v = r.rule(w)) {
            if (consulted) *consulted = n;
            return *v;
        }
    }
    throw FuelExhausted(r.name + ": no verdict within " + std::to_string(r.fuel) + " coordinates on " +
                        to_string(p.shift(start - 1)));
}

std::optional<Letter> first_coordinate(const SlidingBlockCode& c, const LetterPrefix& w) {
    if (!c.rule().is_trie()) return c.rule().computable().rule(w);
    const auto* n = c.rule().trie().root().get();
    std::size_t i = 0;
    while (!n->is_leaf()) {
        if (i == w.size()) return std::nullopt;
        n = n->child(w[i++]).get();
    }
    const auto& leaf = *n->leaf;
    if (leaf.reach() > w.size()) return std::nullopt;
    Word symbols;
    for (const auto& a : w) {
        if (!a) break;
        symbols.push_back(*a);
    }
    return leaf.eval(Point::finite(symbols), 1);
}

namespace {

// Assembles a point from its first coordinates and the repeating block
// after them, enforcing that nothing follows an empty coordinate.
Point assemble(const std::vector<Letter>& head, const std::vector<Letter>& cycle) {
    std::vector<Letter> all = head;
    all.insert(all.end(), cycle.begin(), cycle.end());
    auto first_empty = std::find(all.begin(), all.end(), std::nullopt);
    if (first_empty != all.end()) {
        if (std::any_of(first_empty, all.end(), [](const Letter& a) { return a.has_value(); }))
            throw Error("output has a letter after an empty coordinate");
        Word w;
        for (auto it = all.begin(); it != first_empty; ++it) w.push_back(**it);
        return Point::finite(w);
    }
    Word h, c;
    for (const auto& a : head) h.push_back(*a);
    for (const auto& a : cycle) c.push_back(*a);
    return Point::evp(h, c);
}

Point apply_unchecked(const std::function<Letter(const Point&, std::size_t)>& r, const Point& p) {
    std::vector<Letter> head, cycle;
    if (p.is_finite()) {
        for (std::size_t n = 1; n <= p.head().size(); ++n) head.push_back(r(p, n));
        cycle.push_back(r(Point{}, 1));
    } else {
        for (std::size_t n = 1; n <= p.head().size(); ++n) head.push_back(r(p, n));
        for (std::size_t n = 1; n <= p.period().size(); ++n) cycle.push_back(r(p, p.head().size() + n));
    }
    return assemble(head, cycle);
}

}  // namespace

Point apply(const SlidingBlockCode& c, const Point& p) {
    if (!c.domain().contains(p)) throw DomainError(to_string(p) + " is not in the domain of " + c.name());
    return apply_unchecked([&c](const Point& q, std::size_t n) { return first_coordinate(c, q, n); }, p);
}

PointMap as_map(const SlidingBlockCode& c) {
    return [c](const Point& p) { return apply(c, p); };
}

PointMap coordinate_map(std::function<Letter(const Point&)> first) {
    return [first](const Point& p) {
        return apply_unchecked([&first](const Point& q, std::size_t n) { return first(q.shift(n - 1)); }, p);
    };
}

std::optional<std::size_t> code_anticipation(const SlidingBlockCode& c) {
    if (!c.rule().is_trie()) return std::nullopt;
    std::function<std::size_t(const CodeTrie::Ptr&, std::size_t)> go = [&](const CodeTrie::Ptr& n,
                                                                          std::size_t depth) -> std::size_t {
        if (n->is_leaf()) return std::max(depth, n->leaf->reach());
        std::size_t m = go(n->fallback, depth + 1);
        for (const auto& b : n->branches) m = std::max(m, go(b.child, depth + 1));
        if (n->on_empty) m = std::max(m, go(n->on_empty, depth + 1));
        return m;
    };
    const std::size_t need = go(c.rule().trie().normalized().root(), 0);
    return need == 0 ? 0 : need - 1;
}

// ------------------------------------------------------------- validation

bool prefix_free(const std::vector<LetterPrefix>& words) {
    for (std::size_t i = 0; i < words.size(); ++i)
        for (std::size_t j = 0; j < words.size(); ++j) {
            if (i == j || words[i].size() > words[j].size()) continue;
            if (std::equal(words[i].begin(), words[i].end(), words[j].begin())) return false;
        }
    return true;
}

CodeTrie trie_from_words(const std::vector<std::pair<LetterPrefix, LeafOutput>>& words) {
    std::vector<LetterPrefix> keys;
    for (const auto& [w, out] : words) keys.push_back(w);
    if (!prefix_free(keys)) throw PreconditionError("rule words are not prefix-free");
    struct Draft {
        std::optional<LeafOutput> leaf;
        std::map<Letter, std::unique_ptr<Draft>> kids;
    };
    Draft root;
    for (const auto& [w, out] : words) {
        Draft* d = &root;
        for (const auto& a : w) {
            auto& k = d->kids[a];
            if (!k) k = std::make_unique<Draft>();
            d = k.get();
        }
        d->leaf = out;
    }
    std::function<CodeTrie::Ptr(const Draft&)> build = [&](const Draft& d) -> CodeTrie::Ptr {
        if (d.leaf) return CodeTrie::leaf(*d.leaf);
        std::vector<CodeTrie::Branch> bs;
        CodeTrie::Ptr empty;
        for (const auto& [a, k] : d.kids) {
            if (a) bs.push_back({SymbolSet::single(*a), build(*k)});
            else empty = build(*k);
        }
        return CodeTrie::node(std::move(bs), CodeTrie::leaf(LeafOutput::undefined()), empty);
    };
    return CodeTrie(build(root));
}

namespace {

std::vector<Point> validation_points(const SlidingBlockCode& c, std::size_t budget, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto pts = enumerate_finite_points(c.domain(), 2, 2);
    auto more = sample_points(c.domain(), rng, budget);
    pts.insert(pts.end(), more.begin(), more.end());
    return pts;
}

}  // namespace

CodeReport validate(const SlidingBlockCode& c, std::size_t budget, std::uint64_t seed) {
    CodeReport r;
    const auto& dom = c.domain();
    if (c.rule().is_trie()) {
        const auto& t = c.rule().trie();
        r.prefix_free = true;
        r.fibers_finitely_defined = true;
        r.total = true;
        std::vector<LetterPrefix> upsilon;
        visit_reachable(t, dom, [&](const Word& p, const LeafOutput& leaf, bool ended) {
            const std::size_t known = p.size();
            if (leaf.kind == LeafOutput::Kind::undefined) {
                if (r.total) r.notes.push_back("no rule word for points starting " + to_string(p));
                r.total = false;
            } else if (leaf.reach() > known) {
                if (r.total) r.notes.push_back("leaf " + to_string(leaf) + " reads past " + to_string(p));
                r.total = false;
            }
            if (leaf.kind == LeafOutput::Kind::empty) {
                LetterPrefix w(p.begin(), p.end());
                if (ended) w.push_back(std::nullopt);
                upsilon.push_back(w);
            }
        });
        r.upsilon_suffix_closed = true;
        for (const auto& w : upsilon) {
            for (std::size_t s = 1; s < w.size(); ++s) {
                const auto* n = t.root().get();
                std::size_t i = s;
                while (!n->is_leaf() && i < w.size()) n = n->child(w[i++]).get();
                if (n->is_leaf() && i == w.size() && n->leaf->kind != LeafOutput::Kind::empty) {
                    r.upsilon_suffix_closed = false;
                    r.notes.push_back("suffix of an empty-output word has a letter output");
                }
            }
        }
    } else {
        r.prefix_free = true;
        r.total = true;
        for (const auto& p : validation_points(c, budget, seed)) {
            try {
                (void)apply(c, p);
            } catch (const FuelExhausted& e) {
                r.total = false;
                r.notes.push_back(e.what());
                break;
            }
        }
        r.fibers_finitely_defined = r.total;
    }
    auto inv = fds_shift_invariant(fiber(c, std::nullopt), dom, 3, budget, seed);
    r.c_empty_invariant = inv.holds;
    if (!inv.holds) r.notes.push_back("empty-output set not shift invariant at " + to_string(*inv.counterexample));
    if (!c.rule().is_trie()) {
        r.upsilon_suffix_closed = r.c_empty_invariant;
        r.notes.push_back("computable rule: flags sampled");
    }
    return r;
}

// ----------------------------------------------------------------- fibers

FDS fiber(const SlidingBlockCode& c, const Letter& a) {
    if (!c.rule().is_trie()) {
        const auto& r = c.rule().computable();
        PredicateSet p;
        p.fuel = r.fuel;
        p.name = "fiber " + to_string(a);
        p.decide = [rule = r.rule, a](const LetterPrefix& w) -> std::optional<bool> {
            if (auto v = rule(w)) return *v == a;
            return std::nullopt;
        };
        return FDS(p);
    }
    // Deepen every leaf to the coordinates it reads, so each read
    // coordinate is decided by a branch above it.
    std::function<CodeTrie::Ptr(const CodeTrie::Ptr&, std::size_t)> deepen = [&](const CodeTrie::Ptr& n,
                                                                                 std::size_t depth) {
        if (n->is_leaf()) {
            if (n->leaf->reach() <= depth) return n;
            return CodeTrie::node({}, deepen(n, depth + 1));
        }
        std::vector<CodeTrie::Branch> bs;
        for (const auto& b : n->branches) bs.push_back({b.letters, deepen(b.child, depth + 1)});
        return CodeTrie::node(std::move(bs), deepen(n->fallback, depth + 1),
                              n->on_empty ? deepen(n->on_empty, depth + 1) : nullptr);
    };
    const CodeTrie t(deepen(c.rule().trie().root(), 0));

    // Conditions "coordinate pos + 1 lies in pre" that leaves depend on.
    struct Req {
        std::size_t pos;
        SymbolSet pre;
        bool operator==(const Req&) const = default;
    };
    std::vector<Req> reqs;
    auto need = [&](Req q) {
        if (std::find(reqs.begin(), reqs.end(), q) == reqs.end()) reqs.push_back(std::move(q));
    };
    for (const auto& leaf : t.leaves()) {
        if (leaf.kind == LeafOutput::Kind::map) need({leaf.offset, a ? preimage(leaf.fn, *a) : SymbolSet{}});
        if (leaf.kind == LeafOutput::Kind::window) {
            Word w;
            try {
                if (a) w = decode_block(*a, leaf.width);
            } catch (const Error&) {
            }
            for (std::size_t j = 0; j < leaf.width; ++j)
                need({j, w.empty() ? SymbolSet{} : SymbolSet::single(w[j])});
        }
    }
    auto index_of = [&](const Req& q) {
        return static_cast<std::size_t>(std::find(reqs.begin(), reqs.end(), q) - reqs.begin());
    };
    auto leaf_in = [&](const LeafOutput& leaf, const std::vector<char>& bits) -> bool {
        switch (leaf.kind) {
            case LeafOutput::Kind::undefined: return false;
            case LeafOutput::Kind::empty: return !a;
            case LeafOutput::Kind::constant: return a && *a == leaf.value;
            case LeafOutput::Kind::map:
                return bits[index_of({leaf.offset, a ? preimage(leaf.fn, *a) : SymbolSet{}})];
            case LeafOutput::Kind::window: {
                Word w;
                try {
                    if (a) w = decode_block(*a, leaf.width);
                } catch (const Error&) {
                }
                if (w.empty()) return false;
                for (std::size_t j = 0; j < leaf.width; ++j)
                    if (!bits[index_of({j, SymbolSet::single(w[j])})]) return false;
                return true;
            }
        }
        return false;
    };

    std::function<SetTrie::Ptr(const CodeTrie::Ptr&, std::size_t, std::vector<char>)> go =
        [&](const CodeTrie::Ptr& n, std::size_t depth, std::vector<char> bits) -> SetTrie::Ptr {
        if (n->is_leaf()) return SetTrie::leaf(leaf_in(*n->leaf, bits));
        std::vector<std::size_t> here;
        for (std::size_t i = 0; i < reqs.size(); ++i)
            if (reqs[i].pos == depth) here.push_back(i);
        // Split a letter set by membership in each relevant preimage.
        auto pieces = [&](const SymbolSet& s) {
            std::vector<std::pair<SymbolSet, std::vector<char>>> out;
            for (std::size_t mask = 0; mask < (std::size_t{1} << here.size()); ++mask) {
                SymbolSet part = s;
                std::vector<char> b = bits;
                for (std::size_t j = 0; j < here.size(); ++j) {
                    const bool in = (mask >> j) & 1;
                    part = in ? (part & reqs[here[j]].pre) : (part - reqs[here[j]].pre);
                    b[here[j]] = in;
                }
                if (!part.empty()) out.emplace_back(part, b);
            }
            return out;
        };
        std::vector<SetTrie::Branch> bs;
        SymbolSet listed;
        for (const auto& br : n->branches) {
            listed = listed | br.letters;
            for (auto& [part, b] : pieces(br.letters)) bs.push_back({part, go(br.child, depth + 1, b)});
        }
        std::vector<char> none = bits;
        for (auto i : here) none[i] = 0;
        for (auto& [part, b] : pieces(listed.complement()))
            if (b != none) bs.push_back({part, go(n->fallback, depth + 1, b)});
        return SetTrie::node(std::move(bs), go(n->fallback, depth + 1, none),
                             go(n->child(std::nullopt), depth + 1, none));
    };
    return FDS(SetTrie(go(t.root(), 0, std::vector<char>(reqs.size(), 0))).normalized());
}

std::optional<SymbolSet> output_letters(const SlidingBlockCode& c) {
    if (!c.rule().is_trie()) return std::nullopt;
    const auto& t = c.rule().trie();
    const auto& s = c.domain();
    const auto sampler = LetterSampler::for_trie(t, s);
    SymbolSet out;
    bool unbounded = false;
    std::vector<SymbolSet> groups;
    std::function<void(const CodeTrie::Ptr&, Word&)> go = [&](const CodeTrie::Ptr& n, Word& p) {
        auto take = [&](const LeafOutput& leaf, bool ended) {
            switch (leaf.kind) {
                case LeafOutput::Kind::constant: out = out | SymbolSet::single(leaf.value); break;
                case LeafOutput::Kind::map:
                    if (ended && leaf.offset >= p.size()) break;
                    if (leaf.offset < groups.size()) out = out | image_of(leaf.fn, groups[leaf.offset]);
                    else unbounded = true;
                    break;
                case LeafOutput::Kind::window: {
                    std::size_t count = 1;
                    for (std::size_t j = 0; j < leaf.width && j < groups.size(); ++j) {
                        auto sz = groups[j].size();
                        count = sz ? count * static_cast<std::size_t>(*sz) : SIZE_MAX;
                        if (count > 4096) break;
                    }
                    if (leaf.width > groups.size() || count > 4096) {
                        unbounded = true;
                        break;
                    }
                    std::vector<Word> words{{}};
                    for (std::size_t j = 0; j < leaf.width; ++j) {
                        std::vector<Word> next;
                        for (const auto& w : words)
                            for (Symbol x : groups[j].elements()) {
                                auto v = w;
                                v.push_back(x);
                                next.push_back(v);
                            }
                        words = std::move(next);
                    }
                    for (const auto& w : words) out = out | SymbolSet::single(encode_block(w));
                    break;
                }
                default: break;
            }
        };
        if (n->is_leaf()) return take(*n->leaf, false);
        if (p.empty() ? s.contains(Point{}) : s.has_iep(p)) take(empty_leaf<LeafOutput>(n), true);
        const SymbolSet follow = s.follower(p);
        SymbolSet listed;
        auto descend = [&](const SymbolSet& g, const CodeTrie::Ptr& child) {
            if (g.empty()) return;
            groups.push_back(g);
            for (Symbol a : sampler.sample(g)) {
                p.push_back(a);
                go(child, p);
                p.pop_back();
            }
            groups.pop_back();
        };
        for (const auto& b : n->branches) {
            listed = listed | b.letters;
            descend(b.letters & follow, b.child);
        }
        descend(follow - listed, n->fallback);
    };
    Word p;
    go(t.root(), p);
    if (unbounded) return SymbolSet::all();
    return out;
}

bool outputs_empty(const SlidingBlockCode& c) {
    if (!c.rule().is_trie()) return true;
    bool found = false;
    visit_reachable(c.rule().trie(), c.domain(), [&](const Word&, const LeafOutput& leaf, bool) {
        found = found || leaf.kind == LeafOutput::Kind::empty;
    });
    return found;
}

// ------------------------------------------------------------ map checks

MapCheck check_shift_commute(const PointMap& f, const std::vector<Point>& samples) {
    for (const auto& p : samples) {
        Point lhs = f(p.shift());
        Point rhs = f(p).shift();
        if (!(lhs == rhs))
            return {false, p, "f(shift p) = " + to_string(lhs) + " but shift f(p) = " + to_string(rhs)};
    }
    return {};
}

MapCheck check_shift_commute(const SlidingBlockCode& c, std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return check_shift_commute(as_map(c), sample_points(c.domain(), rng, samples));
}

MapCheck check_period_preserved(const SlidingBlockCode& c, const Point& p, std::size_t period) {
    if (period == 0 || !(p.shift(period) == p))
        throw PreconditionError(to_string(p) + " does not have period " + std::to_string(period));
    Point img = apply(c, p);
    if (img.shift(period) == img) return {};
    return {false, p, "image " + to_string(img) + " lost period " + std::to_string(period)};
}

EmptyImage check_empty_image_constant(const SlidingBlockCode& c) {
    EmptyImage out;
    out.image = apply(c, Point{});
    if (out.image.is_empty()) {
        out.constant = true;
    } else if (out.image.head().empty() && out.image.period().size() == 1) {
        out.constant = true;
        out.letter = out.image.period()[0];
    }
    return out;
}

MapCheck check_length_bound(const SlidingBlockCode& c, std::size_t samples, std::uint64_t seed) {
    if (!apply(c, Point{}).is_empty()) throw PreconditionError("the code does not fix the empty sequence");
    std::mt19937_64 rng(seed);
    auto pts = enumerate_finite_points(c.domain(), 3, 2);
    auto more = sample_points(c.domain(), rng, samples);
    pts.insert(pts.end(), more.begin(), more.end());
    for (const auto& p : pts) {
        if (!p.is_finite()) continue;
        Point img = apply(c, p);
        if (!img.is_finite() || *img.length() > *p.length())
            return {false, p, "image " + to_string(img) + " longer than the point"};
    }
    return {};
}

// ------------------------------------------------------------- falsifier

std::optional<BlockWitness> falsify_sliding_block(const PointMap& f, const std::vector<Point>& pool,
                                                  std::size_t depth) {
    std::map<std::vector<Letter>, std::pair<Point, Letter>> seen;
    for (const auto& p : pool) {
        Letter img;
        try {
            img = f(p).at(1);
        } catch (const Error&) {
            continue;
        }
        auto key = p.unroll(depth + 1);
        auto [it, fresh] = seen.emplace(key, std::make_pair(p, img));
        if (!fresh && it->second.second != img) return BlockWitness{it->second.first, p, it->second.second, img, depth};
    }
    return std::nullopt;
}

std::vector<Point> point_pool(const ShiftPresentation& s, std::size_t max_len, Symbol radius, std::size_t cap,
                              std::size_t per_word) {
    std::vector<Point> out;
    std::set<std::string> keys;
    auto add = [&](const Point& p) {
        if (out.size() < cap && keys.insert(to_string(p)).second) out.push_back(p);
    };
    if (s.contains(Point{})) add(Point{});
    const SymbolSet window = SymbolSet::range(-radius, radius);
    Word w;
    std::function<void()> go = [&] {
        if (out.size() >= cap) return;
        if (!w.empty())
            for (const auto& p : completions(s, w, per_word)) add(p);
        if (w.size() == max_len) return;
        for (Symbol a : (s.follower(w) & window).elements()) {
            w.push_back(a);
            go();
            w.pop_back();
            if (out.size() >= cap) return;
        }
    };
    go();
    return out;
}

std::optional<BlockWitness> falsify_sliding_block(const PointMap& f, const ShiftPresentation& s,
                                                  std::size_t depth, std::size_t width) {
    auto pool = point_pool(s, depth + 2, static_cast<Symbol>(depth) + 4, width);
    return falsify_sliding_block(f, pool, depth);
}

// ------------------------------------------------------------ composition

namespace {

std::size_t lookahead(const SlidingBlockCode& c) {
    if (auto a = code_anticipation(c)) return *a + 1;
    return c.rule().computable().fuel;
}

}  // namespace

SlidingBlockCode compose(const SlidingBlockCode& phi, const SlidingBlockCode& psi) {
    const std::size_t need_phi = lookahead(phi), need_psi = lookahead(psi);
    ComputableRule r;
    r.fuel = need_phi + need_psi;
    r.name = psi.name() + " o " + phi.name();
    r.rule = [phi, psi, need_psi](const LetterPrefix& w) -> std::optional<Letter> {
        LetterPrefix mid;
        const bool ended = std::find(w.begin(), w.end(), std::nullopt) != w.end();
        for (std::size_t j = 0; j < w.size() + need_psi && mid.size() < need_psi; ++j) {
            std::optional<Letter> v;
            if (j < w.size()) v = first_coordinate(phi, LetterPrefix(w.begin() + static_cast<std::ptrdiff_t>(j), w.end()));
            else if (ended) v = first_coordinate(phi, LetterPrefix{std::nullopt});
            if (!v) break;
            mid.push_back(*v);
        }
        return first_coordinate(psi, mid);
    };
    return SlidingBlockCode(phi.domain(), psi.out_alphabet(), LocalRule(r), r.name);
}

// ------------------------------------------------------------ image IEP

std::optional<IepFailure> image_iep_failure(const SlidingBlockCode& c, const std::vector<Point>& pool) {
    auto letters = output_letters(c);
    if (!letters || !letters->is_finite()) return std::nullopt;
    for (const auto& p : pool) {
        Point y = apply(c, p);
        if (!y.is_finite()) continue;
        std::string why = y.is_empty() ? "the empty sequence is an image point but the image letters " +
                                             letters->to_string() + " are finite"
                                       : "finite image point with follower set inside the finite letter set " +
                                             letters->to_string();
        return IepFailure{y, p, why};
    }
    return std::nullopt;
}

}  // namespace cshift
