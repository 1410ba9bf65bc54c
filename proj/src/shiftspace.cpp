#include "cshift/shiftspace.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace cshift {

namespace {

Symbol floor_mod(Symbol a, Symbol m) {
    Symbol r = a % m;
    return r < 0 ? r + m : r;
}

Word suffix(const Word& w, std::size_t k) {
    if (w.size() <= k) return w;
    return Word(w.end() - static_cast<std::ptrdiff_t>(k), w.end());
}

bool ends_with(const Word& w, const Word& tail) {
    return tail.size() <= w.size() && std::equal(tail.rbegin(), tail.rend(), w.rbegin());
}

}  // namespace

// ---------------------------------------------------------------- EdgeClause

Symbol EdgeClause::anchor(Symbol a) const {
    if (block <= 1) return a;
    return a - floor_mod(a - block_base, block);
}

SymbolSet EdgeClause::targets(Symbol a) const {
    return absolute | relative.translate(anchor(a));
}

SymbolSet EdgeClause::sources_reaching(const SymbolSet& t) const {
    if (!(absolute & t).empty()) return source;
    if (relative.empty()) return {};
    SymbolSet anchors = t.plus(relative.negate());
    if (block <= 1) return source & anchors;
    std::vector<Interval> covered;
    for (const auto& i : anchors.intervals()) {
        Symbol first = i.lo == kNegInf ? kNegInf : i.lo + floor_mod(block_base - i.lo, block);
        Symbol last = i.hi == kPosInf ? kPosInf : i.hi - floor_mod(i.hi - block_base, block);
        if (first != kNegInf && last != kPosInf && first > last) continue;
        covered.push_back({first, sat_add(last, block - 1)});
    }
    return source & SymbolSet::from_intervals(std::move(covered));
}

std::size_t SymbolClassPartition::class_of(Symbol a) const {
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (classes[i].contains(a)) return i;
    throw DomainError("letter " + std::to_string(a) + " is in no class");
}

// -------------------------------------------------------- ShiftPresentation

ShiftPresentation ShiftPresentation::full(Alphabet alphabet) { return forbidden(alphabet, {}); }

ShiftPresentation ShiftPresentation::forbidden(Alphabet alphabet, std::vector<Word> words) {
    ShiftPresentation s(alphabet);
    std::vector<Symbol> seen;
    for (const auto& w : words) {
        if (w.empty()) throw PreconditionError("forbidden words must be nonempty");
        for (Symbol a : w) {
            if (!alphabet.contains(a))
                throw PreconditionError("forbidden word letter " + std::to_string(a) + " outside alphabet");
            seen.push_back(a);
        }
    }
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    s.words_ = std::move(words);
    s.explicit_ = SymbolSet::of(seen);
    s.generic_ = alphabet.letters() - s.explicit_;
    s.compute_live();
    return s;
}

ShiftPresentation ShiftPresentation::edges(Alphabet alphabet, std::vector<EdgeClause> clauses) {
    ShiftPresentation s(alphabet);
    s.edge_form_ = true;
    for (const auto& c : clauses)
        if (c.block < 1) throw PreconditionError("edge clause block width must be positive");
    s.clauses_ = std::move(clauses);
    s.compute_live();
    return s;
}

std::size_t ShiftPresentation::memory() const {
    if (edge_form_) return 1;
    std::size_t m = 0;
    for (const auto& w : words_) m = std::max(m, w.size() - 1);
    return m;
}

void ShiftPresentation::compute_live() {
    const SymbolSet letters = alphabet_.letters();
    if (!edge_form_) {
        std::vector<Symbol> ok;
        if (explicit_.is_finite())
            for (Symbol a : explicit_.elements())
                if (extendable({a}) && factor_free({a})) ok.push_back(a);
        live_ = generic_ | SymbolSet::of(ok);
        return;
    }
    SymbolSet live;
    for (const auto& c : clauses_) live = live | c.source;
    live = live & letters;
    auto step = [&](const SymbolSet& l) {
        SymbolSet next;
        for (const auto& c : clauses_) next = next | (c.source & l & c.sources_reaching(l));
        return next;
    };
    // An unbounded run can lose one letter per round forever (a -> a-1 down to
    // a dead letter). Such eroding rays are dropped as a whole, and the guess
    // is kept only when it is itself a fixed point.
    auto without_eroding_rays = [](const SymbolSet& now, const SymbolSet& before) {
        std::vector<Interval> kept;
        const auto old = before.intervals();
        for (const auto& i : now.intervals()) {
            bool eroding = false;
            for (const auto& o : old) {
                if (i.hi == kPosInf && o.hi == kPosInf && o.lo < i.lo) eroding = true;
                if (i.lo == kNegInf && o.lo == kNegInf && o.hi > i.hi) eroding = true;
            }
            if (!eroding) kept.push_back(i);
        }
        return SymbolSet::from_intervals(std::move(kept));
    };
    SymbolSet checkpoint = live;
    for (int iter = 1;; ++iter) {
        if (iter > 100000) throw Error("live letter computation did not converge");
        const SymbolSet next = step(live);
        if (next == live) break;
        live = next;
        if (iter % 64 == 0) {
            const SymbolSet guess = without_eroding_rays(live, checkpoint);
            if (guess != live && step(guess) == guess) {
                live = guess;
                break;
            }
            checkpoint = live;
        }
    }
    live_ = live;
}

void ShiftPresentation::check_letters(const Word& w) const {
    for (Symbol a : w)
        if (!alphabet_.contains(a))
            throw DomainError("letter " + std::to_string(a) + " outside alphabet " + alphabet_.to_string());
}

SymbolSet ShiftPresentation::raw_follower(Symbol a) const {
    SymbolSet out;
    for (const auto& c : clauses_)
        if (c.source.contains(a)) out = out | c.targets(a);
    return out & alphabet_.letters();
}

bool ShiftPresentation::factor_free(const Word& w) const {
    for (std::size_t end = 1; end <= w.size(); ++end) {
        Word head(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(end));
        for (const auto& f : words_)
            if (ends_with(head, f)) return false;
    }
    return true;
}

bool ShiftPresentation::extendable(const Word& w) const {
    if (!generic_.empty()) return true;
    // Every letter is explicit, so the alphabet is finite: search the
    // automaton on the last `memory` letters for a reachable cycle.
    const std::size_t m = memory();
    const auto alphabet = alphabet_.letters().elements();
    std::map<Word, std::vector<Word>> graph;
    std::deque<Word> todo{suffix(w, m)};
    graph[todo.front()];
    while (!todo.empty()) {
        Word s = todo.front();
        todo.pop_front();
        for (Symbol b : alphabet) {
            Word t = s;
            t.push_back(b);
            bool bad = false;
            for (const auto& f : words_) bad = bad || ends_with(t, f);
            if (bad) continue;
            Word next = suffix(t, m);
            graph[s].push_back(next);
            if (graph.emplace(next, std::vector<Word>{}).second) todo.push_back(next);
        }
    }
    std::set<Word> alive;
    for (const auto& [k, v] : graph) alive.insert(k);
    for (bool changed = true; changed;) {
        changed = false;
        for (auto it = alive.begin(); it != alive.end();) {
            const auto& succ = graph[*it];
            bool any = std::any_of(succ.begin(), succ.end(), [&](const Word& t) { return alive.count(t); });
            if (!any) {
                it = alive.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
    }
    return alive.count(suffix(w, m)) > 0;
}

bool ShiftPresentation::in_language(const Word& w) const {
    check_letters(w);
    if (w.empty()) return !live_.empty();  // the empty shift has no factors at all
    if (!edge_form_) return factor_free(w) && extendable(w);
    if (!live_.contains(w.back())) return false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (!raw_follower(w[i]).contains(w[i + 1])) return false;
    return true;
}

SymbolSet ShiftPresentation::follower(const Word& w) const {
    if (!in_language(w)) throw DomainError("word " + to_string(w) + " is not in the language");
    if (w.empty()) return live_;
    if (edge_form_) return raw_follower(w.back()) & live_;
    std::vector<Symbol> ok;
    for (Symbol b : (explicit_ & live_).elements()) {
        Word t = w;
        t.push_back(b);
        if (in_language(t)) ok.push_back(b);
    }
    return generic_ | SymbolSet::of(ok);
}

SymbolSet ShiftPresentation::predecessor(const Word& w) const {
    if (!in_language(w)) throw DomainError("word " + to_string(w) + " is not in the language");
    if (w.empty()) return live_;
    if (edge_form_) {
        SymbolSet out;
        const SymbolSet first = SymbolSet::single(w.front());
        for (const auto& c : clauses_) out = out | (c.source & live_ & c.sources_reaching(first));
        return out;
    }
    std::vector<Symbol> ok;
    for (Symbol b : (explicit_ & live_).elements()) {
        Word t{b};
        t.insert(t.end(), w.begin(), w.end());
        if (in_language(t)) ok.push_back(b);
    }
    return generic_ | SymbolSet::of(ok);
}

bool ShiftPresentation::has_iep(const Word& w) const {
    if (w.empty()) return !live_.is_finite();
    if (!in_language(w)) return false;
    return !follower(w).is_finite();
}

bool ShiftPresentation::contains(const Point& p) const {
    for (Symbol a : p.head())
        if (!alphabet_.contains(a)) return false;
    for (Symbol a : p.period())
        if (!alphabet_.contains(a)) return false;
    if (p.is_finite()) return in_language(p.head()) && has_iep(p.head());
    const std::size_t reps = edge_form_ ? 2 : std::max<std::size_t>(memory(), 1) + 1;
    Word window = p.prefix(p.head().size() + reps * p.period().size());
    if (!edge_form_) return factor_free(window);
    for (Symbol a : window)
        if (!live_.contains(a)) return false;
    for (std::size_t i = 0; i + 1 < window.size(); ++i)
        if (!raw_follower(window[i]).contains(window[i + 1])) return false;
    return true;
}

SymbolClassPartition ShiftPresentation::classes() const {
    const SymbolSet letters = alphabet_.letters();
    std::vector<Symbol> cuts;
    auto add_cuts = [&](const SymbolSet& s) {
        for (const auto& i : s.intervals()) {
            if (i.lo != kNegInf) cuts.push_back(i.lo);
            if (i.hi != kPosInf) cuts.push_back(i.hi + 1);
        }
    };
    add_cuts(letters);
    add_cuts(live_);
    if (edge_form_) {
        for (const auto& c : clauses_) {
            add_cuts(c.source);
            add_cuts(c.absolute);
        }
    } else if (explicit_.is_finite()) {
        for (Symbol a : explicit_.elements()) {
            cuts.push_back(a);
            cuts.push_back(a + 1);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    SymbolClassPartition out;
    for (const auto& i : letters.intervals()) {
        Symbol lo = i.lo;
        for (Symbol c : cuts) {
            if (c <= lo || (i.hi != kPosInf && c > i.hi)) continue;
            out.classes.push_back(SymbolSet::range(lo, c - 1));
            lo = c;
        }
        out.classes.push_back(SymbolSet::range(lo, i.hi));
    }
    return out;
}

ShiftClass ShiftPresentation::classify() const {
    ShiftClass out;
    out.row_finite = true;
    out.column_finite = true;
    bool every_follower_full = true;
    bool finitely_many_missing_pairs = edge_form_ ? (alphabet_.letters() - live_).is_finite() : true;
    for (const auto& cls : classes().classes) {
        const SymbolSet part = cls & live_;
        for (Symbol a : representatives(part, 3)) {
            const SymbolSet f = follower({a});
            if (!f.is_finite()) out.row_finite = false;
            if (!predecessor({a}).is_finite()) out.column_finite = false;
            const SymbolSet missing = live_ - f;
            if (!missing.empty()) {
                every_follower_full = false;
                if (!missing.is_finite() || !part.is_finite()) finitely_many_missing_pairs = false;
            }
        }
    }
    if (edge_form_) {
        out.is_sft = finitely_many_missing_pairs;
        out.m_step = every_follower_full ? 0 : 1;
    } else {
        out.is_sft = true;
        std::size_t m = 0;
        for (const auto& w : words_) {
            bool redundant = false;
            for (const auto& f : words_) {
                if (f.size() >= w.size()) continue;
                for (std::size_t s = 0; s + f.size() <= w.size() && !redundant; ++s)
                    redundant = std::equal(f.begin(), f.end(), w.begin() + static_cast<std::ptrdiff_t>(s));
            }
            if (!redundant) m = std::max(m, w.size() - 1);
        }
        out.m_step = m;
    }
    return out;
}

// ------------------------------------------------------------- enumeration

std::vector<Symbol> representatives(const SymbolSet& s, std::size_t near) {
    std::vector<Symbol> out;
    const Symbol n = static_cast<Symbol>(near);
    for (const auto& i : s.intervals()) {
        const bool lo_inf = i.lo == kNegInf, hi_inf = i.hi == kPosInf;
        if (!lo_inf && !hi_inf && i.hi - i.lo <= 2 * n) {
            for (Symbol a = i.lo; a <= i.hi; ++a) out.push_back(a);
            continue;
        }
        if (lo_inf && hi_inf) {
            for (Symbol a = -n; a <= n; ++a) out.push_back(a);
            out.push_back(-n - kFarOffset);
            out.push_back(n + kFarOffset);
            continue;
        }
        if (!lo_inf) {
            for (Symbol a = i.lo; a < i.lo + n; ++a) out.push_back(a);
            if (hi_inf) out.push_back(i.lo + n - 1 + kFarOffset);
        }
        if (!hi_inf) {
            for (Symbol a = i.hi - n + 1; a <= i.hi; ++a) out.push_back(a);
            if (lo_inf) out.push_back(i.hi - n + 1 - kFarOffset);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

std::vector<Symbol> class_reps(const SymbolSet& f, const SymbolClassPartition& part, std::size_t near) {
    std::vector<Symbol> out;
    for (const auto& c : part.classes) {
        auto r = representatives(f & c, near);
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

void extend_words(const ShiftPresentation& s, const SymbolClassPartition& part, Word& cur, std::size_t len,
                  std::size_t near, std::vector<Word>& out) {
    if (cur.size() == len) {
        out.push_back(cur);
        return;
    }
    for (Symbol b : class_reps(s.follower(cur), part, near)) {
        cur.push_back(b);
        extend_words(s, part, cur, len, near, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Word> enumerate_words(const ShiftPresentation& s, std::size_t len, std::size_t near) {
    std::vector<Word> out;
    Word cur;
    const auto part = s.classes();
    extend_words(s, part, cur, len, near, out);
    return out;
}

std::vector<Point> enumerate_finite_points(const ShiftPresentation& s, std::size_t max_len,
                                           std::size_t per_class_reps) {
    std::vector<Point> out;
    for (std::size_t len = 0; len <= max_len; ++len)
        for (const auto& w : enumerate_words(s, len, per_class_reps))
            if (s.has_iep(w)) out.push_back(Point::finite(w));
    return out;
}

std::vector<Point> completions(const ShiftPresentation& s, const Word& w, std::size_t count) {
    std::vector<Point> out;
    if (count == 0 || !s.in_language(w)) return out;
    auto add = [&](Point p) {
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
    };
    if (s.has_iep(w)) add(Point::finite(w));

    const std::size_t m = std::max<std::size_t>(s.memory(), 1);
    auto pick_near = [](const SymbolSet& f) { return f.enumerate(1).front(); };
    auto pick_far = [](const SymbolSet& f) {
        if (auto hi = f.max()) return *hi;
        return f.enumerate(4).back();
    };
    const auto first_options = s.follower(w).enumerate(count + 2);
    for (std::size_t strategy = 0; out.size() < count && strategy < count + 4; ++strategy) {
        Word cur = w;
        const bool far = strategy == 1;
        if (strategy >= 2) {
            if (strategy - 2 >= first_options.size()) break;
            cur.push_back(first_options[strategy - 2]);
        }
        std::map<Word, std::size_t> seen;
        bool done = false;
        // Far letters only at first, so an unbounded walk still settles.
        for (int step = 0; step < 4096 && !done; ++step) {
            if (cur.size() >= m) {
                auto [it, fresh] = seen.emplace(suffix(cur, m), cur.size());
                if (!fresh) {
                    const auto start = static_cast<std::ptrdiff_t>(it->second);
                    add(Point::evp(Word(cur.begin(), cur.begin() + start), Word(cur.begin() + start, cur.end())));
                    done = true;
                    break;
                }
            }
            // cur stays in the language, so its last m letters decide what follows.
            const SymbolSet f = s.follower(suffix(cur, m));
            if (f.empty()) break;
            cur.push_back(far && step < 32 ? pick_far(f) : pick_near(f));
        }
        if (!done && s.has_iep(cur)) add(Point::finite(cur));
    }
    return out;
}

std::vector<Point> sample_points(const ShiftPresentation& s, std::mt19937_64& rng, std::size_t count,
                                 std::size_t max_len) {
    std::vector<Point> out;
    if (s.letters().empty()) return out;
    auto random_letter = [&](const SymbolSet& f) {
        auto cand = f.enumerate(12);
        auto reps = representatives(f, 2);
        cand.insert(cand.end(), reps.begin(), reps.end());
        return cand[rng() % cand.size()];
    };
    for (std::size_t attempt = 0; out.size() < count && attempt < 40 * count + 40; ++attempt) {
        if (rng() % 8 == 0) {
            if (s.contains(Point{})) out.emplace_back();
            continue;
        }
        const std::size_t len = 1 + rng() % std::max<std::size_t>(max_len, 1);
        Word w;
        bool stuck = false;
        while (w.size() < len && !stuck) {
            const SymbolSet f = s.follower(w);
            if (f.empty()) stuck = true;
            else w.push_back(random_letter(f));
        }
        auto options = completions(s, w, 4);
        if (options.empty()) continue;
        out.push_back(options[rng() % options.size()]);
    }
    return out;
}

}  // namespace cshift
