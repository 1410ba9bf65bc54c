#include "cshift/text.hpp"

#include <cctype>

#include "cshift/gallery.hpp"

namespace cshift {

ParseError::ParseError(std::size_t line, std::size_t column, std::string expected)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": expected " + expected),
      line(line),
      column(column),
      expected(std::move(expected)) {}

// ------------------------------------------------------------ printing

std::string print_alphabet(const Alphabet& a) {
    switch (a.kind()) {
        case Alphabet::Kind::naturals: return "naturals";
        case Alphabet::Kind::integers: return "integers";
        case Alphabet::Kind::finite: return "finite(" + std::to_string(a.size()) + ")";
    }
    return {};
}

namespace {

std::string key_text(const SymbolSet& s) {
    if (s.is_finite() && s.elements().size() == 1) return std::to_string(s.elements().front());
    return s.to_string();
}

}  // namespace

std::string print_shift(const ShiftPresentation& s) {
    std::string out = "shift { alphabet = " + print_alphabet(s.alphabet());
    if (s.is_edge_form()) {
        out += "; edges = [";
        SymbolSet named;
        const auto& cs = s.clauses();
        for (std::size_t i = 0; i < cs.size(); ++i) {
            const auto& c = cs[i];
            const bool rest = i + 1 == cs.size() && i > 0 && c.source == (s.alphabet().letters() - named);
            out += (i ? ", " : "") + (rest ? std::string("rest") : key_text(c.source)) + " -> abs " +
                   c.absolute.to_string() + " rel " + c.relative.to_string();
            if (c.block != 1 || c.block_base != 0)
                out += " block " + std::to_string(c.block) + " base " + std::to_string(c.block_base);
            named = named | c.source;
        }
        return out + "] }";
    }
    if (!s.forbidden_words().empty()) {
        out += "; forbidden = [";
        for (std::size_t i = 0; i < s.forbidden_words().size(); ++i)
            out += (i ? "," : "") + to_string(s.forbidden_words()[i]);
        out += "]";
    }
    return out + " }";
}

namespace {

std::string leaf_text(bool v) { return v ? "in" : "out"; }
std::string leaf_text(const LeafOutput& o) { return to_string(o); }

template <class Leaf>
std::string node_text(const typename RuleTrie<Leaf>::Ptr& n) {
    if (n->is_leaf()) return leaf_text(*n->leaf);
    std::string out = "{";
    for (const auto& b : n->branches) out += key_text(b.letters) + ": " + node_text<Leaf>(b.child) + ", ";
    if (n->on_empty) out += "empty: " + node_text<Leaf>(n->on_empty) + ", ";
    return out + "_: " + node_text<Leaf>(n->fallback) + "}";
}

// Top-level tries always print in braces so they cannot be read as a letter.
template <class Leaf>
std::string root_text(const typename RuleTrie<Leaf>::Ptr& n) {
    if (n->is_leaf()) return "{_: " + leaf_text(*n->leaf) + "}";
    return node_text<Leaf>(n);
}

}  // namespace

std::string print_trie(const SetTrie& t) { return root_text<bool>(t.root()); }
std::string print_trie(const CodeTrie& t) { return root_text<LeafOutput>(t.root()); }

std::string print_code(const SlidingBlockCode& c) {
    if (!c.rule().is_trie()) throw PreconditionError("a computable rule has no text form");
    return "code { domain = " + print_shift(c.domain()) + "; out-alphabet = " + print_alphabet(c.out_alphabet()) +
           "; rule = " + print_trie(c.rule().trie()) + " }";
}

std::string print_value(const Value& v) {
    struct {
        std::string operator()(const Point& p) { return to_string(p); }
        std::string operator()(const BlockPoint& p) { return to_string(p); }
        std::string operator()(const Cylinder& c) { return c.to_string(); }
        std::string operator()(const Alphabet& a) { return print_alphabet(a); }
        std::string operator()(const ShiftPresentation& s) { return print_shift(s); }
        std::string operator()(const SetTrie& t) { return print_trie(t); }
        std::string operator()(const CodeTrie& t) { return print_trie(t); }
        std::string operator()(const SlidingBlockCode& c) { return print_code(c); }
    } visit;
    return std::visit(visit, v);
}

std::string print(const Document& d) {
    std::string out;
    for (const auto& i : d.items) out += i.name + " = " + print_value(i.value) + "\n";
    return out;
}

// ------------------------------------------------------------ parsing

namespace {

// A trie read before its leaf kind is known.
struct RawNode {
    std::optional<LeafOutput> code_leaf;
    std::optional<bool> set_leaf;
    std::vector<std::pair<SymbolSet, std::shared_ptr<RawNode>>> branches;
    std::shared_ptr<RawNode> on_empty;
    std::shared_ptr<RawNode> fallback;
    std::size_t at = 0;
};

class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    [[noreturn]] void fail(const std::string& expected, std::size_t at) const {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < at && i < s_.size(); ++i) {
            if (s_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(line, col, expected);
    }

    [[noreturn]] void fail(const std::string& expected) {
        skip();
        fail(expected, pos_);
    }

    // Skips blanks and comments; newlines too unless told otherwise.
    void skip(bool newlines = true) {
        while (pos_ < s_.size()) {
            const char c = s_[pos_];
            if (c == '#') {
                while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
            } else if (c == ' ' || c == '\t' || c == '\r' || (newlines && c == '\n')) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    bool at_end() {
        skip();
        return pos_ >= s_.size();
    }

    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    std::size_t here() {
        skip();
        return pos_;
    }

    static bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; }

    bool accept(const std::string& tok) {
        skip();
        if (s_.compare(pos_, tok.size(), tok) != 0) return false;
        // Keywords must not run into a following identifier character.
        if (std::isalpha(static_cast<unsigned char>(tok.back())) && pos_ + tok.size() < s_.size() &&
            word_char(s_[pos_ + tok.size()]))
            return false;
        pos_ += tok.size();
        return true;
    }

    void expect(const std::string& tok) {
        if (!accept(tok)) fail("'" + tok + "'");
    }

    bool at_integer() {
        const char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '-' && pos_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])));
    }

    Symbol integer() {
        if (!at_integer()) fail("an integer");
        const std::size_t start = pos_;
        if (s_[pos_] == '-') ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        try {
            return std::stoll(s_.substr(start, pos_ - start));
        } catch (const std::exception&) {
            fail("an integer in range", start);
        }
    }

    std::size_t natural() {
        const std::size_t at = here();
        const Symbol v = integer();
        if (v < 0) fail("a nonnegative integer", at);
        return static_cast<std::size_t>(v);
    }

    std::string identifier() {
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && (word_char(s_[pos_]) || s_[pos_] == '.')) ++pos_;
        if (pos_ == start || std::isdigit(static_cast<unsigned char>(s_[start])) || s_[start] == '-')
            fail("a name", start);
        return s_.substr(start, pos_ - start);
    }

    Word word() {
        expect("[");
        Word w;
        if (accept("]")) return w;
        do w.push_back(integer());
        while (accept(","));
        if (peek() != ']') fail("',' or ']'");
        expect("]");
        return w;
    }

    std::vector<Word> words_until(char stop) {
        std::vector<Word> out;
        if (peek() == stop || peek() == ']') return out;
        do out.push_back(word());
        while (accept(","));
        return out;
    }

    Word symbols_until(char stop) {
        Word out;
        if (peek() == stop || peek() == ']') return out;
        do out.push_back(integer());
        while (accept(","));
        return out;
    }

    // A point or a point over block letters. Running out of input inside one
    // is reported at its opening bracket.
    Value point_like() {
        const std::size_t open = here();
        try {
            return point_body(open);
        } catch (const ParseError&) {
            if (at_end()) fail("']' closing this point", open);
            throw;
        }
    }

    Value point_body(std::size_t open) {
        expect("[");
        const bool bar_first = accept("|");
        if (peek() == '[') {
            std::vector<Word> head, period;
            if (!bar_first) head = words_until('|');
            const bool periodic = bar_first || accept("|");
            if (periodic) period = words_until(']');
            if (peek() != ']') fail(periodic ? "',' or ']'" : "',', '|' or ']'");
            expect("]");
            if (!periodic) return BlockPoint::finite(head);
            if (period.empty()) fail("a nonempty period", open);
            return BlockPoint::evp(head, period);
        }
        Word head, period;
        if (!bar_first) head = symbols_until('|');
        const bool periodic = bar_first || accept("|");
        if (periodic) period = symbols_until(']');
        if (peek() != ']') fail(periodic ? "',' or ']'" : "',', '|' or ']'");
        expect("]");
        if (!periodic) return Point::finite(head);
        if (period.empty()) fail("a nonempty period", open);
        return Point::evp(head, period);
    }

    Cylinder cylinder() {
        expect("Z");
        expect("(");
        Word base;
        std::vector<Symbol> excluded;
        if (peek() == '[') base = word();
        if (accept(";")) {
            expect("{");
            excluded = symbols_until('}');
            expect("}");
        }
        expect(")");
        return Cylinder(base, excluded);
    }

    Alphabet alphabet() {
        if (accept("naturals")) return Alphabet::naturals();
        if (accept("integers")) return Alphabet::integers();
        const std::size_t at = here();
        if (accept("finite")) {
            expect("(");
            const Symbol n = integer();
            expect(")");
            try {
                return Alphabet::finite(n);
            } catch (const Error&) {
                fail("a positive alphabet size", at);
            }
        }
        fail("an alphabet (naturals, integers or finite(n))");
    }

    SymbolSet symbol_set() {
        expect("{");
        std::vector<Interval> parts;
        if (accept("}")) return {};
        do {
            const std::size_t at = here();
            Symbol lo = kNegInf, hi = kPosInf;
            if (accept("..")) {
                if (at_integer()) hi = integer();
            } else {
                lo = integer();
                if (accept("..")) {
                    if (at_integer()) hi = integer();
                } else {
                    hi = lo;
                }
            }
            if (lo != kNegInf && hi != kPosInf && hi < lo) fail("an interval with lo <= hi", at);
            parts.push_back({lo, hi});
        } while (accept(","));
        expect("}");
        return SymbolSet::from_intervals(parts);
    }

    // A single letter or a letter set.
    SymbolSet letters() {
        if (at_integer()) return SymbolSet::single(integer());
        if (peek() == '{') return symbol_set();
        fail("a letter or a letter set");
    }

    ShiftPresentation shift() {
        const std::size_t at = here();
        expect("shift");
        expect("{");
        expect("alphabet");
        expect("=");
        const Alphabet a = alphabet();
        auto make = [&](auto f) -> ShiftPresentation {
            try {
                return f();
            } catch (const Error& e) {
                fail(std::string("a valid presentation (") + e.what() + ")", at);
            }
        };
        ShiftPresentation s = ShiftPresentation::full(a);
        if (accept(";")) {
            if (accept("forbidden")) {
                expect("=");
                expect("[");
                auto ws = words_until(']');
                expect("]");
                s = make([&] { return ShiftPresentation::forbidden(a, ws); });
            } else if (accept("edges")) {
                expect("=");
                auto cs = edge_table(a);
                s = make([&] { return ShiftPresentation::edges(a, cs); });
            } else {
                fail("'forbidden' or 'edges'");
            }
        }
        expect("}");
        return s;
    }

    std::vector<EdgeClause> edge_table(const Alphabet& a) {
        if (accept("gallery:")) {
            const std::size_t at = here();
            const std::string id = identifier();
            if (id.size() != 1 || kGalleryIds.find(id[0]) == std::string::npos) fail("a gallery case a..i", at);
            const auto g = gallery_shift(id[0]);
            if (!g.is_edge_form()) fail("a gallery case with an edge presentation", at);
            return g.clauses();
        }
        expect("[");
        std::vector<EdgeClause> cs;
        SymbolSet named;
        if (peek() != ']') {
            do {
                EdgeClause c;
                if (accept("rest")) {
                    c.source = a.letters() - named;
                } else {
                    c.source = letters();
                }
                named = named | c.source;
                expect("->");
                expect("abs");
                c.absolute = symbol_set();
                expect("rel");
                c.relative = symbol_set();
                if (accept("block")) {
                    c.block = integer();
                    expect("base");
                    c.block_base = integer();
                }
                cs.push_back(std::move(c));
            } while (accept(","));
        }
        expect("]");
        return cs;
    }

    std::shared_ptr<RawNode> raw_node() {
        auto n = std::make_shared<RawNode>();
        n->at = here();
        if (peek() != '{') {
            raw_leaf(*n);
            return n;
        }
        expect("{");
        do {
            const std::size_t key_at = here();
            if (accept("_")) {
                if (n->fallback) fail("at most one '_' branch", key_at);
                expect(":");
                n->fallback = raw_node();
            } else if (accept("empty")) {
                if (n->on_empty) fail("at most one 'empty' branch", key_at);
                expect(":");
                n->on_empty = raw_node();
            } else {
                auto ls = letters();
                expect(":");
                n->branches.emplace_back(ls, raw_node());
            }
        } while (accept(","));
        if (!n->fallback) fail("a default branch '_: ...'");
        expect("}");
        return n;
    }

    void raw_leaf(RawNode& n) {
        if (accept("in")) {
            n.set_leaf = true;
        } else if (accept("out")) {
            n.set_leaf = false;
        } else if (accept("undefined")) {
            n.code_leaf = LeafOutput::undefined();
        } else if (accept("empty")) {
            n.code_leaf = LeafOutput::empty();
        } else if (accept("id@")) {
            n.code_leaf = LeafOutput::map(LetterFn::identity, natural());
        } else if (accept("half@")) {
            n.code_leaf = LeafOutput::map(LetterFn::half_up, natural());
        } else if (accept("window@")) {
            const std::size_t at = here();
            const std::size_t m = natural();
            if (m == 0) fail("a positive window width", at);
            n.code_leaf = LeafOutput::window(m);
        } else if (at_integer()) {
            n.code_leaf = LeafOutput::constant(integer());
        } else {
            fail("a trie leaf (in, out, undefined, empty, a letter, id@k, half@k, window@m)");
        }
    }

    struct Kinds {
        std::optional<std::size_t> set, code;
    };

    void leaf_kinds(const RawNode& n, Kinds& k) {
        if (n.set_leaf && !k.set) k.set = n.at;
        if (n.code_leaf && !k.code) k.code = n.at;
        for (const auto& b : n.branches) leaf_kinds(*b.second, k);
        if (n.on_empty) leaf_kinds(*n.on_empty, k);
        if (n.fallback) leaf_kinds(*n.fallback, k);
    }

    template <class Leaf>
    typename RuleTrie<Leaf>::Ptr convert(const RawNode& n) {
        using T = RuleTrie<Leaf>;
        if constexpr (std::is_same_v<Leaf, bool>) {
            if (n.set_leaf) return T::leaf(*n.set_leaf);
        } else {
            if (n.code_leaf) return T::leaf(*n.code_leaf);
        }
        std::vector<typename T::Branch> bs;
        for (const auto& [ls, c] : n.branches) bs.push_back({ls, convert<Leaf>(*c)});
        try {
            return T::node(std::move(bs), convert<Leaf>(*n.fallback),
                           n.on_empty ? convert<Leaf>(*n.on_empty) : nullptr);
        } catch (const Error& e) {
            fail(std::string("disjoint branch letters (") + e.what() + ")", n.at);
        }
    }

    // The leaf kind decides between a set trie and a code trie; mixing is an error.
    Value trie() {
        auto raw = raw_node();
        Kinds k;
        leaf_kinds(*raw, k);
        if (k.set && k.code) fail("leaves of one kind (in/out or code outputs)", std::max(*k.set, *k.code));
        if (k.set) return SetTrie(convert<bool>(*raw));
        return CodeTrie(convert<LeafOutput>(*raw));
    }

    CodeTrie code_trie() {
        const std::size_t at = here();
        Value v = trie();
        if (auto* t = std::get_if<CodeTrie>(&v)) return *t;
        fail("a trie with code outputs", at);
    }

    SlidingBlockCode code() {
        expect("code");
        expect("{");
        expect("domain");
        expect("=");
        auto dom = shift();
        expect(";");
        expect("out-alphabet");
        expect("=");
        auto out = alphabet();
        expect(";");
        expect("rule");
        expect("=");
        auto t = code_trie();
        expect("}");
        return SlidingBlockCode(dom, out, t);
    }

    Value value() {
        const char c = peek();
        if (c == '[') return point_like();
        if (c == '{') return trie();
        if (c == 'Z') return cylinder();
        if (s_.compare(pos_, 5, "shift") == 0) return shift();
        if (s_.compare(pos_, 4, "code") == 0) return code();
        if (c == 'n' || c == 'i' || c == 'f') return alphabet();
        fail("a literal (point, cylinder, alphabet, shift, trie or code)");
    }

    Document document() {
        Document d;
        while (!at_end()) {
            Item it{identifier(), Point{}};
            expect("=");
            it.value = value();
            if (auto* code = std::get_if<SlidingBlockCode>(&it.value))
                it.value = SlidingBlockCode(code->domain(), code->out_alphabet(), code->rule(), it.name);
            skip(false);
            if (pos_ < s_.size() && s_[pos_] != '\n') fail("end of line", pos_);
            d.items.push_back(std::move(it));
        }
        return d;
    }

    void finish() {
        if (!at_end()) fail("end of input");
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

Document parse(const std::string& text) { return Parser(text).document(); }

Value parse_value(const std::string& text) {
    Parser p(text);
    Value v = p.value();
    p.finish();
    return v;
}

Point parse_point(const std::string& text) {
    Value v = parse_value(text);
    if (auto* p = std::get_if<Point>(&v)) return *p;
    throw ParseError(1, 1, "a point literal");
}

BlockPoint parse_block_point(const std::string& text) {
    Value v = parse_value(text);
    if (auto* p = std::get_if<BlockPoint>(&v)) return *p;
    if (auto* p = std::get_if<Point>(&v); p && p->is_empty()) return {};
    throw ParseError(1, 1, "a block point literal");
}

}  // namespace cshift
