#include "cshift/core.hpp"

#include <sstream>

namespace cshift {

Alphabet Alphabet::finite(Symbol n) {
    if (n <= 0) throw PreconditionError("finite alphabet needs at least one letter");
    return Alphabet(Kind::finite, n);
}

SymbolSet Alphabet::letters() const {
    switch (kind_) {
        case Kind::finite: return SymbolSet::range(0, size_ - 1);
        case Kind::naturals: return SymbolSet::at_least(1);
        case Kind::integers: return SymbolSet::all();
    }
    return {};
}

std::string Alphabet::to_string() const {
    switch (kind_) {
        case Kind::finite: return "finite(" + std::to_string(size_) + ")";
        case Kind::naturals: return "naturals";
        case Kind::integers: return "integers";
    }
    return {};
}

namespace {

void put_word(std::ostream& os, const Word& w) {
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) os << ',';
        os << w[i];
    }
}

}  // namespace

std::string to_string(const Word& w) {
    std::ostringstream os;
    os << '[';
    put_word(os, w);
    os << ']';
    return os.str();
}

std::string to_string(const Letter& a) { return a ? std::to_string(*a) : std::string("empty"); }

std::string to_string(const Point& p) {
    std::ostringstream os;
    os << p;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Point& p) {
    os << '[';
    put_word(os, p.head());
    if (!p.is_finite()) {
        os << '|';
        put_word(os, p.period());
    }
    return os << ']';
}

}  // namespace cshift
