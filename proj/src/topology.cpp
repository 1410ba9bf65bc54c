#include "cshift/topology.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace cshift {

Cylinder::Cylinder(Word base, std::vector<Symbol> excluded)
    : base_(std::move(base)), excluded_(std::move(excluded)) {
    std::sort(excluded_.begin(), excluded_.end());
    excluded_.erase(std::unique(excluded_.begin(), excluded_.end()), excluded_.end());
}

bool Cylinder::contains(const Point& p) const {
    for (std::size_t i = 0; i < base_.size(); ++i)
        if (p.at(i + 1) != Letter(base_[i])) return false;
    auto next = p.at(base_.size() + 1);
    if (!next) return true;
    return !std::binary_search(excluded_.begin(), excluded_.end(), *next);
}

std::string Cylinder::to_string() const {
    std::ostringstream os;
    os << "Z(";
    if (!base_.empty()) os << cshift::to_string(base_);
    if (!excluded_.empty()) {
        os << (base_.empty() ? "; {" : " ; {");
        for (std::size_t i = 0; i < excluded_.size(); ++i) os << (i ? "," : "") << excluded_[i];
        os << '}';
    }
    os << ')';
    return os.str();
}

std::vector<Cylinder> basic_nbhds(const Point& p, std::size_t max_len, std::size_t max_excl,
                                  const SymbolSet& letters) {
    std::vector<Cylinder> out;
    auto len = p.length();
    std::size_t prefixes = len ? std::min(*len, max_len) : max_len;
    for (std::size_t k = 1; k <= prefixes; ++k) out.emplace_back(p.prefix(k));
    if (len) {
        auto first = letters.enumerate(max_excl);
        std::vector<Symbol> chain;
        for (Symbol a : first) {
            out.emplace_back(p.head(), std::vector<Symbol>{a});
            chain.push_back(a);
            if (chain.size() > 1) out.emplace_back(p.head(), chain);
        }
    }
    return out;
}

ConvergenceVerdict check_convergence(const PointFamily& family, std::size_t nbhd_budget,
                                     std::size_t index_budget, const SymbolSet& letters) {
    if (nbhd_budget == 0 || index_budget == 0)
        throw PreconditionError("check_convergence: budgets must be positive");
    std::vector<Point> members;
    members.reserve(index_budget);
    for (std::size_t i = 1; i <= index_budget; ++i) {
        try {
            members.push_back(family.generator(i));
        } catch (const std::exception& e) {
            throw Error("point family failed at index " + std::to_string(i) + ": " + e.what());
        }
    }

    auto cylinders = basic_nbhds(family.claimed_limit, nbhd_budget, nbhd_budget, letters);
    const std::size_t tail_start = index_budget / 2;  // 0-based start of the upper half
    if (auto len = family.claimed_limit.length()) {
        // A letter recurring after the limit's end is a fixed escape route.
        std::map<Symbol, std::size_t> counts;
        for (std::size_t i = tail_start; i < members.size(); ++i)
            if (auto a = members[i].at(*len + 1)) ++counts[*a];
        for (const auto& [a, n] : counts)
            if (n >= 2) cylinders.emplace_back(family.claimed_limit.head(), std::vector<Symbol>{a});
    }

    for (const auto& c : cylinders) {
        if (!c.contains(family.claimed_limit)) continue;
        if (c.contains(members.back())) continue;
        std::size_t misses = 0, first = 0;
        for (std::size_t i = tail_start; i < members.size(); ++i) {
            if (!c.contains(members[i])) {
                if (!misses) first = i + 1;
                ++misses;
            }
        }
        const std::size_t tail = members.size() - tail_start;
        if (2 * misses >= tail) return {true, c, first};
    }
    return {};
}

}  // namespace cshift
