#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cshift/chl.hpp"
#include "cshift/hbc.hpp"

namespace cshift {

/// Parameters left open by the examples. Block letters of b) and e) are
/// the pairs {2i-1, 2i}.
struct GalleryParams {
    Symbol k = 2;
    Symbol d = 3;
};

struct Expectation {
    std::string property;
    std::string expected;  // "pass" or a declared "unknown"
    std::string anchor;
};

struct GalleryCase {
    char id;
    ShiftPresentation shift;
    std::optional<SlidingBlockCode> code;
    std::optional<PointMap> map;      // black-box subject when there is no code
    std::optional<PointMap> inverse;  // inverse on the image, when one is claimed
    std::vector<Expectation> expectations;
    std::vector<std::pair<std::string, std::string>> metadata;
};

inline const std::string kGalleryIds = "abcdefghi";

ShiftPresentation gallery_shift(char id, const GalleryParams& p = {});
/// Throws PreconditionError for b), whose map is not a code.
SlidingBlockCode gallery_code(char id, const GalleryParams& p = {});
GalleryCase build(char id, const GalleryParams& p = {});

/// The maximum of the remaining coordinates, the empty letter above all.
Point max_map(const Point& x);
/// Inverses of f), g) and i) on the image, from their defining formulas.
Point inverse_f(const Point& y);
Point inverse_g(const Point& y);
Point inverse_i(const Point& y, const GalleryParams& p = {});
/// Prepends the letter 1: a map that does not commute with the shift.
Point prepend_one(const Point& x);

struct RunBudget {
    std::size_t samples = 200;
    std::uint64_t seed = 1;
    std::size_t depth = 8;
    std::size_t m_max = 5;
};

struct ReportLine {
    char id;
    std::string property;
    std::string verdict;  // pass | fail | unknown
    std::string expected;
    std::string anchor;
    std::string detail;

    bool ok() const { return verdict == expected; }
};

std::vector<ReportLine> run_case(char id, const RunBudget& budget = {}, const GalleryParams& p = {});
std::vector<ReportLine> run_all(const RunBudget& budget = {}, const GalleryParams& p = {});
std::string to_string(const ReportLine& r);

}  // namespace cshift
