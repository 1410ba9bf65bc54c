#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cshift/sbc.hpp"

namespace cshift {

/// Raised when a code does not meet a continuity theorem's hypotheses.
struct HypothesisNotMet : Error {
    using Error::Error;
};

/// F_M for each M: starting outside F_M keeps output coordinates 1..M at d.
struct FMTable {
    std::map<std::size_t, std::vector<Symbol>> sets;
};

/// A convergent family of domain points whose images escape a
/// neighbourhood of the image of the limit.
struct DiscontinuityWitness {
    PointFamily family;
    PointFamily images;
    Cylinder refuting;
    std::size_t index = 0;
    std::string shape;
};

struct FiberEvidence {
    Letter label;
    std::vector<Cylinder> cylinders;
};

struct ContinuityVerdict {
    enum class Kind { continuous, discontinuous, unknown };

    Kind kind = Kind::unknown;
    std::vector<FiberEvidence> evidence;
    std::optional<FMTable> fm;
    std::optional<DiscontinuityWitness> witness;
    std::string reason;
};

std::string to_string(ContinuityVerdict::Kind k);

struct ChlBudget {
    std::size_t families = 60;
    std::size_t nbhds = 6;
    std::size_t indices = 16;
    std::size_t class_budget = 200000;
};

ContinuityVerdict certify_T1(const SlidingBlockCode& c, const ChlBudget& budget = {});
ContinuityVerdict certify_T2(const SlidingBlockCode& c, Symbol d, std::size_t m_max,
                             const ChlBudget& budget = {});

/// Class-abstraction search for F_M. Nothing when infinitely many first
/// letters break the condition or the search exceeds `class_budget` nodes.
std::optional<std::vector<Symbol>> find_FM(const SlidingBlockCode& c, Symbol d, std::size_t m,
                                           std::size_t class_budget = 200000);
/// Independent check of a candidate F_M: applies the code to completions of
/// words over explicit letters and two representatives per class.
bool verify_FM_brute(const SlidingBlockCode& c, Symbol d, std::size_t m, const std::vector<Symbol>& f);

/// Continuity of the shift map on S.
bool sigma_continuity(const ShiftPresentation& s);

/// The shift map on S as a 1-block code reading coordinate 2.
SlidingBlockCode shift_code(const ShiftPresentation& s);
SlidingBlockCode identity_code(const ShiftPresentation& s);

/// Families of points of S converging (by construction) to points of S:
/// letters escaping into the empty sequence, into finite points, and
/// prefixes of eventually periodic points completed differently.
std::vector<PointFamily> family_catalog(const ShiftPresentation& s, std::size_t count, std::uint64_t seed = 1);

/// First family of the catalog whose images refute convergence to the image
/// of its limit.
std::optional<DiscontinuityWitness> find_discontinuity(const PointMap& f, const ShiftPresentation& s,
                                                       const ChlBudget& budget = {});

struct EmpiricalVerdict {
    bool consistent = true;
    std::size_t families_checked = 0;
    std::optional<DiscontinuityWitness> refutation;
};

/// Pushes families consistent with their limits through f and rechecks.
EmpiricalVerdict empirical_continuity(const PointMap& f, const std::vector<PointFamily>& families,
                                      std::size_t nbhd_budget = 6, std::size_t index_budget = 16);

}  // namespace cshift
