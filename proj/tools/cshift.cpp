#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cshift/chl.hpp"
#include "cshift/gallery.hpp"
#include "cshift/hbc.hpp"
#include "cshift/text.hpp"

using namespace cshift;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kUnknown = 3 };

struct Options {
    std::size_t budget = 200;
    std::uint64_t seed = 1;
    std::size_t m_max = 5;
    std::size_t depth = 8;
    std::string case_id;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::optional<char> gallery_name(const std::string& spec) {
    if (spec.rfind("gallery:", 0) != 0) return std::nullopt;
    const std::string id = spec.substr(8);
    if (id.size() != 1 || kGalleryIds.find(id[0]) == std::string::npos)
        throw PreconditionError("unknown gallery case '" + id + "', expected a..i");
    return id[0];
}

SlidingBlockCode load_code(const std::string& spec) {
    if (auto id = gallery_name(spec)) return gallery_code(*id);
    return parse(read_file(spec)).first<SlidingBlockCode>();
}

ShiftPresentation load_shift(const std::string& spec) {
    if (auto id = gallery_name(spec)) return gallery_shift(*id);
    const Document d = parse(read_file(spec));
    for (const auto& i : d.items) {
        if (auto* s = std::get_if<ShiftPresentation>(&i.value)) return *s;
        if (auto* c = std::get_if<SlidingBlockCode>(&i.value)) return c->domain();
    }
    throw PreconditionError("no shift in " + spec);
}

// A black-box subject: a code, a gallery map, or a gallery inverse.
struct Subject {
    PointMap map;
    ShiftPresentation shift;
    std::optional<PointMap> forward;  // pool points are images under this map
};

Subject load_subject(const std::string& spec) {
    std::string base = spec;
    bool inverse = false;
    if (base.size() > 8 && base.substr(base.size() - 8) == "-inverse") {
        inverse = true;
        base.resize(base.size() - 8);
    }
    if (auto id = gallery_name(base)) {
        GalleryCase c = build(*id);
        PointMap f = c.map ? *c.map : as_map(*c.code);
        if (!inverse) return {f, c.shift, std::nullopt};
        if (!c.inverse) throw PreconditionError("gallery case " + std::string(1, *id) + " has no inverse");
        return {*c.inverse, c.shift, f};
    }
    if (inverse) throw PreconditionError("only gallery subjects have an inverse");
    auto code = load_code(spec);
    return {as_map(code), code.domain(), std::nullopt};
}

std::string letters_text(const std::vector<Symbol>& v) {
    std::string out = "{";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out + "}";
}

// The certificate is itself a document: verdict and tables as comments,
// cylinders and witness points as named items.
int report_verdict(const ContinuityVerdict& v) {
    std::cout << "# verdict " << to_string(v.kind) << "\n";
    if (!v.reason.empty()) std::cout << "# " << v.reason << "\n";
    for (const auto& e : v.evidence) {
        const std::string label = e.label ? std::to_string(*e.label) : std::string("empty");
        std::cout << "# fiber of " << label << "\n";
        for (std::size_t i = 0; i < e.cylinders.size(); ++i)
            std::cout << "fiber_" << label << "_" << i + 1 << " = " << e.cylinders[i].to_string() << "\n";
    }
    if (v.fm)
        for (const auto& [m, f] : v.fm->sets) std::cout << "# F_" << m << " = " << letters_text(f) << "\n";
    if (v.witness) {
        const auto& w = *v.witness;
        std::cout << "# witness family: " << w.shape << "\n";
        std::cout << "limit = " << to_string(w.family.claimed_limit) << "\n";
        for (std::size_t n = 1; n <= 4; ++n)
            std::cout << "member" << n << " = " << to_string(w.family.generator(n)) << "\n";
        std::cout << "image_limit = " << to_string(w.images.claimed_limit) << "\n";
        std::cout << "# images leave this cylinder from index " << w.index << "\n";
        std::cout << "escaped = " << w.refuting.to_string() << "\n";
    }
    switch (v.kind) {
        case ContinuityVerdict::Kind::continuous: return kOk;
        case ContinuityVerdict::Kind::discontinuous: return kCheckFailed;
        case ContinuityVerdict::Kind::unknown: return kUnknown;
    }
    return kUnknown;
}

std::string yes(bool b) { return b ? "yes" : "no"; }

int validate_code(const SlidingBlockCode& c, const Options& o) {
    const CodeReport r = validate(c, o.budget, o.seed);
    std::cout << "prefix_free = " << yes(r.prefix_free) << "\n";
    std::cout << "total = " << yes(r.total) << "\n";
    std::cout << "suffix_closed = " << yes(r.upsilon_suffix_closed) << "\n";
    std::cout << "empty_fiber_invariant = " << yes(r.c_empty_invariant) << "\n";
    std::cout << "fibers_finitely_defined = " << yes(r.fibers_finitely_defined) << "\n";
    for (const auto& n : r.notes) std::cout << "# " << n << "\n";
    return r.ok() ? kOk : kCheckFailed;
}

int run_hbc(const ShiftPresentation& s, std::size_t m, const std::string& action, const std::string& point,
            const Options& o) {
    if (action == "encode" || action == "decode") {
        if (point.empty()) throw PreconditionError(action + " needs --point");
        if (action == "encode") {
            const Point x = parse_point(point);
            if (!s.contains(x)) throw DomainError(to_string(x) + " is not a point of the shift");
            std::cout << to_string(xi(m, x)) << "\n";
        } else {
            std::cout << to_string(xi_inverse(m, parse_block_point(point))) << "\n";
        }
        return kOk;
    }
    if (action == "present") {
        const HigherPresentation h = higher_presentation(s, m);
        std::cout << "base = " << print_shift(s) << "\n";
        std::cout << "m = " << m << "\n";
        std::cout << "# sample block letters: last letters of their followers, infinite extension property\n";
        std::size_t shown = 0;
        for (const auto& w : enumerate_words(s, m, 2)) {
            if (shown++ == 24) break;
            std::cout << to_string(w) << " -> " << h.follower_last({w}).to_string()
                      << (h.has_iep({w}) ? "" : " no-iep") << "\n";
        }
        return kOk;
    }
    const SupCorollary sup = check_hbc_corollary_sup(s, m, o.budget, o.seed);
    const RowFiniteCorollary row = check_hbc_corollary_rowfinite(s, m, o.budget, o.seed);
    std::cout << "finite_points_shorter_than_m = " << yes(sup.sup_len_lt_m) << "\n";
    std::cout << "long_points_have_no_finite_points = " << yes(sup.lambda_star_fin_trivial) << "\n";
    std::cout << "inverse_is_sliding_block = " << yes(sup.inverse_is_sbc) << "\n";
    std::cout << "row_finite = " << yes(row.row_finite) << "\n";
    std::cout << "injective = " << yes(row.injective) << "\n";
    if (row.collision)
        std::cout << "# " << to_string(row.collision->first) << " and " << to_string(row.collision->second)
                  << " share an image\n";
    const bool ok = sup.agree() && row.agree();
    std::cout << "agree = " << yes(ok) << "\n";
    return ok ? kOk : kCheckFailed;
}

// Two points agreeing on depth+1 coordinates whose images differ in the first.
int run_falsify(const Subject& sub, const Options& o) {
    for (Symbol extra : {4, 6}) {
        const std::size_t len = o.depth + (sub.forward ? 3 : 2);
        std::vector<Point> pool = point_pool(sub.shift, len, static_cast<Symbol>(o.depth) + extra, 4000);
        if (sub.forward)
            for (auto& x : pool) x = (*sub.forward)(x);
        if (auto w = falsify_sliding_block(sub.map, pool, o.depth)) {
            std::cout << "witness = depth " << w->depth << "\n";
            std::cout << "first = " << to_string(w->first) << "\n";
            std::cout << "second = " << to_string(w->second) << "\n";
            std::cout << "# images start " << to_string(w->image_first) << " and " << to_string(w->image_second)
                      << "\n";
            return kCheckFailed;
        }
    }
    std::cout << "# no witness at depth " << o.depth << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Shift spaces over countable alphabets and their sliding block codes"};
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    if (const char* env = std::getenv("CSHIFT_BUDGET")) {
        try {
            o.budget = std::stoul(env);
        } catch (const std::exception&) {
            std::cerr << "CSHIFT_BUDGET must be a positive integer\n";
            return kUsage;
        }
    }
    app.add_option("--budget", o.budget, "Sample budget (default from CSHIFT_BUDGET, else 200)");
    app.add_option("--seed", o.seed, "Seed for every randomized suite");
    app.add_option("--m-max", o.m_max, "Largest M for F_M tables");
    app.add_option("--depth", o.depth, "Falsifier depth");

    std::string code_spec, point_text, shift_spec, subject_spec, action;
    int theorem = 1;
    std::optional<Symbol> d;
    std::size_t m = 1;

    auto* eval = app.add_subcommand("eval", "Apply a code to a point");
    eval->add_option("--code", code_spec, "gallery:X or a file")->required();
    eval->add_option("--point", point_text, "Point literal such as [1|2,3]")->required();

    auto* validate = app.add_subcommand("validate", "Check that a rule is a well-formed sliding block code");
    validate->add_option("--code", code_spec)->required();

    auto* certify = app.add_subcommand("certify", "Certify continuity by the first or second theorem");
    certify->add_option("--theorem", theorem)->check(CLI::IsMember({1, 2}))->required();
    certify->add_option("--code", code_spec)->required();
    certify->add_option("--d", d, "Letter with Phi(empty) = d...d (second theorem)");

    auto* classify = app.add_subcommand("classify", "Classify a shift presentation");
    classify->add_option("--shift", shift_spec)->required();

    auto* hbc = app.add_subcommand("hbc", "Higher block codes");
    hbc->add_option("--m", m, "Block width")->required()->check(CLI::PositiveNumber);
    hbc->add_option("--shift", shift_spec)->required();
    hbc->add_option("action", action)->required()->check(CLI::IsMember({"encode", "decode", "present", "check-corollaries"}));
    hbc->add_option("--point", point_text, "Point (encode) or block point (decode)");

    auto* falsify = app.add_subcommand("falsify", "Search for two points refuting the sliding block property");
    falsify->add_option("--map", subject_spec, "gallery:X, gallery:X-inverse or a code file")->required();

    auto* gallery = app.add_subcommand("gallery", "The example gallery");
    auto* run = gallery->add_subcommand("run", "Evaluate every gallery expectation");
    gallery->require_subcommand(1);
    run->add_option("--case", o.case_id, "A single case a..i");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*eval) {
            const auto c = load_code(code_spec);
            std::cout << to_string(apply(c, parse_point(point_text))) << "\n";
            return kOk;
        }
        if (*validate) {
            return validate_code(load_code(code_spec), o);
        }
        if (*certify) {
            const auto c = load_code(code_spec);
            ContinuityVerdict v;
            try {
                if (theorem == 1) {
                    v = certify_T1(c);
                } else {
                    Symbol dd;
                    if (d) {
                        dd = *d;
                    } else {
                        const Letter l = first_coordinate(c, Point{});
                        if (!l) throw HypothesisNotMet("the empty sequence maps to the empty sequence, give --d");
                        dd = *l;
                    }
                    v = certify_T2(c, dd, o.m_max);
                }
            } catch (const HypothesisNotMet& e) {
                std::cout << "# verdict hypothesis_not_met\n# " << e.what() << "\n";
                return kCheckFailed;
            }
            return report_verdict(v);
        }
        if (*classify) {
            const auto s = load_shift(shift_spec);
            const auto k = s.classify();
            std::cout << "shift = " << print_shift(s) << "\n";
            std::cout << "sft = " << yes(k.is_sft) << "\n";
            std::cout << "m_step = " << (k.m_step ? std::to_string(*k.m_step) : std::string("none")) << "\n";
            std::cout << "row_finite = " << yes(k.row_finite) << "\n";
            std::cout << "column_finite = " << yes(k.column_finite) << "\n";
            return kOk;
        }
        if (*hbc) return run_hbc(load_shift(shift_spec), m, action, point_text, o);
        if (*falsify) return run_falsify(load_subject(subject_spec), o);
        if (*run) {
            RunBudget b;
            b.samples = o.budget;
            b.seed = o.seed;
            b.depth = o.depth;
            b.m_max = o.m_max;
            std::vector<ReportLine> lines;
            if (o.case_id.empty()) {
                lines = run_all(b);
            } else {
                if (o.case_id.size() != 1 || kGalleryIds.find(o.case_id[0]) == std::string::npos)
                    throw PreconditionError("unknown gallery case '" + o.case_id + "', expected a..i");
                lines = run_case(o.case_id[0], b);
            }
            bool ok = true;
            for (const auto& l : lines) {
                std::cout << to_string(l) << "\n";
                ok = ok && l.ok();
            }
            return ok ? kOk : kCheckFailed;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const FuelExhausted& e) {
        std::cerr << "fuel exhausted: " << e.what() << "\n";
        return kUnknown;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCheckFailed;
    }
    return kUsage;
}
