#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cshift/gallery.hpp"
#include "cshift/text.hpp"

namespace py = pybind11;
using namespace cshift;

namespace {

py::dict verdict_dict(const ContinuityVerdict& v) {
    py::dict d;
    d["kind"] = to_string(v.kind);
    d["reason"] = v.reason;
    py::dict fibers;
    for (const auto& e : v.evidence) {
        py::list cyls;
        for (const auto& c : e.cylinders) cyls.append(c.to_string());
        fibers[py::str(to_string(e.label))] = cyls;
    }
    d["fibers"] = fibers;
    if (v.fm) {
        py::dict fm;
        for (const auto& [m, f] : v.fm->sets) fm[py::int_(m)] = f;
        d["fm"] = fm;
    } else {
        d["fm"] = py::none();
    }
    if (v.witness) {
        py::dict w;
        w["shape"] = v.witness->shape;
        w["limit"] = v.witness->family.claimed_limit;
        w["image_limit"] = v.witness->images.claimed_limit;
        w["refuting"] = v.witness->refuting.to_string();
        w["index"] = v.witness->index;
        d["witness"] = w;
    } else {
        d["witness"] = py::none();
    }
    return d;
}

// Shifts and codes are given as text literals or gallery names ("gallery:h").
ShiftPresentation to_shift(const std::string& s) {
    if (s.rfind("gallery:", 0) == 0 && s.size() == 9) return gallery_shift(s[8]);
    return std::get<ShiftPresentation>(parse_value(s));
}

SlidingBlockCode to_code(const std::string& s) {
    if (s.rfind("gallery:", 0) == 0 && s.size() == 9) return gallery_code(s[8]);
    return std::get<SlidingBlockCode>(parse_value(s));
}

}  // namespace

PYBIND11_MODULE(_cshift, m) {
    m.doc() = "One-sided shifts over countable alphabets and their sliding block codes";

    static py::exception<Error> error(m, "Error");
    static py::exception<DomainError> domain_error(m, "DomainError", error.ptr());
    static py::exception<PreconditionError> precondition_error(m, "PreconditionError", error.ptr());
    static py::exception<ParseError> parse_error(m, "ParseError", error.ptr());
    static py::exception<HypothesisNotMet> hypothesis(m, "HypothesisNotMet", error.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ParseError& e) {
            parse_error(e.what());
        } catch (const HypothesisNotMet& e) {
            hypothesis(e.what());
        } catch (const DomainError& e) {
            domain_error(e.what());
        } catch (const PreconditionError& e) {
            precondition_error(e.what());
        } catch (const Error& e) {
            error(e.what());
        }
    });

    py::class_<Point>(m, "Point")
        .def(py::init<>())
        .def_static("finite", &Point::finite, py::arg("word"))
        .def_static("evp", &Point::evp, py::arg("head"), py::arg("period"))
        .def_static("parse", &parse_point)
        .def_property_readonly("head", &Point::head)
        .def_property_readonly("period", &Point::period)
        .def_property_readonly("length", &Point::length)
        .def("is_finite", &Point::is_finite)
        .def("at", &Point::at, py::arg("n"))
        .def("shift", py::overload_cast<std::size_t>(&Point::shift, py::const_), py::arg("n") = 1)
        .def("prefix", &Point::prefix, py::arg("k"))
        .def("__eq__", [](const Point& a, const Point& b) { return a == b; })
        .def("__hash__", [](const Point& p) { return py::hash(py::str(to_string(p))); })
        .def("__repr__", [](const Point& p) { return "Point(" + to_string(p) + ")"; })
        .def("__str__", [](const Point& p) { return to_string(p); });

    py::class_<SymbolSet>(m, "SymbolSet")
        .def("__contains__", &SymbolSet::contains)
        .def("is_finite", &SymbolSet::is_finite)
        .def("elements", &SymbolSet::elements)
        .def("__eq__", [](const SymbolSet& a, const SymbolSet& b) { return a == b; })
        .def("__repr__", &SymbolSet::to_string);

    py::class_<ShiftPresentation>(m, "Shift")
        .def(py::init(&to_shift), py::arg("text"))
        .def("in_language", &ShiftPresentation::in_language)
        .def("follower", &ShiftPresentation::follower)
        .def("predecessor", &ShiftPresentation::predecessor)
        .def("contains", &ShiftPresentation::contains)
        .def("letters", &ShiftPresentation::letters)
        .def("classify",
             [](const ShiftPresentation& s) {
                 const auto c = s.classify();
                 py::dict d;
                 d["is_sft"] = c.is_sft;
                 d["m_step"] = c.m_step;
                 d["row_finite"] = c.row_finite;
                 d["column_finite"] = c.column_finite;
                 return d;
             })
        .def("__repr__", &print_shift);

    py::class_<SlidingBlockCode>(m, "Code")
        .def(py::init(&to_code), py::arg("text"))
        .def_property_readonly("name", &SlidingBlockCode::name)
        .def_property_readonly("domain", &SlidingBlockCode::domain)
        .def("__call__", [](const SlidingBlockCode& c, const Point& p) { return apply(c, p); })
        .def("anticipation", [](const SlidingBlockCode& c) { return code_anticipation(c); })
        .def("validate",
             [](const SlidingBlockCode& c, std::size_t budget) {
                 const auto r = validate(c, budget);
                 py::dict d;
                 d["prefix_free"] = r.prefix_free;
                 d["total"] = r.total;
                 d["upsilon_suffix_closed"] = r.upsilon_suffix_closed;
                 d["c_empty_invariant"] = r.c_empty_invariant;
                 d["fibers_finitely_defined"] = r.fibers_finitely_defined;
                 d["ok"] = r.ok();
                 return d;
             },
             py::arg("budget") = 200)
        .def("__repr__", [](const SlidingBlockCode& c) {
            try {
                return print_code(c);
            } catch (const PreconditionError&) {
                return "code " + c.name();
            }
        });

    m.def("certify_t1", [](const SlidingBlockCode& c) { return verdict_dict(certify_T1(c)); });
    m.def("certify_t2", [](const SlidingBlockCode& c, Symbol d, std::size_t m_max) {
        return verdict_dict(certify_T2(c, d, m_max));
    }, py::arg("code"), py::arg("d"), py::arg("m_max") = 5);

    m.def("xi", [](std::size_t mm, const Point& p) { return to_string(xi(mm, p)); }, py::arg("m"), py::arg("point"),
          "Higher block image, in block point text form.");
    m.def("xi_inverse", [](std::size_t mm, const std::string& q) { return xi_inverse(mm, parse_block_point(q)); },
          py::arg("m"), py::arg("blocks"));

    m.def("roundtrip", [](const std::string& text) { return print(parse(text)); },
          "Parses a document and prints it canonically.");
    m.def("gallery_report", [](std::size_t samples, std::uint64_t seed) {
        RunBudget b;
        b.samples = samples;
        b.seed = seed;
        std::vector<std::string> out;
        for (const auto& r : run_all(b)) out.push_back(to_string(r));
        return out;
    }, py::arg("samples") = 200, py::arg("seed") = 1);
}
