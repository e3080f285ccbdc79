#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "twolc/blab.hpp"
#include "twolc/cf_core.hpp"
#include "twolc/equivalence.hpp"
#include "twolc/exclusion_search.hpp"
#include "twolc/hurwitz.hpp"

namespace py = pybind11;
using namespace twolc;

namespace {

py::int_ to_py(const Integer& n) {
    return py::reinterpret_steal<py::int_>(PyLong_FromString(n.get_str().c_str(), nullptr, 10));
}

Integer from_py(const py::int_& n) { return Integer(py::str(n).cast<std::string>()); }

py::list to_py(const Digits& d) {
    py::list out;
    for (const auto& x : d) out.append(to_py(x));
    return out;
}

/// Strings starting with '[' are CF literals, others are surds.
ContinuedFraction value_of(const py::object& x) {
    if (py::isinstance<ContinuedFraction>(x)) return x.cast<ContinuedFraction>();
    if (py::isinstance<QuadraticSurd>(x)) return expand_surd(x.cast<QuadraticSurd>());
    const auto text = x.cast<std::string>();
    const auto first = text.find_first_not_of(" \t");
    if (first != std::string::npos && text[first] == '[') return ContinuedFraction::parse(text);
    return expand_surd(QuadraticSurd::parse(text));
}

QuadraticSurd surd_of(const py::object& x) {
    if (py::isinstance<QuadraticSurd>(x)) return x.cast<QuadraticSurd>();
    if (py::isinstance<ContinuedFraction>(x)) return surd_of_periodic_cf(x.cast<ContinuedFraction>());
    const auto text = x.cast<std::string>();
    const auto first = text.find_first_not_of(" \t");
    if (first != std::string::npos && text[first] == '[') return surd_of_periodic_cf(ContinuedFraction::parse(text));
    return QuadraticSurd::parse(text);
}

py::object json_loads(const std::string& s) { return py::module_::import("json").attr("loads")(s); }

}  // namespace

PYBIND11_MODULE(_twolc, m) {
    m.doc() = "Continued fractions under multiplication by 2";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<WitnessSearchExhausted>(m, "WitnessSearchExhausted", PyExc_RuntimeError);

    py::class_<ContinuedFraction>(m, "ContinuedFraction")
        .def_static("parse", [](const std::string& s) { return ContinuedFraction::parse(s); })
        .def_static(
            "periodic",
            [](const py::int_& a0, const std::vector<py::int_>& pre, const std::vector<py::int_>& per) {
                Digits p, q;
                for (const auto& x : pre) p.push_back(from_py(x));
                for (const auto& x : per) q.push_back(from_py(x));
                return ContinuedFraction::periodic(from_py(a0), p, q);
            },
            py::arg("a0"), py::arg("preperiod"), py::arg("period"))
        .def_property_readonly("a0", [](const ContinuedFraction& c) { return to_py(c.a0()); })
        .def_property_readonly("preperiod", [](const ContinuedFraction& c) { return to_py(c.preperiod()); })
        .def_property_readonly("period", [](const ContinuedFraction& c) { return to_py(c.period()); })
        .def_property_readonly("is_periodic", &ContinuedFraction::is_periodic)
        .def("take", [](const ContinuedFraction& c, std::size_t n) { return to_py(c.take(n)); })
        .def("__eq__", [](const ContinuedFraction& a, const ContinuedFraction& b) { return a == b; })
        .def("__str__", &ContinuedFraction::str)
        .def("__repr__", [](const ContinuedFraction& c) { return "ContinuedFraction('" + c.str() + "')"; });

    py::class_<QuadraticSurd>(m, "QuadraticSurd")
        .def_static("parse", [](const std::string& s) { return QuadraticSurd::parse(s); })
        .def_property_readonly("P", [](const QuadraticSurd& s) { return to_py(s.P()); })
        .def_property_readonly("D", [](const QuadraticSurd& s) { return to_py(s.D()); })
        .def_property_readonly("Q", [](const QuadraticSurd& s) { return to_py(s.Q()); })
        .def("__float__", &QuadraticSurd::to_double)
        .def("__eq__", [](const QuadraticSurd& a, const QuadraticSurd& b) { return a == b; })
        .def("__str__", &QuadraticSurd::str)
        .def("__repr__", [](const QuadraticSurd& s) { return "QuadraticSurd('" + s.str() + "')"; });

    m.def("expand", [](const py::object& x) { return expand_surd(surd_of(x)); }, py::arg("surd"));
    m.def("surd", &surd_of, py::arg("value"));
    m.def("double", [](const py::object& x) { return double_cf(value_of(x)); }, py::arg("value"));
    m.def("halve", [](const py::object& x) { return halve_cf(value_of(x)); }, py::arg("value"));
    m.def("halve_plus1", [](const py::object& x) { return halve_plus1_cf(value_of(x)); }, py::arg("value"));

    m.def("class_key", [](const py::object& x) { return to_py(class_key(value_of(x)).word); }, py::arg("value"));
    m.def("equivalent", [](const py::object& a, const py::object& b) { return equivalent(surd_of(a), surd_of(b)); });
    m.def("self_similar", [](const py::object& x) { return self_similar_check(surd_of(x)); }, py::arg("value"));
    m.def(
        "stats",
        [](const py::object& x) {
            const auto s = stats(value_of(x));
            return py::make_tuple(to_py(s.M), to_py(s.B));
        },
        py::arg("value"), "(M, B) of an eventually periodic value");

    m.def(
        "search",
        [](std::uint32_t C, std::size_t max_depth, unsigned k_cap, unsigned jobs) {
            SearchOptions o;
            o.max_depth = max_depth;
            o.k_cap = k_cap;
            o.jobs = jobs;
            std::string out;
            {
                py::gil_scoped_release release;
                out = run_search(C, o).json();
            }
            return json_loads(out);
        },
        py::arg("C"), py::arg("max_depth") = 200, py::arg("k_cap") = 256, py::arg("jobs") = 1);

    m.def(
        "witness",
        [](const py::object& x, const py::object& threshold, unsigned k_cap) {
            Rational t(1, 15);
            if (!threshold.is_none()) {
                const auto frac = py::module_::import("fractions").attr("Fraction")(threshold);
                t = Rational(from_py(frac.attr("numerator")), from_py(frac.attr("denominator")));
            }
            const QWitness w = witness_q(surd_of(x), t, k_cap);
            py::dict d;
            d["k"] = w.k;
            d["n"] = w.n;
            d["digit"] = to_py(w.digit);
            d["q"] = to_py(w.q);
            d["value"] = w.value;
            d["bound"] = py::module_::import("fractions").attr("Fraction")(to_py(w.bound.num()), to_py(w.bound.den()));
            return d;
        },
        py::arg("value"), py::arg("threshold") = py::none(),
        py::arg("k_cap") = 200);

    m.def(
        "chain",
        [](const py::int_& mm, std::size_t K) {
            const ChainResult r = build_chain(family_member(from_py(mm)), K);
            py::dict d;
            d["beta"] = r.beta;
            d["verified"] = r.verified();
            py::list keys;
            for (const auto& k : r.checks) keys.append(to_py(k.word));
            d["checks"] = keys;
            return d;
        },
        py::arg("m"), py::arg("K"));

    m.def(
        "scan",
        [](std::int64_t d_min, std::int64_t d_max, std::int64_t q_max, unsigned jobs) {
            ScanOptions o{d_min, d_max, q_max, jobs};
            std::vector<ScanHit> hits;
            {
                py::gil_scoped_release release;
                hits = scan_self_similar(o);
            }
            py::list out;
            for (const auto& h : hits) {
                py::dict d;
                d["D"] = h.D;
                d["Q"] = h.Q;
                d["P"] = h.P;
                d["class_key"] = to_py(h.key.word);
                out.append(d);
            }
            return out;
        },
        py::arg("d_min") = 2, py::arg("d_max") = 1000, py::arg("q_max") = 50, py::arg("jobs") = 1);

    m.def(
        "falsify",
        [](unsigned C, std::size_t period_max, std::size_t preperiod_max, unsigned jobs) {
            std::string out;
            {
                py::gil_scoped_release release;
                out = falsify_bbound(C, period_max, preperiod_max, jobs).json();
            }
            return json_loads(out);
        },
        py::arg("C"), py::arg("period_max") = 8, py::arg("preperiod_max") = 2, py::arg("jobs") = 1);

    m.def(
        "verify_b2",
        [](std::size_t period_max, std::size_t preperiod_max, unsigned jobs) {
            B2Report r;
            {
                py::gil_scoped_release release;
                r = b2_exhaustive(period_max, preperiod_max, jobs);
            }
            py::dict d;
            d["checked"] = r.checked;
            d["shape2"] = r.shape2;
            d["shape21"] = r.shape21;
            d["exceptions"] = r.exceptions.size();
            d["ok"] = r.ok();
            return d;
        },
        py::arg("period_max") = 12, py::arg("preperiod_max") = 6, py::arg("jobs") = 1);
}
