#include "cli.hpp"

#include "parazone/configs.hpp"
#include "parazone/error.hpp"
#include "parazone/geom.hpp"
#include "parazone/hs.hpp"
#include "parazone/invariants.hpp"
#include "parazone/patterns.hpp"
#include "parazone/realizer.hpp"
#include "parazone/seq_io.hpp"
#include "parazone/zone.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace parazone;

namespace {

// Rationals cross the boundary as fractions.Fraction; ints and "p/q"
// strings are accepted on the way in.
Rat to_rat(const py::handle& h) {
    if (py::isinstance<py::str>(h)) return parse_rat(h.cast<std::string>());
    if (py::hasattr(h, "numerator") && py::hasattr(h, "denominator")) {
        const auto num = py::str(h.attr("numerator")).cast<std::string>();
        const auto den = py::str(h.attr("denominator")).cast<std::string>();
        return parse_rat(num + "/" + den);
    }
    throw py::type_error("expected int, Fraction or rational string");
}

py::object to_fraction(const Rat& r) {
    const py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(to_string(r));
}

py::object to_py(const nlohmann::json& j) {
    const py::object loads = py::module_::import("json").attr("loads");
    return loads(j.dump());
}

nlohmann::json from_py(const py::handle& obj) {
    const py::object dumps = py::module_::import("json").attr("dumps");
    return nlohmann::json::parse(dumps(obj).cast<std::string>());
}

std::vector<Chord> to_chords(const py::iterable& pairs) {
    std::vector<Chord> out;
    for (const auto& pr : pairs) {
        auto t = py::reinterpret_borrow<py::sequence>(pr);
        if (t.size() != 2) throw py::value_error("each chord is a pair of x-values");
        out.push_back(chord_between(to_rat(t[0]), to_rat(t[1])));
    }
    return out;
}

Seq seq_arg(const py::handle& h) {
    if (py::isinstance<py::str>(h)) return parse_seq(h.cast<std::string>()).seq;
    return h.cast<Seq>();
}

py::object witness(const std::optional<PatternWitness>& w) {
    if (!w) return py::none();
    py::dict d;
    d["mapping"] = w->mapping;
    d["positions"] = w->positions;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Davenport-Schinzel sequences, parabola zones and segment configurations";

    // Translators run newest first, so the subclasses win.
    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<InvalidInput>(m, "InvalidInput", base.ptr());
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());

    py::class_<Seq>(m, "Seq")
        .def(py::init([](std::vector<Symbol> tokens, std::vector<std::pair<std::size_t, std::size_t>> blocks) {
                 std::vector<Block> bs;
                 for (auto [s, l] : blocks) bs.push_back({s, l});
                 return make_seq(std::move(tokens), std::move(bs));
             }),
             py::arg("tokens"), py::arg("blocks") = std::vector<std::pair<std::size_t, std::size_t>>{})
        .def_readonly("tokens", &Seq::tokens)
        .def_property_readonly("blocks",
                               [](const Seq& s) {
                                   std::vector<std::pair<std::size_t, std::size_t>> out;
                                   for (const auto& b : s.blocks) out.emplace_back(b.start, b.length);
                                   return out;
                               })
        .def("__len__", &Seq::size)
        .def("__eq__", [](const Seq& a, const Seq& b) { return a == b; })
        .def("__str__", [](const Seq& s) { return format_seq(s); })
        .def("__repr__", [](const Seq& s) { return "Seq('" + format_seq(s) + "')"; })
        .def("to_json", [](const Seq& s) { return to_py(seq_to_json(s)); });

    m.def("parse_seq", [](const std::string& text) { return parse_seq(text).seq; }, py::arg("text"));
    m.def("seq_from_json", [](const py::object& obj) { return parse_seq_json(from_py(obj)).seq; });
    m.def("canonicalize", [](const Seq& s) { return canonicalize(s); });
    m.def("reversed", [](const py::object& s) { return reversed(seq_arg(s)); });
    m.def("shuffle", [](const Seq& a, const Seq& b) { return shuffle(a, b); });
    m.def("endpoint_seq", [](const py::object& s) {
        if (py::isinstance<py::str>(s)) {
            const ParsedSeq p = parse_seq(s.cast<std::string>());
            return format_eseq(endpoint_seq(p.seq), &p.labels);
        }
        return format_eseq(endpoint_seq(s.cast<Seq>()));
    },
          "E(u) in text form");

    m.def("hart_sharir", [](std::uint64_t k, std::uint64_t mm, std::uint64_t b) { return hart_sharir({k, mm}, b); },
          py::arg("k"), py::arg("m"), py::arg("budget") = kDefaultBudget);
    m.def("hs_size", [](std::uint64_t k, std::uint64_t mm) {
        const auto e = hs_size({k, mm});
        py::dict d;
        d["length"] = e.length;
        d["block_count"] = e.block_count;
        d["block_length"] = e.block_length;
        d["distinct_symbols"] = e.distinct_symbols;
        d["exact"] = e.exact;
        d["feasible"] = e.feasible;
        return d;
    });
    m.def("hs_invariants", [](const Seq& s) {
        py::dict d;
        for (const auto& c : hs_invariants(s)) d[py::str(c.name)] = c.skipped ? py::object(py::none()) : py::bool_(c.ok);
        return d;
    }, "Check name -> True/False, or None when skipped");

    m.def("is_ds_order3", [](const py::object& s) { return is_ds_order3(seq_arg(s).tokens); });
    m.def("is_k_sparse", [](const py::object& s, std::size_t k) { return is_k_sparse(seq_arg(s).tokens, k); });
    m.def("has_alternation", [](const py::object& s, Symbol a, Symbol b, std::size_t len) {
        return has_alternation(seq_arg(s).tokens, a, b, len);
    });
    m.def("find_abcaccbc", [](const py::object& s) { return witness(find_abcaccbc(seq_arg(s).tokens)); });
    m.def("contains_isomorphic", [](const py::object& host, const py::object& pattern, std::uint64_t steps) {
        return witness(contains_isomorphic(seq_arg(host).tokens, seq_arg(pattern).tokens, steps));
    }, py::arg("host"), py::arg("pattern"), py::arg("max_steps") = kDefaultSearchSteps);
    m.def("structurally_contains", [](const Seq& host, const Seq& pattern, std::vector<std::size_t> ranks) {
        return witness(structurally_contains(host, pattern, ranks));
    }, py::arg("host"), py::arg("pattern"), py::arg("ranks") = std::vector<std::size_t>{});
    m.def("max_ds_length", [](const std::vector<py::object>& forbidden, std::size_t n) {
        std::vector<Seq> pats;
        for (const auto& f : forbidden) pats.push_back(seq_arg(f));
        const ExResult r = max_ds_length(pats, n);
        return py::make_tuple(r.max_length, r.witness);
    }, "(max_length, witness)");

    m.def("parabola_ratio", [](py::object a, py::object b, py::object c, py::object d) {
        const RatioQuad q = parabola_ratio(to_rat(a), to_rat(b), to_rat(c), to_rat(d));
        return py::make_tuple(to_fraction(q.p), to_fraction(q.q), to_fraction(q.r), to_fraction(q.s));
    }, "(p, q, r, s)");
    m.def("intersection_order_class",
          [](const py::iterable& chords) { return std::string(to_string(intersection_order_class(to_chords(chords)))); });
    m.def("is_wide", [](const py::iterable& chords) { return is_wide(to_chords(chords)); });
    m.def("ratio_profile", [](const py::iterable& chords) {
        const RatioProfile p = ratio_profile(to_chords(chords));
        py::dict d;
        d["alpha1"] = to_fraction(p.alpha1);
        d["alpha2"] = to_fraction(p.alpha2);
        d["gamma"] = to_fraction(p.gamma);
        d["beta1"] = to_fraction(p.beta1);
        d["beta2"] = to_fraction(p.beta2);
        d["claims"] = py::make_tuple(p.claim1, p.claim2, p.claim3);
        return d;
    });
    m.def("map_circle_to_parabola", [](py::object x, py::object y) {
        const Point q = map_circle_to_parabola({to_rat(x), to_rat(y)});
        return py::make_tuple(to_fraction(q.x), to_fraction(q.y));
    });

    py::class_<Config>(m, "Config")
        .def_property_readonly("kind", [](const Config& c) { return std::string(to_string(c.kind)); })
        .def_readonly("labels", &Config::labels)
        .def_property_readonly("segment_count", &Config::segment_count)
        .def_readonly("meta", &Config::meta)
        .def_property_readonly("endpoints", [](const Config& c) { return format_eseq(c.eseq, &c.labels); })
        .def("to_json", [](const Config& c) { return to_py(config_to_json(c)); });
    m.def("build_config", [](const std::string& kind, std::uint64_t n, std::uint64_t mm, std::uint64_t j, bool wide) {
        return build_config(parse_config_kind(kind), ConfigParams{n, mm, j, wide});
    }, py::arg("kind"), py::arg("n") = 1, py::arg("m") = 1, py::arg("j") = 3, py::arg("wide") = false);
    m.def("config_from_json", [](const py::object& obj) { return config_from_json(from_py(obj)); });
    m.def("forcing_certificate", [](const py::object& u, const Config& cfg) {
        const ForcingCertificate fc = forcing_certificate(seq_arg(u), cfg);
        return py::make_tuple(fc.valid, fc.failure);
    }, "(valid, failure)");
    m.def("search", [](const Config& cfg, std::uint64_t budget, std::uint64_t seed, std::vector<std::string> strategies,
                       unsigned jobs) {
        SearchOptions o;
        o.budget = budget;
        o.seed = seed;
        o.jobs = jobs;
        if (!strategies.empty()) {
            o.strategies.clear();
            for (const auto& s : strategies) o.strategies.push_back(parse_strategy(s));
        }
        SearchReport r;
        {
            py::gil_scoped_release release;
            r = search(cfg, o);
        }
        return to_py(r.to_json(cfg));
    }, py::arg("config"), py::arg("budget") = 10'000, py::arg("seed") = 0,
          py::arg("strategies") = std::vector<std::string>{}, py::arg("jobs") = 1);

    m.def("general_position_issues", [](const py::iterable& chords) {
        std::vector<std::string> out;
        for (const auto& i : validate_general_position(to_chords(chords)).issues)
            out.push_back(std::string(to_string(i.kind)) + ": " + i.detail);
        return out;
    });
    m.def("zone_run", [](const py::iterable& chords) {
        const auto cs = to_chords(chords);
        const Arrangement arr = build_arrangement(cs);
        const Transcript t = zone_tour(arr);
        py::dict d = to_py(transcript_to_json(arr, t));
        d["envelope"] = format_envelope(lower_envelope(cs));
        d["sprime_text"] = format_sprime(t);
        d["s_text"] = format_s(t);
        return d;
    });
    m.def("lower_envelope", [](const py::iterable& chords) { return format_envelope(lower_envelope(to_chords(chords))); });

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int status = cli::dispatch(args, out, err);
        return py::make_tuple(status, out.str(), err.str());
    }, "(status, stdout, stderr) of one parazone command line");
}
