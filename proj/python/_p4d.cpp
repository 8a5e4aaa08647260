// Python bindings. Expressions cross the boundary as text, points as
// {name: "p/q"} dicts and reports as JSON text decoded on the Python side.

#include "p4d/numerics.hpp"
#include "p4d/suite.hpp"
#include "p4d/transforms.hpp"
#include "p4d/weyl.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace p4d;

namespace {

Var symbol(const std::string& name) {
    const auto v = var_from_name(name);
    if (!v) throw py::value_error("unknown symbol '" + name + "'");
    return *v;
}

RationalPoint to_point(const std::map<std::string, std::string>& values) {
    RationalPoint p;
    for (const auto& [name, text] : values) {
        mpq_class q(text);
        q.canonicalize();
        p[symbol(name)] = q;
    }
    return p;
}

CheckMode to_mode(const std::string& mode, std::uint64_t seed, int samples) {
    if (mode == "exact") return CheckMode::exact_mode();
    if (mode == "random") return CheckMode::random_mode(seed, samples);
    throw py::value_error("mode is 'exact' or 'random'");
}

HamiltonianSystem custom_system(const std::string& hamiltonian,
                                const std::vector<std::pair<std::string, std::string>>& pairs) {
    HamiltonianSystem s;
    s.hamiltonian = parse(hamiltonian);
    for (const auto& [u, v] : pairs) s.pairs.push_back({symbol(u), symbol(v)});
    return s;
}

std::map<std::string, std::string> field_text(const VectorField& f) {
    std::map<std::string, std::string> out;
    for (std::size_t i = 0; i < f.vars.size(); ++i) out[std::string(var_name(f.vars[i]))] = to_string(f.rhs[i]);
    return out;
}

}  // namespace

PYBIND11_MODULE(_p4d, m) {
    m.attr("__version__") = version();

    py::register_exception<Error>(m, "Error", PyExc_ValueError);

    m.def("canonical", [](const std::string& text) { return to_string(parse(text)); },
          "Canonical text of a rational expression.");
    m.def("equals", [](const std::string& a, const std::string& b) { return equals(parse(a), parse(b)); });
    m.def("differentiate", [](const std::string& f, const std::string& var) {
        return to_string(differentiate(parse(f), symbol(var)));
    });
    m.def("evaluate", [](const std::string& f, const std::map<std::string, std::string>& point) {
        return eval(parse(f), to_point(point)).get_str();
    });

    m.def("families", [] {
        std::vector<std::string> out;
        for (Family f : catalog_families()) out.push_back(family_name(f));
        return out;
    });
    m.def("hamiltonian", [](const std::string& family) {
        return to_string(make_hamiltonian(family_from_name(family)).hamiltonian);
    });
    m.def("vector_field", [](const std::string& family) {
        return field_text(vector_field(make_hamiltonian(family_from_name(family))));
    });
    m.def("hamiltonian_field", [](const std::string& hamiltonian,
                                  const std::vector<std::pair<std::string, std::string>>& pairs) {
        return field_text(vector_field(custom_system(hamiltonian, pairs)));
    }, py::arg("hamiltonian"), py::arg("pairs"));

    m.def("generators", [](const std::string& family) { return generator_set(family_from_name(family)).labels(); });
    m.def("generator_json", [](const std::string& family, const std::string& label) {
        return to_json(generator(family_from_name(family), label)).dump();
    });
    m.def("apply_word", [](const std::string& family, const std::string& word,
                           const std::map<std::string, std::string>& point) {
        const auto maps = parse_word(generator_set(family_from_name(family)), word);
        std::map<std::string, std::string> out;
        for (const auto& [v, q] : apply_word(maps, to_point(point))) out[std::string(var_name(v))] = q.get_str();
        return out;
    });
    m.def("verify_symmetry", [](const std::string& family, const std::string& label, const std::string& mode,
                                std::uint64_t seed, int samples) {
        const Family f = family_from_name(family);
        return to_json(verify_symmetry(generator(f, label), make_hamiltonian(f), to_mode(mode, seed, samples))).dump();
    }, py::arg("family"), py::arg("label"), py::arg("mode") = "exact", py::arg("seed") = 0, py::arg("samples") = 8);

    m.def("run_suite", [](const std::vector<std::string>& suites, const std::optional<std::string>& family,
                          const std::string& mode, std::uint64_t seed, int samples, int jobs, bool timing) {
        SuiteConfig c;
        c.suites = suites;
        if (family) c.family = family_from_name(*family);
        c.mode = to_mode(mode, seed, samples);
        c.jobs = jobs > 0 ? jobs : default_jobs();
        validate(c);
        std::vector<Report> reports;
        {
            py::gil_scoped_release release;
            reports = run_suite(c);
        }
        return report_document(c, reports, timing).dump();
    }, py::arg("suites"), py::arg("family") = std::nullopt, py::arg("mode") = "random", py::arg("seed") = 0,
       py::arg("samples") = 8, py::arg("jobs") = 0, py::arg("timing") = true);

    m.def("integrate", [](const std::string& benchmark_json) {
        const Benchmark b = benchmark_json.empty() ? default_benchmark() : benchmark_from_json(Json::parse(benchmark_json));
        const HamiltonianSystem sys = make_hamiltonian(b.family);
        const Trajectory tr = integrate(sys, b.params, b.initial, b.path, b.tol, b.samples);
        return py::make_tuple(tr.json_lines(), residual(sys, tr));
    }, py::arg("benchmark_json") = "", "Trajectory as JSON lines and its defect.");
    m.def("default_benchmark", [] { return to_json(default_benchmark()).dump(); });
}
