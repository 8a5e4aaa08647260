#include "p4d/suite.hpp"

#include "p4d/degeneration.hpp"
#include "p4d/holomorphy.hpp"
#include "p4d/numerics.hpp"
#include "p4d/weyl.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

#ifndef P4D_VERSION
#define P4D_VERSION "0.0.0"
#endif

namespace p4d {

namespace {

const std::vector<Family> kWithGenerators = {Family::D4, Family::B4First, Family::B4Second, Family::D52, Family::D51};

struct Task {
    std::string name;
    std::vector<std::string> tags;  // families the task concerns
    std::function<std::vector<Report>()> run;
};

std::string basis_text(const std::vector<RationalFunction>& basis) {
    std::string s = "{";
    for (std::size_t i = 0; i < basis.size(); ++i) s += (i ? ", " : "") + to_string(basis[i]);
    return s + "}";
}

Report simple(const std::string& check, const std::string& family, bool ok, std::optional<std::string> witness) {
    Report r;
    r.check = check;
    r.family = family;
    r.mode = CheckMode::exact_mode();
    r.status = ok ? Status::pass : Status::fail;
    if (!ok) r.witness = std::move(witness);
    return r;
}

void add_fields(std::vector<Task>& tasks) {
    for (Family f : {Family::D4, Family::B4First, Family::B4Second, Family::D52})
        tasks.push_back({"fields/" + family_name(f), {family_name(f)}, [f] { return std::vector{check_field_matches_display(f)}; }});
}

void add_symmetry(std::vector<Task>& tasks, CheckMode mode) {
    for (Family f : kWithGenerators)
        for (const auto& label : generator_set(f).labels())
            tasks.push_back({"symmetry/" + family_name(f) + "/" + label, {family_name(f)}, [f, label, mode] {
                                 return std::vector{verify_symmetry(generator(f, label), make_hamiltonian(f), mode)};
                             }});
    // The alternative representation is run against the D4 system without
    // an expected outcome.
    for (const auto& g : alternative_d4_set().reflections)
        tasks.push_back({"symmetry/d4-alt/" + g.label, {"d4"}, [g, mode] {
                             Report r = verify_symmetry(g, make_hamiltonian(Family::D4), mode);
                             r.check = "symmetry/d4-alt/" + g.label;
                             r.family = "d4-alt";
                             r.witness = r.passed() ? std::string("is a symmetry of the D4 system")
                                                    : "is not a symmetry of the D4 system: " + r.witness.value_or("");
                             r.status = Status::inconclusive;
                             return std::vector{r};
                         }});
}

void add_coxeter(std::vector<Task>& tasks, CheckMode mode) {
    for (Family f : kWithGenerators) {
        const std::string name = family_name(f);
        tasks.push_back({"coxeter/" + name + "/cartan", {name}, [f, name] {
                             const auto p = derive_cartan(f);
                             const auto perm = match_standard(p, f);
                             return std::vector{simple("coxeter/" + name + "/cartan", name, !perm.empty(),
                                                       "derived " + to_json(p).dump() + " matches no relabeling")};
                         }});
        tasks.push_back({"coxeter/" + name, {name}, [f, mode] { return verify_coxeter_relations(f, mode); }});
    }
    tasks.push_back({"coxeter/d4-alt", {"d4"}, [mode] { return verify_coxeter_relations(alternative_d4_set(), mode); }});
}

void add_extended(std::vector<Task>& tasks) {
    for (Family f : {Family::D4, Family::B4First, Family::B4Second, Family::D52})
        tasks.push_back({"extended/" + family_name(f), {family_name(f)}, [f] { return verify_extended_relations(f); }});
}

void add_holomorphy(std::vector<Task>& tasks, CheckMode mode) {
    for (Family f : {Family::D4, Family::B4First, Family::B4Second, Family::D52})
        tasks.push_back({"holomorphy/" + family_name(f), {family_name(f)}, [f, mode] {
                             return verify_chart_polynomiality(make_hamiltonian(f), chart_set_for(f), mode);
                         }});
}

void add_equivalence(std::vector<Task>& tasks, CheckMode mode) {
    for (Equivalence e : all_equivalences()) {
        const Family src = equivalence_source(e), dst = equivalence_target(e);
        tasks.push_back({"equivalence/" + equivalence_name(e), {family_name(src), family_name(dst)}, [e, src, dst, mode] {
                             const BirationalMap m = equivalence_map(e);
                             Report s = verify_symplectic(m);
                             s.family = family_name(src) + "->" + family_name(dst);
                             return std::vector{verify_equivalence(m, make_hamiltonian(src), make_hamiltonian(dst), mode), s};
                         }});
    }
}

void add_confluence(std::vector<Task>& tasks) {
    tasks.push_back({"confluence/field", {"d5-1", "d4"}, [] { return std::vector{verify_confluence_field()}; }});
    tasks.push_back({"confluence/group", {"d5-1", "d4"}, [] { return verify_group_convergence(); }});
}

void add_numeric(std::vector<Task>& tasks) {
    for (const auto& label : generator_set(Family::D4).labels())
        tasks.push_back({"numeric/d4/" + label, {"d4"}, [label] {
                             const Benchmark b = default_benchmark();
                             const HamiltonianSystem sys = make_hamiltonian(b.family);
                             const BirationalMap g = generator(b.family, label);
                             BacklundNumericOptions opts;
                             opts.tol = b.tol;
                             opts.samples = b.samples;
                             std::vector<Report> out{verify_backlund_numeric(g, sys, b.initial, b.params, b.path, opts)};
                             for (Var k : sys.params.symbols) {
                                 BacklundNumericOptions mutated = opts;
                                 mutated.target_perturbation = std::make_pair(k, 1e-3);
                                 const Report m = verify_backlund_numeric(g, sys, b.initial, b.params, b.path, mutated);
                                 Report r = simple("numeric/d4/" + label + " with " + std::string(var_name(k)) + " shifted",
                                                   "d4", m.status == Status::fail, "verdict did not flip");
                                 r.elapsed_ms = m.elapsed_ms;
                                 out.push_back(r);
                             }
                             return out;
                         }});
}

void add_integrals(std::vector<Task>& tasks) {
    tasks.push_back({"integrals/d4", {"d4"}, [] {
                         const auto basis = first_integral_search(make_hamiltonian(Family::D4), 2, -2, 2);
                         return std::vector{simple("integrals/d4 degree 2 window [-2,2]", "d4",
                                                   same_span(basis, {RationalFunction(1)}),
                                                   "non-constant integrals " + basis_text(basis))};
                     }});
    tasks.push_back({"integrals/toy", {"custom"}, [] {
                         HamiltonianSystem toy;
                         toy.hamiltonian = parse("p");
                         toy.pairs = {{Var::q, Var::p}};
                         const auto basis = first_integral_search(toy, 1, 0, 1);
                         return std::vector{simple("integrals/toy H = p", "custom",
                                                   same_span(basis, {parse("1"), parse("p"), parse("q - t")}),
                                                   "basis " + basis_text(basis))};
                     }});
}

std::vector<Task> build_tasks(const SuiteConfig& config) {
    std::set<std::string> wanted(config.suites.begin(), config.suites.end());
    if (wanted.empty() || wanted.count("all")) {
        const auto all = suite_names();
        wanted = {all.begin(), all.end()};
    }
    std::vector<Task> tasks;
    const CheckMode mode = config.mode;
    if (wanted.count("fields")) add_fields(tasks);
    if (wanted.count("symmetry")) add_symmetry(tasks, mode);
    if (wanted.count("coxeter")) add_coxeter(tasks, mode);
    if (wanted.count("extended")) add_extended(tasks);
    if (wanted.count("translations"))
        tasks.push_back({"translations", {"d4"}, [] { return verify_translation_shifts(); }});
    if (wanted.count("holomorphy")) add_holomorphy(tasks, mode);
    if (wanted.count("equivalence")) add_equivalence(tasks, mode);
    if (wanted.count("confluence")) add_confluence(tasks);
    if (wanted.count("numeric")) add_numeric(tasks);
    if (wanted.count("integrals")) add_integrals(tasks);
    if (config.family) {
        const std::string f = family_name(*config.family);
        std::erase_if(tasks, [&](const Task& t) { return std::find(t.tags.begin(), t.tags.end(), f) == t.tags.end(); });
    }
    return tasks;
}

}  // namespace

std::string version() { return P4D_VERSION; }

std::vector<std::string> suite_names() {
    return {"fields", "symmetry", "coxeter", "extended", "translations",
            "holomorphy", "equivalence", "confluence", "numeric", "integrals"};
}

void validate(const SuiteConfig& config) {
    const auto names = suite_names();
    for (const auto& s : config.suites)
        if (s != "all" && std::find(names.begin(), names.end(), s) == names.end())
            throw Error("unknown suite '" + s + "'");
    if (!config.mode.exact && config.mode.samples < 1) throw Error("samples must be at least 1");
    if (config.jobs < 1) throw Error("jobs must be at least 1");
}

int default_jobs() {
    if (const char* env = std::getenv("P4D_JOBS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<Report> run_suite(const SuiteConfig& config) {
    validate(config);
    const std::vector<Task> tasks = build_tasks(config);
    std::vector<std::vector<Report>> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            Stopwatch clock;
            try {
                results[i] = tasks[i].run();
            } catch (const std::exception& e) {
                Report r = simple(tasks[i].name, tasks[i].tags.front(), false, std::string("error: ") + e.what());
                r.mode = config.mode;
                r.elapsed_ms = clock.elapsed_ms();
                results[i] = {r};
            }
        }
    };
    const int jobs = std::min<int>(config.jobs, static_cast<int>(std::max<std::size_t>(tasks.size(), 1)));
    std::vector<std::thread> pool;
    for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::vector<Report> out;
    for (auto& r : results) out.insert(out.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
    std::stable_sort(out.begin(), out.end(), [](const Report& a, const Report& b) { return a.check < b.check; });
    return out;
}

Json report_document(const SuiteConfig& config, const std::vector<Report>& reports, bool include_timing) {
    Json suites = Json::array();
    if (config.suites.empty()) suites.push_back("all");
    for (const auto& s : config.suites) suites.push_back(s);
    Json cfg{{"suites", suites}, {"family", config.family ? Json(family_name(*config.family)) : Json(nullptr)}};
    if (config.mode.exact) {
        cfg["mode"] = "exact";
    } else {
        cfg["mode"] = "random";
        cfg["seed"] = config.mode.seed;
        cfg["samples"] = config.mode.samples;
    }
    Json checks = Json::array();
    std::size_t passed = 0, failed = 0, inconclusive = 0;
    for (const auto& r : reports) {
        checks.push_back(to_json(r, include_timing));
        (r.status == Status::pass ? passed : r.status == Status::fail ? failed : inconclusive)++;
    }
    return Json{{"version", version()},
                {"config", cfg},
                {"summary", {{"pass", passed}, {"fail", failed}, {"inconclusive", inconclusive}}},
                {"checks", checks}};
}

std::string human_report(const std::vector<Report>& reports) {
    std::ostringstream os;
    std::size_t passed = 0, failed = 0, inconclusive = 0;
    for (const auto& r : reports) {
        const char* tag = r.status == Status::pass ? "PASS" : r.status == Status::fail ? "FAIL" : "INFO";
        (r.status == Status::pass ? passed : r.status == Status::fail ? failed : inconclusive)++;
        os << tag << "  " << r.check;
        if (r.witness) os << "  -- " << *r.witness;
        os << "\n";
    }
    os << passed << " passed, " << failed << " failed, " << inconclusive << " inconclusive\n";
    return os.str();
}

}  // namespace p4d
