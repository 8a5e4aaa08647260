// Command-line front end. Exit codes: 0 all checks pass, 1 at least one
// check fails, 2 usage or configuration error.

#include "p4d/degeneration.hpp"
#include "p4d/holomorphy.hpp"
#include "p4d/numerics.hpp"
#include "p4d/suite.hpp"
#include "p4d/weyl.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace p4d;

namespace {

constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

RationalPoint parse_point(const std::string& text) {
    RationalPoint p;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw UsageError("point entries look like name=value, got '" + item + "'");
        const std::string name = item.substr(0, eq);
        const auto v = var_from_name(name);
        if (!v) throw UsageError("unknown symbol '" + name + "'");
        try {
            mpq_class q(item.substr(eq + 1));
            q.canonicalize();
            p[*v] = q;
        } catch (const std::invalid_argument&) {
            throw UsageError("'" + item.substr(eq + 1) + "' is not a rational number");
        }
    }
    return p;
}

void emit(const std::string& text, const std::string& output) {
    if (output.empty() || output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(output);
    if (!out) throw UsageError("cannot write '" + output + "'");
    out << text;
}

std::string render(const SuiteConfig& config, const std::vector<Report>& reports, const std::string& format) {
    if (format == "human") return human_report(reports);
    return report_document(config, reports).dump(2) + "\n";
}

int status_code(const std::vector<Report>& reports) { return all_passed(reports) ? 0 : 1; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification engine for coupled Painleve III Hamiltonian systems"};
    app.require_subcommand(1);
    app.set_version_flag("--version", version());

    auto* list = app.add_subcommand("list", "List families, generators and chart sets");

    std::string family_arg;
    auto* show = app.add_subcommand("show", "Export a cataloged system as JSON");
    show->add_option("family", family_arg, "Family name")->required();

    std::string word_arg, point_arg;
    auto* apply_cmd = app.add_subcommand("apply", "Compose a word of generators, optionally at a point");
    apply_cmd->add_option("family", family_arg, "Family name")->required();
    apply_cmd->add_option("word", word_arg, "Generators applied left to right, e.g. \"s0 s2 pi1\"")->required();
    apply_cmd->add_option("--point", point_arg, "Exact point, e.g. x=1/2,y=1/3,z=1,w=2,t=1,a0=0,...");

    std::vector<std::string> suites;
    std::string mode_arg = "random", format = "json", output, verify_family;
    std::uint64_t seed = 0;
    int samples = 8;
    int jobs = default_jobs();
    auto* verify = app.add_subcommand("verify", "Run verification suites");
    verify->add_option("--suite", suites, "Suites to run (default all)")->delimiter(',');
    verify->add_option("--family", verify_family, "Restrict to one family");
    verify->add_option("--mode", mode_arg, "exact or random")->check(CLI::IsMember({"exact", "random"}));
    verify->add_option("--seed", seed, "Random-mode seed");
    verify->add_option("--samples", samples, "Random-mode sample count")->check(CLI::PositiveNumber);
    verify->add_option("--jobs", jobs, "Concurrent checks (default from P4D_JOBS)")->check(CLI::PositiveNumber);
    verify->add_option("--format", format, "human or json")->check(CLI::IsMember({"human", "json"}));
    verify->add_option("--output", output, "Report path (default standard output)");

    bool dump = false;
    auto* degenerate = app.add_subcommand("degenerate", "Check the D5(1) to D4 confluence and its group limit");
    degenerate->add_flag("--dump", dump, "Also print the eps-dependent field before the limit");
    degenerate->add_option("--format", format, "human or json")->check(CLI::IsMember({"human", "json"}));

    std::string bench_path;
    bool backlund = false;
    auto* integrate_cmd = app.add_subcommand("integrate", "Integrate a benchmark; trajectory as JSON lines");
    integrate_cmd->add_option("benchmark", bench_path, "Benchmark JSON file (\"default\" for the built-in one)")
        ->required();
    integrate_cmd->add_option("--output", output, "Trajectory path (default standard output)");
    integrate_cmd->add_flag("--backlund", backlund, "Also cross-check every generator of the family numerically");

    unsigned degree = 2;
    std::vector<int> window{-2, 2};
    auto* search = app.add_subcommand("search-integrals", "Search polynomial first integrals");
    search->add_option("family", family_arg, "Family name")->required();
    search->add_option("--deg", degree, "Degree bound in the phase variables");
    search->add_option("--twin", window, "t-power window lo,hi")->delimiter(',')->expected(2);

    auto* probe = app.add_subcommand("probe-assumption-a", "Run the assumption-(A) charts against a system");
    probe->add_option("family", family_arg, "Family name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (*list) {
            Json j;
            for (Family f : catalog_families()) {
                Json entry{{"family", family_name(f)}};
                try {
                    entry["generators"] = generator_set(f).labels();
                } catch (const UnknownFamily&) {
                    entry["generators"] = Json::array();
                }
                j["families"].push_back(entry);
            }
            for (const auto& s : chart_set_names()) {
                Json labels = Json::array();
                for (const auto& c : charts(s)) labels.push_back(c.index);
                j["chart_sets"][s] = labels;
            }
            j["suites"] = suite_names();
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (*show) {
            const Family f = family_from_name(family_arg);
            Json j = to_json(make_hamiltonian(f));
            try {
                j["presentation"] = to_json(derive_cartan(f));
            } catch (const UnknownFamily&) {
            }
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (*apply_cmd) {
            const Family f = family_from_name(family_arg);
            const GeneratorSet set = generator_set(f);
            const auto word = parse_word(set, word_arg);
            if (point_arg.empty()) {
                std::cout << to_json(compose_word(word)).dump(2) << "\n";
                return 0;
            }
            RationalPoint p = parse_point(point_arg);
            for (Var v : word.front().vars)
                if (!p.count(v)) throw UsageError("the point must assign " + std::string(var_name(v)));
            if (!p.count(Var::t)) throw UsageError("the point must assign t");
            for (Var v : set.params.symbols)
                if (!p.count(v)) throw UsageError("the point must assign " + std::string(var_name(v)));
            if (constraint_residual(set.params, p) != 0) throw UsageError("parameters violate the normalization");
            const RationalPoint q = apply_word(word, p);
            Json j = Json::object();
            for (const auto& [v, value] : q) j[std::string(var_name(v))] = value.get_str();
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (*verify) {
            SuiteConfig config;
            config.suites = suites;
            if (!verify_family.empty()) config.family = family_from_name(verify_family);
            config.mode = mode_arg == "exact" ? CheckMode::exact_mode() : CheckMode::random_mode(seed, samples);
            config.jobs = jobs;
            try {
                validate(config);
            } catch (const Error& e) {
                throw UsageError(e.what());
            }
            const auto reports = run_suite(config);
            emit(render(config, reports, format), output);
            return status_code(reports);
        }
        if (*degenerate) {
            std::vector<Report> reports{verify_confluence_field()};
            for (auto& r : verify_group_convergence()) reports.push_back(r);
            if (dump) {
                const VectorField f = substitute_confluence(make_hamiltonian(Family::D51));
                Json j;
                for (std::size_t i = 0; i < f.vars.size(); ++i) j[std::string(var_name(f.vars[i]))] = to_string(f.rhs[i]);
                std::cerr << j.dump(2) << "\n";
            }
            SuiteConfig config;
            config.suites = {"confluence"};
            config.mode = CheckMode::exact_mode();
            std::cout << render(config, reports, format);
            return status_code(reports);
        }
        if (*integrate_cmd) {
            Benchmark b;
            if (bench_path == "default") {
                b = default_benchmark();
            } else {
                std::ifstream in(bench_path);
                if (!in) throw UsageError("cannot read '" + bench_path + "'");
                Json j;
                try {
                    j = Json::parse(in);
                } catch (const Json::exception& e) {
                    throw UsageError(std::string("invalid JSON: ") + e.what());
                }
                try {
                    b = benchmark_from_json(j);
                } catch (const Error& e) {
                    throw UsageError(e.what());
                }
            }
            const HamiltonianSystem sys = make_hamiltonian(b.family);
            try {
                const Trajectory tr = integrate(sys, b.params, b.initial, b.path, b.tol, b.samples);
                emit(tr.json_lines(), output);
                std::cerr << "defect " << residual(sys, tr) << ", steps " << tr.stats.accepted << " accepted, "
                          << tr.stats.rejected << " rejected\n";
            } catch (const StepFailure& e) {
                emit(e.partial.json_lines(), output);
                std::cerr << e.what() << "\n";
                return 1;
            }
            if (!backlund) return 0;
            std::vector<Report> reports;
            BacklundNumericOptions opts;
            opts.tol = b.tol;
            opts.samples = b.samples;
            for (const auto& g : generator_set(b.family).reflections)
                reports.push_back(verify_backlund_numeric(g, sys, b.initial, b.params, b.path, opts));
            for (const auto& g : generator_set(b.family).automorphisms)
                reports.push_back(verify_backlund_numeric(g, sys, b.initial, b.params, b.path, opts));
            std::cerr << human_report(reports);
            return status_code(reports);
        }
        if (*search) {
            const Family f = family_from_name(family_arg);
            const auto basis = first_integral_search(make_hamiltonian(f), degree, window.at(0), window.at(1));
            Json j{{"family", family_name(f)}, {"degree", degree}, {"window", window}, {"basis", Json::array()}};
            for (const auto& b : basis) j["basis"].push_back(to_string(b));
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (*probe) {
            const Family f = family_from_name(family_arg);
            const auto reports = probe_assumption_a(make_hamiltonian(f));
            SuiteConfig config;
            config.suites = {"holomorphy"};
            config.family = f;
            config.mode = CheckMode::exact_mode();
            std::cout << report_document(config, reports).dump(2) << "\n";
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const UnknownFamily& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const UnknownLabel& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const WindowEmpty& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kUsage;
}
