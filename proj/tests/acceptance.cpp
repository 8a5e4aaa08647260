// Acceptance run: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails. Time limits are part of the verdict where stated.

#include "p4d/degeneration.hpp"
#include "p4d/holomorphy.hpp"
#include "p4d/numerics.hpp"
#include "p4d/suite.hpp"
#include "p4d/systems.hpp"
#include "p4d/transforms.hpp"
#include "p4d/weyl.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>

using namespace p4d;

namespace {

struct Outcome {
    std::vector<Report> reports;
    std::string note;
};

std::vector<Report> suite(std::vector<std::string> names, CheckMode mode) {
    SuiteConfig c;
    c.suites = std::move(names);
    c.mode = mode;
    c.jobs = default_jobs();
    return run_suite(c);
}

void append(std::vector<Report>& into, const std::vector<Report>& more) { into.insert(into.end(), more.begin(), more.end()); }

bool criterion(int n, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    std::string error;
    try {
        out = body();
    } catch (const std::exception& e) {
        error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::size_t pass = 0, fail = 0;
    std::string first_fail;
    for (const auto& r : out.reports) {
        if (r.status == Status::pass) ++pass;
        if (r.status == Status::fail && fail++ == 0) first_fail = r.check + (r.witness ? ": " + r.witness->substr(0, 200) : "");
    }
    const bool in_time = limit_s <= 0 || secs < limit_s;
    const bool ok = error.empty() && fail == 0 && pass > 0 && in_time;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << n << ": " << title << " (" << pass << " checks, "
              << timing;
    if (limit_s > 0) std::cout << " of " << limit_s << "s allowed";
    std::cout << ")";
    if (!out.note.empty()) std::cout << " " << out.note;
    if (!error.empty()) std::cout << " error: " << error;
    if (fail) std::cout << " first failure: " << first_fail;
    if (!in_time) std::cout << " over time";
    std::cout << "\n";
    return ok;
}

Report named(std::string check, bool ok, std::string witness) {
    Report r;
    r.check = std::move(check);
    r.status = ok ? Status::pass : Status::fail;
    if (!ok) r.witness = std::move(witness);
    return r;
}

}  // namespace

int main() {
    bool ok = true;

    ok &= criterion(1, "derived fields equal the displayed systems", 5, [] {
        return Outcome{suite({"fields"}, CheckMode::exact_mode())};
    });

    ok &= criterion(2, "every generator is a symmetry, exact", 60, [] {
        Outcome o;
        for (Family f : {Family::D4, Family::B4First, Family::B4Second, Family::D52, Family::D51}) {
            const GeneratorSet set = generator_set(f);
            const HamiltonianSystem sys = make_hamiltonian(f);
            for (const auto& g : set.reflections) o.reports.push_back(verify_symmetry(g, sys));
            for (const auto& g : set.automorphisms) o.reports.push_back(verify_symmetry(g, sys));
        }
        return o;
    });

    ok &= criterion(3, "Cartan matrices and Coxeter relations", 0, [] {
        Outcome o{suite({"coxeter"}, CheckMode::random_mode(0, 8))};
        append(o.reports, verify_coxeter_relations(Family::D4, CheckMode::exact_mode()));
        return o;
    });

    ok &= criterion(4, "pi4 = pi2 pi3 pi2 and pi1, pi2, pi3 involutions, exact", 0, [] {
        Outcome o;
        for (const auto& r : verify_extended_relations(Family::D4))
            if (r.check == "extended/d4/pi4 = pi2 pi3 pi2" || r.check == "extended/d4/pi1^2" ||
                r.check == "extended/d4/pi2^2" || r.check == "extended/d4/pi3^2")
                o.reports.push_back(r);
        if (o.reports.size() != 4) o.reports.push_back(named("extended/d4 coverage", false, "relations missing"));
        return o;
    });

    ok &= criterion(5, "translation parameter shifts", 0, [] { return Outcome{verify_translation_shifts()}; });

    ok &= criterion(6, "chart polynomiality and chart Hamiltonians", 0, [] {
        Outcome o;
        for (Family f : {Family::D4, Family::B4First, Family::B4Second, Family::D52})
            append(o.reports, verify_chart_polynomiality(make_hamiltonian(f), chart_set_for(f)));
        return o;
    });

    ok &= criterion(7, "equivalences and their symplecticity", 0, [] {
        return Outcome{suite({"equivalence"}, CheckMode::exact_mode())};
    });

    ok &= criterion(8, "confluence limit of the field and the generators", 0, [] {
        Outcome o{{verify_confluence_field()}};
        append(o.reports, verify_group_convergence());
        return o;
    });

    ok &= criterion(9, "numeric Backlund cross-check with parameter mutations", 60, [] {
        return Outcome{suite({"numeric"}, CheckMode::random_mode(0, 8))};
    });

    ok &= criterion(10, "first-integral search", 0, [] {
        return Outcome{suite({"integrals"}, CheckMode::exact_mode())};
    });

    ok &= criterion(11, "same seed gives the same report", 0, [] {
        SuiteConfig c;
        c.suites = {"all"};
        c.mode = CheckMode::random_mode(42, 8);
        c.jobs = default_jobs();
        const Json first = report_document(c, run_suite(c), false);
        c.jobs = 1;
        const Json second = report_document(c, run_suite(c), false);
        const bool same = first.dump() == second.dump();
        Outcome o{{named("determinism/seed 42", same, "reports differ")}};
        o.note = "[" + std::to_string(first["checks"].size()) + " checks compared]";
        return o;
    });

    return ok ? 0 : 1;
}
