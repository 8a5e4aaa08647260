#include <doctest.h>

#include "p4d/numerics.hpp"

#include <cmath>

using namespace p4d;

namespace {

HamiltonianSystem toy(const char* h) {
    HamiltonianSystem s;
    s.hamiltonian = parse(h);
    s.pairs = {{Var::q, Var::p}};
    return s;
}

Path segment(Complex a, Complex b) { return Path{{a, b}}; }

}  // namespace

TEST_CASE("compiled expressions agree with exact evaluation") {
    auto f = "(x^3*y - 2*a1*x + t)/(t^2*(y - 1))"_rf;
    CompiledRational c(f);
    std::array<Complex, kVarCount> env{};
    env[index(Var::x)] = 0.5;
    env[index(Var::y)] = 1.0 / 3;
    env[index(Var::t)] = 2;
    env[index(Var::a1)] = 0.125;
    RationalPoint p{{Var::x, mpq_class(1, 2)}, {Var::y, mpq_class(1, 3)}, {Var::t, 2}, {Var::a1, mpq_class(1, 8)}};
    CHECK(std::abs(c.eval(env) - eval(f, p).get_d()) < 1e-14);
    env[index(Var::x)] = Complex(0.5, 0.25);
    CHECK(std::abs(c.eval(env).imag()) > 0);
}

TEST_CASE("constant field is integrated exactly") {
    auto tr = integrate(toy("p"), {}, {0.25, 0.5}, segment(1, 2));
    for (std::size_t k = 0; k < tr.states.size(); ++k) {
        CHECK(std::abs(tr.states[k][0] - (0.25 + (tr.times[k] - 1.0))) <= 1e-12);
        CHECK(std::abs(tr.states[k][1] - 0.5) <= 1e-12);
    }
    CHECK(tr.times.front() == Complex(1));
    CHECK(tr.times.back() == Complex(2));
}

TEST_CASE("zero field has zero residual") {
    auto sys = toy("0");
    auto tr = integrate(sys, {}, {1.0, 2.0}, segment(1, 2));
    CHECK(residual(sys, tr) == 0);
}

TEST_CASE("D4 benchmark defect") {
    auto b = default_benchmark();
    auto sys = make_hamiltonian(b.family);
    auto tr = integrate(sys, b.params, b.initial, b.path, b.tol, b.samples);
    CHECK(tr.states.size() == 101);
    const double defect = residual(sys, tr);
    CHECK(defect <= 1e-8);

    // Tightening the tolerance does not increase the defect.
    auto tight = integrate(sys, b.params, b.initial, b.path, {b.tol.rel / 10, b.tol.abs / 10}, b.samples);
    CHECK(residual(sys, tight) <= defect * 1.5);
}

TEST_CASE("path reversibility") {
    auto b = default_benchmark();
    auto sys = make_hamiltonian(b.family);
    auto fwd = integrate(sys, b.params, b.initial, b.path, b.tol);
    auto back = integrate(sys, b.params, fwd.states.back(), segment(2, 1), b.tol);
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(back.states.back()[i] - b.initial[i]) <= 10 * 1e-10 * 10);
}

TEST_CASE("complex polyline paths") {
    auto b = default_benchmark();
    auto sys = make_hamiltonian(b.family);
    Path detour{{1.0, Complex(1.5, 0.5), 2.0}};
    auto tr = integrate(sys, b.params, b.initial, detour, b.tol, 41);
    CHECK(residual(sys, tr) <= 1e-6);
    CHECK(tr.times[20] == Complex(1.5, 0.5));
}

TEST_CASE("singular starts") {
    auto b = default_benchmark();
    auto sys = make_hamiltonian(b.family);
    CHECK_THROWS_AS(integrate(sys, b.params, b.initial, segment(-1, 1), b.tol), SingularStart);
    CHECK_THROWS_AS(integrate(sys, b.params, b.initial, segment(0, 1), b.tol), SingularStart);
    auto bad = b.params;
    bad[Var::a0] += 0.1;
    CHECK_THROWS_AS(integrate(sys, bad, b.initial, b.path, b.tol), Error);
}

TEST_CASE("step failure at a pole") {
    // q' = q^2 blows up at t = 2 from q(1) = 1.
    auto sys = toy("q^2*p");
    try {
        integrate(sys, {}, {1.0, 1.0}, segment(1, 3), {1e-10, 1e-10});
        FAIL("expected a step failure");
    } catch (const StepFailure& e) {
        CHECK(!e.partial.states.empty());
        CHECK(std::abs(e.partial.times.back()) < 2.0);
    }
}

TEST_CASE("corrupted sample is located by the residual") {
    auto b = default_benchmark();
    auto sys = make_hamiltonian(b.family);
    auto tr = integrate(sys, b.params, b.initial, b.path, b.tol);
    tr.states[50][1] += 1e-2;
    std::size_t worst = 0;
    CHECK(residual(sys, tr, &worst) > 1e-3);
    CHECK(worst == 50);
}

TEST_CASE("Backlund maps carry numerical solutions to solutions") {
    auto b = default_benchmark();
    auto sys = make_hamiltonian(b.family);
    auto set = generator_set(Family::D4);
    for (const auto& label : set.labels()) {
        auto r = verify_backlund_numeric(set.get(label), sys, b.initial, b.params, b.path);
        CAPTURE(r.check);
        CHECK_MESSAGE(r.passed(), r.witness.value_or(""));
    }
    auto id = identity_map({Var::x, Var::y, Var::z, Var::w}, sys.params.symbols);
    CHECK(verify_backlund_numeric(id, sys, b.initial, b.params, b.path).passed());
}

TEST_CASE("perturbing a target parameter flips the verdict") {
    auto b = default_benchmark();
    auto sys = make_hamiltonian(b.family);
    BacklundNumericOptions opts;
    opts.target_perturbation = std::make_pair(Var::a1, 1e-3);
    auto r = verify_backlund_numeric(generator(Family::D4, "s1"), sys, b.initial, b.params, b.path, opts);
    CHECK(r.status == Status::fail);
    auto moved = perturb_parameter(sys.params, b.params, Var::a3, 1e-3);
    CHECK(std::abs(moved[Var::a0] - (0.125 - 1e-3)) < 1e-15);
}

TEST_CASE("benchmark JSON round trip") {
    auto b = default_benchmark();
    auto j = to_json(b);
    auto c = benchmark_from_json(j);
    CHECK(c.initial == b.initial);
    CHECK(c.params == b.params);
    CHECK(c.path.vertices == b.path.vertices);
    auto d = benchmark_from_json(Json::parse(
        R"({"family":"d4","initial_state":["1/2","1/3","1/5","1/7"],"params":{"a0":"1/8","a1":"1/8","a2":"1/8","a3":"1/4","a4":"1/4"},"path":[1,2],"tol":1e-10})"));
    CHECK(std::abs(d.initial[1] - 1.0 / 3) < 1e-16);
    CHECK_THROWS_AS(benchmark_from_json(Json::parse(R"({"initial_state":[1]})")), Error);

    auto tr = integrate(make_hamiltonian(Family::D4), b.params, b.initial, b.path, b.tol, 3);
    auto lines = tr.json_lines();
    CHECK(std::count(lines.begin(), lines.end(), '\n') == 3);
    CHECK(Json::parse(lines.substr(0, lines.find('\n')))["state"].size() == 4);
}
