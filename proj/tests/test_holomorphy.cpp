#include <doctest.h>

#include "p4d/holomorphy.hpp"

using namespace p4d;

namespace {

const std::vector<std::pair<Family, std::string>> kClaims = {
    {Family::D4, "d4"}, {Family::B4First, "b4-first"}, {Family::B4Second, "b4-second"}, {Family::D52, "d5-2"}};

HamiltonianSystem phase_only(RationalFunction h) {
    HamiltonianSystem s;
    s.hamiltonian = std::move(h);
    s.pairs = {{Var::x, Var::y}, {Var::z, Var::w}};
    return s;
}

}  // namespace

TEST_CASE("chart transcriptions") {
    auto r3 = chart("d4", "r3");
    CHECK(equals(r3.forward.image(Var::z), "1/z"_rf));
    CHECK(equals(r3.forward.image(Var::w), "-z*(w*z + a3)"_rf));
    CHECK(chart("d4", "r2").nested_on == std::optional<std::string>("r1"));
    CHECK_FALSE(chart("b4-first", "r2").nested_on);
    CHECK(equals(chart("b4-first", "r0").forward.image(Var::y), "y - 2*a0/x + 1/x^2"_rf));
    CHECK_THROWS_AS(chart("d4", "r7"), UnknownChart);
    CHECK_THROWS_AS(chart("e8", "r0"), UnknownChart);
}

TEST_CASE("every chart is canonical and inverted by its declared inverse") {
    for (const auto& set : chart_set_names())
        for (const auto& c : charts(set)) {
            CAPTURE(set);
            CAPTURE(c.index);
            CHECK(verify_symplectic(c.forward).passed());
            CHECK(maps_equal(compose(c.inverse, c.forward), identity_map(c.forward.vars, {}), ParameterVector{}));
        }
}

TEST_CASE("identity chart leaves the field unchanged") {
    ChartTransform id;
    id.forward = identity_map({Var::x, Var::y, Var::z, Var::w}, {});
    id.inverse = id.forward;
    auto f = vector_field(make_hamiltonian(Family::D4));
    auto g = to_chart(f, id);
    for (std::size_t i = 0; i < 4; ++i) CHECK(equals(f.rhs[i], g.rhs[i]));
}

TEST_CASE("systems stay polynomial in their charts") {
    for (const auto& [family, set] : kClaims) {
        auto reports = verify_chart_polynomiality(make_hamiltonian(family), set);
        CHECK(reports.size() == 5);
        for (const auto& r : reports) {
            CAPTURE(r.check);
            CHECK_MESSAGE(r.passed(), r.witness.value_or(""));
        }
    }
}

TEST_CASE("random-mode verdicts agree with exact ones") {
    for (const auto& [family, set] : kClaims) {
        auto exact = verify_chart_polynomiality(make_hamiltonian(family), set);
        auto random = verify_chart_polynomiality(make_hamiltonian(family), set, CheckMode::random_mode(9, 1));
        for (std::size_t i = 0; i < exact.size(); ++i) CHECK(exact[i].status == random[i].status);
    }
}

TEST_CASE("dropping the coupling term breaks holomorphy") {
    auto sys = make_hamiltonian(Family::D4);
    sys.hamiltonian += "2*y*w/t"_rf;
    auto reports = verify_chart_polynomiality(sys, "d4");
    int failures = 0;
    for (const auto& r : reports)
        if (r.status == Status::fail) {
            ++failures;
            CHECK(r.witness.has_value());
        }
    CHECK(failures > 0);
}

TEST_CASE("the /w reading of the D5(2) r4 chart fails") {
    auto c = chart("d5-2", "r4");
    c.forward.images[3] = parse("w - 2*a4/w + t/z^2");
    CHECK_FALSE(verify_symplectic(c.forward).passed());
}

TEST_CASE("reconstructing a Hamiltonian") {
    auto sys = make_hamiltonian(Family::D4);
    auto k = reconstruct_hamiltonian(vector_field(sys), sys.pairs);
    auto diff = k - sys.hamiltonian;
    for (Var v : {Var::x, Var::y, Var::z, Var::w}) CHECK(equals(differentiate(diff, v), 0));

    VectorField unit{{Var::x, Var::y}, {1, 0}, 1};
    CHECK(equals(reconstruct_hamiltonian(unit, {{Var::x, Var::y}}), "y"_rf));

    VectorField expansion{{Var::x, Var::y}, {"x"_rf, "y"_rf}, 1};
    CHECK_THROWS_AS(reconstruct_hamiltonian(expansion, {{Var::x, Var::y}}), NotHamiltonian);

    VectorField pole{{Var::x, Var::y}, {"1/x"_rf, 0}, 1};
    CHECK_THROWS_AS(reconstruct_hamiltonian(pole, {{Var::x, Var::y}}), NotHamiltonian);
}

TEST_CASE("phase polynomials over the field of t") {
    CHECK(as_phase_polynomial("(x^2 + a1*x)/t^3"_rf));
    CHECK(as_phase_polynomial("(x*z - 1)*(y + t)/((x*z - 1)*t)"_rf));
    CHECK_FALSE(as_phase_polynomial("1/(x - t)"_rf));
    CHECK(polynomiality_witness(VectorField{{Var::x}, {"1/x"_rf}, 1}).has_value());
    auto toy = phase_only("x*y*w/t"_rf);
    CHECK_FALSE(polynomiality_witness(vector_field(toy)));
}

TEST_CASE("assumption (A) probe reports without asserting") {
    for (Family f : {Family::D4, Family::B4First}) {
        auto reports = probe_assumption_a(make_hamiltonian(f));
        CHECK(reports.size() == 5);
        for (const auto& r : reports) {
            CHECK(r.status == Status::inconclusive);
            CHECK(r.witness.has_value());
        }
    }
}

TEST_CASE("chart export") {
    auto j = to_json(chart("d4", "r2"));
    CHECK(j["nested_on"] == "r1");
    CHECK(j["index"] == "r2");
    CHECK(j["images"]["y"] == "1/y");
}
