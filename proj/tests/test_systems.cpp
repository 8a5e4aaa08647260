#include <doctest.h>

#include "p4d/systems.hpp"

using namespace p4d;

TEST_CASE("normalization constraints") {
    CHECK(equals(make_hamiltonian(Family::D4).params.constraint_form(), "a0 + a1 + 2*a2 + a3 + a4 - 1"_rf));
    CHECK(equals(make_hamiltonian(Family::B4First).params.constraint_form(), "2*a0 + 2*a1 + 2*a2 + a3 + a4 - 1"_rf));
    CHECK(equals(make_hamiltonian(Family::B4Second).params.constraint_form(), "a0 + a1 + 2*a2 + 2*a3 + 2*a4 - 1"_rf));
    CHECK(equals(make_hamiltonian(Family::D52).params.constraint_form(), "a0 + a1 + a2 + a3 + a4 - 1/2"_rf));
    CHECK(equals(make_hamiltonian(Family::D51).params.constraint_form(),
                 "b0 + b1 + 2*b2 + 2*b3 + b4 + b5 - 1"_rf));
    CHECK_THROWS_AS(family_from_name("e8"), UnknownFamily);
    CHECK(family_from_name("D4") == Family::D4);
}

TEST_CASE("building blocks at q = p = t = 1") {
    RationalPoint pt{{Var::q, 1}, {Var::p, 1}, {Var::t, 1}};
    auto h3 = make_hamiltonian(Family::PIII).hamiltonian;
    auto h3t = make_hamiltonian(Family::PIIITilde).hamiltonian;
    CHECK(equals(specialize(h3, pt), "g2 + 1"_rf));
    CHECK(equals(specialize(h3t, pt), "1 - g2"_rf));
}

TEST_CASE("vector field of D4") {
    auto f = vector_field(make_hamiltonian(Family::D4));
    CHECK(f.rhs.size() == 4);
    CHECK(equals(f[Var::y], "(-2*x*y^2 + 2*x*y - (a0+a1)*y + a1)/t"_rf));
    CHECK(equals(f[Var::x], "(2*x^2*y - x^2 + (a0+a1)*x - 2*w)/t + 1"_rf));

    HamiltonianSystem zero;
    zero.pairs = {{Var::q, Var::p}};
    for (const auto& c : vector_field(zero).rhs) CHECK(c.is_zero());
}

TEST_CASE("derived fields equal the displayed systems") {
    for (Family f : {Family::D4, Family::B4First, Family::B4Second, Family::D52}) {
        auto r = check_field_matches_display(f);
        CHECK_MESSAGE(r.passed(), family_name(f), " ", r.witness.value_or(""));
    }
}

TEST_CASE("a sign-flipped coupling term is caught") {
    auto display = *displayed_field(Family::D4);
    display.rhs[0] = "(2*x^2*y - x^2 + (a0 + a1)*x + 2*w)/t + 1"_rf;
    auto r = check_field_matches_display(make_hamiltonian(Family::D4), display);
    CHECK(r.status == Status::fail);
    REQUIRE(r.witness);
    CHECK(r.witness->find("w") != std::string::npos);
}

TEST_CASE("constraint residual") {
    auto pv = make_hamiltonian(Family::D4).params;
    CHECK(constraint_residual(pv, {{Var::a0, 1}, {Var::a1, 0}, {Var::a2, 0}, {Var::a3, 0}, {Var::a4, 0}}) == 0);
    CHECK(constraint_residual(pv, {{Var::a0, 0}, {Var::a1, 0}, {Var::a2, 0}, {Var::a3, 0}, {Var::a4, 0}}) == -1);
    auto d52 = make_hamiltonian(Family::D52).params;
    mpq_class tenth(1, 10);
    CHECK(constraint_residual(d52, {{Var::a0, tenth}, {Var::a1, tenth}, {Var::a2, tenth}, {Var::a3, tenth}, {Var::a4, tenth}}) == 0);
}

TEST_CASE("observed phase degrees") {
    CHECK(phase_degree(make_hamiltonian(Family::D4)) == 4);
    CHECK(phase_degree(make_hamiltonian(Family::B4First)) == 4);
    CHECK(phase_degree(make_hamiltonian(Family::B4Second)) == 4);
    CHECK(phase_degree(make_hamiltonian(Family::D52)) == 6);
}

TEST_CASE("first integral search") {
    HamiltonianSystem toy;
    toy.hamiltonian = "p"_rf;
    toy.pairs = {{Var::q, Var::p}};
    auto basis = first_integral_search(toy, 1, 0, 1);
    CHECK(basis.size() == 3);
    CHECK(same_span(basis, {"1"_rf, "p"_rf, "q - t"_rf}));
    CHECK_FALSE(same_span(basis, {"1"_rf, "p"_rf, "q"_rf}));

    auto constants = first_integral_search(make_hamiltonian(Family::D4), 0, 0, 0);
    CHECK(same_span(constants, {"1"_rf}));
    CHECK_THROWS_AS(first_integral_search(toy, 1, 1, 0), WindowEmpty);
}

TEST_CASE("D4 has no polynomial first integral of degree <= 2") {
    auto basis = first_integral_search(make_hamiltonian(Family::D4), 2, -2, 2);
    CHECK(same_span(basis, {"1"_rf}));
}

TEST_CASE("system JSON export") {
    auto j = to_json(make_hamiltonian(Family::D4));
    CHECK(j["family"] == "d4");
    CHECK(j["pairs"].size() == 2);
    CHECK(j["constraint"]["coeffs"].size() == 5);
}
