#include <doctest.h>

#include "p4d/degeneration.hpp"
#include "p4d/weyl.hpp"

using namespace p4d;

TEST_CASE("confluence substitution") {
    auto c = confluence();
    CHECK(equals(c.to_old.image(Var::x), "1 + x/(eps*t)"_rf));
    CHECK(equals(c.to_old.param_image(Var::b4), "a4 - a3 - 1/eps"_rf));
    CHECK(equals(c.to_old.time_image, "-eps*t"_rf));
    // The two directions are mutually inverse.
    auto id = compose(c.to_new, c.to_old);
    for (std::size_t i = 0; i < 4; ++i) CHECK(equals(id.images[i], RationalFunction::variable(id.vars[i])));
    CHECK(equals(id.time_image, "t"_rf));
    for (std::size_t i = 0; i < id.params.size(); ++i)
        CHECK(equals(id.param_images[i], RationalFunction::variable(id.params[i])));
}

TEST_CASE("the parameter map carries the D4 normalization to the D5(1) one") {
    auto c = confluence();
    auto d51 = make_hamiltonian(Family::D51).params;
    auto d4 = make_hamiltonian(Family::D4).params;
    auto image = substitute(d51.constraint_form(), c.to_old.assignment());
    CHECK(equals(d4.reduce(image), 0));
}

TEST_CASE("chain rule factor") {
    auto f = substitute_confluence(make_hamiltonian(Family::D51));
    CHECK(equals(f.time_factor, "-1/eps"_rf));
}

TEST_CASE("epsilon limits") {
    CHECK(equals(epsilon_limit("(1 + eps*x)/eps - 1/eps"_rf), "x"_rf));
    CHECK_THROWS_AS(epsilon_limit("1/eps"_rf), PoleAtEpsilonZero);
    CHECK(equals(epsilon_limit("x/(1 + eps*a3)"_rf), "x"_rf));
    CHECK(epsilon_limit("eps*x"_rf).is_zero());
}

TEST_CASE("the confluenced D5(1) field tends to the D4 field") {
    auto r = verify_confluence_field();
    CHECK_MESSAGE(r.passed(), r.witness.value_or(""));
}

TEST_CASE("the subgroup converges to the D4 generators") {
    auto reports = verify_group_convergence();
    CHECK(reports.size() == 5);
    for (const auto& r : reports) {
        CAPTURE(r.check);
        CHECK_MESSAGE(r.passed(), r.witness.value_or(""));
    }
}

TEST_CASE("limit generators are symmetries of the D4 system") {
    auto words = convergent_subgroup_words();
    auto d4 = make_hamiltonian(Family::D4);
    for (const auto& w : words) {
        auto lim = epsilon_limit(conjugate_by_confluence(compose_word(w)));
        CHECK(verify_symmetry(lim, d4).passed());
    }
}

TEST_CASE("conjugating the identity") {
    auto c = confluence();
    auto id = identity_map({Var::x, Var::y, Var::z, Var::w}, c.to_old.params);
    auto conj = conjugate_by_confluence(id);
    for (std::size_t i = 0; i < 4; ++i) CHECK(equals(conj.images[i], RationalFunction::variable(conj.vars[i])));
    auto lim = epsilon_limit(conj);
    CHECK(equals(lim.time_image, "t"_rf));
}

TEST_CASE("a wrong composite does not converge to s4") {
    auto d51 = generator_set(Family::D51);
    auto d4 = generator_set(Family::D4);
    auto conj = conjugate_by_confluence(compose_word(parse_word(d51, "w4 w5")));
    bool converged = false;
    try {
        converged = maps_equal(epsilon_limit(conj), d4.get("s4"), d4.params);
    } catch (const PoleAtEpsilonZero&) {
    }
    CHECK_FALSE(converged);
}
