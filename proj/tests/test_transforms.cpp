#include <doctest.h>

#include "p4d/transforms.hpp"

using namespace p4d;

namespace {

const std::vector<Family> kWithGenerators = {Family::D4, Family::B4First, Family::B4Second, Family::D52, Family::D51};

BirationalMap with_image(BirationalMap m, Var v, const std::string& image) {
    for (std::size_t i = 0; i < m.vars.size(); ++i)
        if (m.vars[i] == v) m.images[i] = parse(image);
    return m;
}

}  // namespace

TEST_CASE("involutions square to the identity") {
    for (Family f : kWithGenerators) {
        auto set = generator_set(f);
        auto id = identity_map({Var::x, Var::y, Var::z, Var::w}, set.params.symbols);
        for (const auto& g : set.reflections) {
            CAPTURE(family_name(f));
            CAPTURE(g.label);
            std::string witness;
            CHECK_MESSAGE(maps_equal(compose(g, g), id, set.params, &witness), witness);
        }
        for (const auto& g : set.automorphisms) {
            CAPTURE(g.label);
            CHECK(maps_equal(compose(g, g), id, set.params));
        }
    }
}

TEST_CASE("pi4 is pi2 pi3 pi2") {
    auto set = generator_set(Family::D4);
    auto word = compose_word({set.get("pi2"), set.get("pi3"), set.get("pi2")});
    CHECK(maps_equal(word, set.get("pi4"), set.params));
}

TEST_CASE("every generator is a symmetry of its system") {
    for (Family f : kWithGenerators) {
        auto sys = make_hamiltonian(f);
        auto set = generator_set(f);
        for (const auto& label : set.labels()) {
            auto r = verify_symmetry(set.get(label), sys);
            CAPTURE(r.check);
            CHECK_MESSAGE(r.passed(), r.witness.value_or(""));
        }
    }
}

TEST_CASE("random mode agrees with exact mode on generators") {
    auto sys = make_hamiltonian(Family::B4First);
    for (const auto& g : generator_set(Family::B4First).reflections) {
        auto r = verify_symmetry(g, sys, CheckMode::random_mode(5, 6));
        CAPTURE(r.check);
        CHECK(r.passed());
    }
}

TEST_CASE("a generator with a wrong image fails") {
    auto sys = make_hamiltonian(Family::D4);
    auto bad = with_image(generator(Family::D4, "s1"), Var::x, "x");
    auto r = verify_symmetry(bad, sys);
    CHECK(r.status == Status::fail);
    CHECK(r.witness.has_value());
    CHECK(verify_symmetry(bad, sys, CheckMode::random_mode(1, 4)).status == Status::fail);
}

TEST_CASE("D5(2) s4 needs 2*a4/z, not 2*a4/w") {
    auto sys = make_hamiltonian(Family::D52);
    auto literal = with_image(generator(Family::D52, "s4"), Var::w, "w - 2*a4/w + t/z^2");
    auto corrected = with_image(generator(Family::D52, "s4"), Var::w, "w - 2*a4/z + t/z^2");
    CHECK(verify_symmetry(literal, sys).status == Status::fail);
    CHECK(verify_symmetry(corrected, sys).passed());
}

TEST_CASE("symplectic changes of variables") {
    for (Equivalence e : all_equivalences()) {
        auto r = verify_symplectic(equivalence_map(e));
        CAPTURE(r.check);
        CHECK(r.passed());
    }
    BirationalMap scale = identity_map({Var::x, Var::y}, {});
    scale.label = "scale";
    scale.images[0] = parse("2*x");
    auto r = verify_symplectic(scale);
    CHECK(r.status == Status::fail);
}

TEST_CASE("equivalences carry one system to the other") {
    for (Equivalence e : all_equivalences()) {
        auto r = verify_equivalence(equivalence_map(e), make_hamiltonian(equivalence_source(e)),
                                    make_hamiltonian(equivalence_target(e)));
        CAPTURE(r.check);
        CHECK_MESSAGE(r.passed(), r.witness.value_or(""));
    }
}

TEST_CASE("pushforward") {
    auto f = vector_field(make_hamiltonian(Family::D4));
    auto id = identity_map({Var::x, Var::y, Var::z, Var::w}, {});
    auto same = pushforward_field(id, f);
    for (std::size_t i = 0; i < 4; ++i) CHECK(equals(same.rhs[i], f.rhs[i]));

    // dQ/dt for Q = 1/q is -q'/q^2.
    auto p3 = vector_field(make_hamiltonian(Family::PIII));
    auto pushed = pushforward_field(equivalence_map(Equivalence::P3ToP3Tilde), p3);
    CHECK(equals(pushed.rhs[0], -p3[Var::q] / "q^2"_rf));

    // pi1 reverses time, so dX/dT = x'.
    auto pi1 = pushforward_field(generator(Family::D4, "pi1"), f);
    CHECK(equals(pi1.rhs[0], f[Var::x]));
    CHECK(equals(pi1.time_factor, -1));

    BirationalMap frozen = id;
    frozen.time_image = 1;
    CHECK_THROWS_AS(pushforward_field(frozen, f), NonInvertibleTime);
}

TEST_CASE("apply and JSON") {
    auto s1 = generator(Family::D4, "s1");
    RationalPoint p{{Var::x, 1}, {Var::y, 2}, {Var::z, 3}, {Var::w, 4}, {Var::t, 5},
                    {Var::a0, 0}, {Var::a1, 1}, {Var::a2, 0}, {Var::a3, 0}, {Var::a4, 0}};
    auto q = p4d::apply(s1, p);
    CHECK(q[Var::x] == mpq_class(3, 2));
    CHECK(q[Var::a1] == -1);
    CHECK(q[Var::a2] == 1);
    auto j = to_json(s1);
    CHECK(j["param_matrix"][2].dump() == R"(["0","1","1","0","0","0"])");
    CHECK_THROWS_AS(generator(Family::D4, "s9"), UnknownLabel);
}

TEST_CASE("sampler respects the normalization") {
    auto params = make_hamiltonian(Family::D52).params;
    PointSampler s(3);
    for (int i = 0; i < 20; ++i) CHECK(constraint_residual(params, s.point({Var::x}, params)) == 0);
    CHECK(seed_for(1, "a") == seed_for(1, "a"));
    CHECK(seed_for(1, "a") != seed_for(1, "b"));
}
