#include <doctest.h>

#include "p4d/weyl.hpp"

using namespace p4d;

namespace {

bool all_pass(const std::vector<Report>& reports) {
    bool ok = true;
    for (const auto& r : reports) {
        CAPTURE(r.check);
        CHECK_MESSAGE(r.passed(), r.witness.value_or(""));
        ok = ok && r.passed();
    }
    return ok;
}

const Report& find(const std::vector<Report>& reports, const std::string& check) {
    for (const auto& r : reports)
        if (r.check == check) return r;
    throw Error("no report " + check);
}

}  // namespace

TEST_CASE("D4 Cartan matrix from the parameter actions") {
    auto p = derive_cartan(Family::D4);
    for (int i : {0, 1, 3, 4}) {
        CHECK(p.cartan[i][2] == -1);
        CHECK(p.cartan[2][i] == -1);
        CHECK(p.coxeter_m[i][2] == 3);
        for (int j : {0, 1, 3, 4})
            if (i != j) CHECK(p.coxeter_m[i][j] == 2);
    }
    CHECK(p.labels == std::vector<std::string>{"s0", "s1", "s2", "s3", "s4"});
}

TEST_CASE("double bonds") {
    auto b = derive_cartan(Family::B4First);
    CHECK(b.cartan[1][0] == -2);
    CHECK(b.cartan[0][1] == -1);
    CHECK(b.coxeter_m[0][1] == 4);

    auto d = derive_cartan(Family::D52);
    CHECK(d.coxeter_m[0][1] == 4);
    CHECK(d.coxeter_m[3][4] == 4);
    CHECK(d.coxeter_m[1][2] == 3);
    CHECK(d.coxeter_m[2][3] == 3);
    CHECK(d.coxeter_m[0][2] == 2);
}

TEST_CASE("presentation invariants") {
    for (Family f : {Family::D4, Family::B4First, Family::B4Second, Family::D52, Family::D51}) {
        auto p = derive_cartan(f);
        CAPTURE(family_name(f));
        for (std::size_t i = 0; i < p.cartan.size(); ++i) {
            CHECK(p.coxeter_m[i][i] == 1);
            for (std::size_t j = 0; j < p.cartan.size(); ++j) {
                CHECK(p.coxeter_m[i][j] == p.coxeter_m[j][i]);
                CHECK((p.cartan[i][j] == 0) == (p.cartan[j][i] == 0));
            }
        }
        CHECK_FALSE(match_standard(p, f).empty());
    }
    CHECK(match_standard(derive_cartan(Family::B4Second), Family::B4Second) == std::vector<int>{0, 1, 2, 3, 4});
    CHECK(match_standard(derive_cartan(Family::D52), Family::D52) == std::vector<int>{0, 1, 2, 3, 4});
    // The two B4 members are not related by a mislabeled D5(2) diagram.
    CHECK(match_standard(derive_cartan(Family::D4), Family::D52).empty());
    CHECK(match_standard(derive_cartan(Family::B4First), Family::D4).empty());
}

TEST_CASE("non-affine parameter action is rejected") {
    auto set = generator_set(Family::D4);
    set.reflections[1].param_images[2] = parse("a2 + a1^2");
    CHECK_THROWS_AS(derive_cartan(set), NonAffineAction);
}

TEST_CASE("Coxeter relations in random mode") {
    for (Family f : {Family::D4, Family::B4First, Family::B4Second, Family::D52, Family::D51}) {
        auto reports = verify_coxeter_relations(f, CheckMode::random_mode(0, 8));
        CAPTURE(family_name(f));
        CHECK(all_pass(reports));
    }
    CHECK(all_pass(verify_coxeter_relations(alternative_d4_set(), CheckMode::random_mode(0, 8))));
}

TEST_CASE("Coxeter relations in exact mode") {
    auto d4 = verify_coxeter_relations(Family::D4, CheckMode::exact_mode());
    CHECK(d4.size() == 15);
    CHECK(all_pass(d4));
    CHECK(find(d4, "coxeter/d4/(s0 s2)^3").passed());
    CHECK(find(d4, "coxeter/d4/(s0 s1)^2").passed());
    auto d52 = verify_coxeter_relations(Family::D52, CheckMode::exact_mode());
    CHECK(find(d52, "coxeter/d5-2/(s3 s4)^4").passed());
}

TEST_CASE("a broken relation is caught") {
    auto set = generator_set(Family::D4);
    auto word = parse_word(set, "s0 s2 s0 s2");
    CHECK(verify_word_is_identity(word, set.params, "bad", "d4", CheckMode::exact_mode()).status == Status::fail);
    CHECK(verify_word_is_identity(word, set.params, "bad", "d4", CheckMode::random_mode(3, 4)).status == Status::fail);
}

TEST_CASE("extended relations") {
    auto d4 = verify_extended_relations(Family::D4);
    CHECK(all_pass(d4));
    CHECK(find(d4, "extended/d4/pi4 = pi2 pi3 pi2").passed());
    CHECK(find(d4, "extended/d4/pi1 s0 pi1 = s1").passed());
    for (Family f : {Family::B4First, Family::B4Second, Family::D52}) CHECK(all_pass(verify_extended_relations(f)));
    CHECK(verify_extended_relations(Family::D51).empty());
}

TEST_CASE("translation words") {
    CHECK(translation_word(1).size() == 7);
    CHECK(translation_word(3).size() == 8);
    auto t1 = parameter_part(compose_word(translation_word(1)));
    RationalPoint p{{Var::t, 1}, {Var::a0, 1}, {Var::a1, 0}, {Var::a2, 0}, {Var::a3, 0}, {Var::a4, 0}};
    auto q = p4d::apply(t1, p);
    CHECK(q[Var::a0] == 2);
    CHECK(q[Var::a1] == 0);
    CHECK(q[Var::a2] == -1);
    CHECK(q[Var::a3] == 1);
    CHECK(q[Var::a4] == 0);
    CHECK_THROWS(translation_word(5));
}

TEST_CASE("translation shifts") {
    auto reports = verify_translation_shifts();
    CHECK(all_pass(reports));
    CHECK(find(reports, "translations/T2 shift").passed());
    CHECK(find(reports, "translations/T1 T2 = T2 T1").passed());
    CHECK(find(reports, "translations/T3^3 shift").passed());
}

TEST_CASE("words and presentation export") {
    auto set = generator_set(Family::D4);
    CHECK(parse_word(set, "s0s2pi1").size() == 3);
    CHECK(parse_word(set, "s0, s2 pi1").back().label == "pi1");
    CHECK_THROWS_AS(parse_word(set, "s0 s9"), UnknownLabel);
    auto j = to_json(derive_cartan(Family::D4));
    CHECK(j["coxeter_m"][0][2] == 3);
    CHECK(j["labels"].size() == 5);
}
