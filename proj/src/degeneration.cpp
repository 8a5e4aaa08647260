#include "p4d/degeneration.hpp"

#include "p4d/weyl.hpp"

namespace p4d {

namespace {

const std::vector<Var> kXYZW = {Var::x, Var::y, Var::z, Var::w};
const std::vector<Var> kAlphaEps = {Var::a0, Var::a1, Var::a2, Var::a3, Var::a4, Var::eps};
const std::vector<Var> kBeta = {Var::b0, Var::b1, Var::b2, Var::b3, Var::b4, Var::b5};

BirationalMap build(const std::string& label, const std::vector<std::string>& images, const std::string& time,
                    const std::vector<Var>& params, const std::vector<std::string>& param_images,
                    const std::vector<Var>& source_params) {
    BirationalMap m;
    m.label = label;
    m.vars = kXYZW;
    for (const auto& s : images) m.images.push_back(parse(s));
    m.time_image = parse(time);
    m.params = params;
    for (const auto& s : param_images) m.param_images.push_back(parse(s));
    m.source_params = source_params;
    return m;
}

}  // namespace

ConfluenceSubstitution confluence() {
    ConfluenceSubstitution c;
    c.to_old = build("confluence^-1", {"1 + x/(eps*t)", "eps*t*y", "1 + 1/(eps*t*z)", "-eps*t*(z*w + a3)*z"},
                     "-eps*t", kBeta, {"a0", "a1", "a2", "a3", "a4 - a3 - 1/eps", "1/eps"}, kAlphaEps);
    c.to_new = build("confluence", {"-(x - 1)*t", "-y/t", "-1/((z - 1)*t)", "w*(z - 1)^2*t + b3*(z - 1)*t"}, "-b5*t",
                     kAlphaEps, {"b0", "b1", "b2", "b3", "b3 + b4 + b5", "1/b5"}, kBeta);
    c.time_factor = parse("-eps");
    return c;
}

VectorField substitute_confluence(const HamiltonianSystem& d51) {
    const ConfluenceSubstitution c = confluence();
    VectorField f = pushforward_field(c.to_new, vector_field(d51));
    const Assignment back = c.to_old.assignment();
    for (auto& r : f.rhs) r = substitute(r, back);
    f.time_factor = substitute(f.time_factor, back);
    return f;
}

RationalFunction epsilon_limit(const RationalFunction& f) {
    const unsigned den_order = f.den().monomial_content()[Var::eps];
    const unsigned num_order = f.num().is_zero() ? den_order : f.num().monomial_content()[Var::eps];
    if (num_order < den_order) throw PoleAtEpsilonZero("pole of order " + std::to_string(den_order - num_order) +
                                                       " at eps = 0 in " + to_string(f));
    const RationalPoint zero{{Var::eps, 0}};
    const Polynomial scale = Polynomial::monomial(Monomial::of(Var::eps, den_order), 1);
    const Polynomial num = *exact_divide(f.num(), scale);
    const Polynomial den = *exact_divide(f.den(), scale);
    return RationalFunction(num.specialize(zero), den.specialize(zero));
}

VectorField epsilon_limit(const VectorField& field) {
    VectorField out = field;
    for (std::size_t k = 0; k < field.rhs.size(); ++k) {
        try {
            out.rhs[k] = epsilon_limit(field.rhs[k]);
        } catch (const PoleAtEpsilonZero& e) {
            throw PoleAtEpsilonZero("d" + std::string(var_name(field.vars[k])) + ": " + e.what());
        }
    }
    return out;
}

BirationalMap epsilon_limit(const BirationalMap& map) {
    BirationalMap out = map;
    for (auto& f : out.images) f = epsilon_limit(f);
    out.time_image = epsilon_limit(out.time_image);
    out.params.clear();
    out.param_images.clear();
    for (std::size_t i = 0; i < map.params.size(); ++i) {
        const RationalFunction lim = epsilon_limit(map.param_images[i]);
        if (map.params[i] == Var::eps) {
            if (!lim.is_zero()) throw PoleAtEpsilonZero("eps does not tend to 0 under " + map.label);
            continue;
        }
        out.params.push_back(map.params[i]);
        out.param_images.push_back(lim);
    }
    std::erase(out.source_params, Var::eps);
    return out;
}

BirationalMap conjugate_by_confluence(const BirationalMap& g) {
    const ConfluenceSubstitution c = confluence();
    BirationalMap m = compose(c.to_new, compose(g, c.to_old));
    m.label = g.label;
    return m;
}

std::vector<std::vector<BirationalMap>> convergent_subgroup_words() {
    const GeneratorSet d51 = generator_set(Family::D51);
    return {parse_word(d51, "w0"), parse_word(d51, "w1"), parse_word(d51, "w2"), parse_word(d51, "w3"),
            parse_word(d51, "w4 w5 w3 w4 w5")};
}

Report verify_confluence_field() {
    Stopwatch clock;
    Report r;
    r.check = "confluence/field";
    r.family = "d5-1->d4";
    r.mode = CheckMode::exact_mode();
    const HamiltonianSystem d4 = make_hamiltonian(Family::D4);
    const VectorField target = vector_field(d4);
    try {
        const VectorField lim = epsilon_limit(substitute_confluence(make_hamiltonian(Family::D51)));
        r.status = Status::pass;
        for (std::size_t k = 0; k < lim.vars.size(); ++k) {
            const RationalFunction diff = d4.params.reduce(lim.rhs[k] - target[lim.vars[k]]);
            if (!equals(diff, 0)) {
                r.status = Status::fail;
                r.witness = "d" + std::string(var_name(lim.vars[k])) + " residual: " + to_string(diff);
                break;
            }
        }
    } catch (const PoleAtEpsilonZero& e) {
        r.status = Status::fail;
        r.witness = e.what();
    }
    r.elapsed_ms = clock.elapsed_ms();
    return r;
}

std::vector<Report> verify_group_convergence() {
    const GeneratorSet d4 = generator_set(Family::D4);
    const auto words = convergent_subgroup_words();
    std::vector<Report> out;
    for (std::size_t i = 0; i < words.size(); ++i) {
        Stopwatch clock;
        Report r;
        const auto& target = d4.reflections[i];
        r.check = "confluence/" + target.label;
        r.family = "d5-1->d4";
        r.mode = CheckMode::exact_mode();
        try {
            const BirationalMap lim = epsilon_limit(conjugate_by_confluence(compose_word(words[i])));
            std::string witness;
            const bool ok = maps_equal(lim, target, d4.params, &witness);
            r.status = ok ? Status::pass : Status::fail;
            if (!ok) r.witness = witness;
        } catch (const PoleAtEpsilonZero& e) {
            r.status = Status::fail;
            r.witness = e.what();
        }
        r.elapsed_ms = clock.elapsed_ms();
        out.push_back(r);
    }
    return out;
}

}  // namespace p4d
