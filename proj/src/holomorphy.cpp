#include "p4d/holomorphy.hpp"

namespace p4d {

namespace {

const std::vector<Var> kXYZW = {Var::x, Var::y, Var::z, Var::w};

using Images = std::array<const char*, 4>;

BirationalMap chart_map(const std::string& label, const Images& images) {
    BirationalMap m = identity_map(kXYZW, {});
    m.label = label;
    for (std::size_t i = 0; i < 4; ++i) m.images[i] = parse(images[i]);
    m.order = 0;
    return m;
}

struct ChartFormula {
    Images forward;
    Images inverse;
};

// Formulas shared between chart sets.
const ChartFormula kR0Inversion{{"1/x", "-((y - 1)*x + a0)*x", "z", "w"}, {"1/x", "1 - x^2*y - a0*x", "z", "w"}};
const ChartFormula kR0Shift{{"x", "y - 2*a0/x + 1/x^2", "z", "w"}, {"x", "y + 2*a0/x - 1/x^2", "z", "w"}};
const ChartFormula kR1{{"1/x", "-(y*x + a1)*x", "z", "w"}, {"1/x", "-x^2*y - a1*x", "z", "w"}};
const ChartFormula kR2{{"-((x - z)*y - a2)*y", "1/y", "z", "w + y"}, {"z + a2*y - x*y^2", "1/y", "z", "w - 1/y"}};
const ChartFormula kR3{{"x", "y", "1/z", "-z*(w*z + a3)"}, {"x", "y", "1/z", "-z^2*w - a3*z"}};
const ChartFormula kR4Inversion{{"x", "y", "1/z", "-z*((w - t)*z + a4)"}, {"x", "y", "1/z", "t - z^2*w - a4*z"}};
const ChartFormula kR4Shift{{"x", "y", "z", "w - 2*a4/z + t/z^2"}, {"x", "y", "z", "w + 2*a4/z - t/z^2"}};

struct Entry {
    const char* index;
    const ChartFormula* formula;
    bool nested_on_r1;
};

const std::vector<Entry>& entries(const std::string& set) {
    static const std::map<std::string, std::vector<Entry>> table = {
        {"d4", {{"r0", &kR0Inversion, false}, {"r1", &kR1, false}, {"r2", &kR2, true}, {"r3", &kR3, false},
                {"r4", &kR4Inversion, false}}},
        {"b4-first", {{"r0", &kR0Shift, false}, {"r1", &kR1, false}, {"r2", &kR2, false}, {"r3", &kR3, false},
                      {"r4", &kR4Inversion, false}}},
        {"b4-second", {{"r0", &kR0Inversion, false}, {"r1", &kR1, false}, {"r2", &kR2, false}, {"r3", &kR3, false},
                       {"r4", &kR4Shift, false}}},
        {"d5-2", {{"r0", &kR0Shift, false}, {"r1", &kR1, false}, {"r2", &kR2, true}, {"r3", &kR3, false},
                  {"r4", &kR4Shift, false}}},
        {"assumption-a", {{"r0", &kR0Inversion, false}, {"r1", &kR1, false}, {"r2", &kR2, false}, {"r3", &kR3, false},
                          {"r4", &kR4Inversion, false}}},
    };
    auto it = table.find(set);
    if (it == table.end()) throw UnknownChart("unknown chart set '" + set + "'");
    return it->second;
}

Polynomial integrate(const Polynomial& p, Var v) {
    std::vector<Term> terms;
    for (const auto& t : p.terms()) {
        const unsigned e = t.mono[v];
        terms.push_back({t.mono * Monomial::of(v), t.coeff / (e + 1)});
    }
    return Polynomial::from_terms(std::move(terms));
}

Polynomial drop_phase_free(const Polynomial& p) {
    std::vector<Term> terms;
    for (const auto& t : p.terms()) {
        bool phase = false;
        for (std::size_t i = 0; i < kVarCount && !phase; ++i) phase = t.mono.exp[i] > 0 && is_phase(var_at(i));
        if (phase) terms.push_back(t);
    }
    return Polynomial::from_terms(std::move(terms));
}

}  // namespace

std::vector<std::string> chart_set_names() { return {"d4", "b4-first", "b4-second", "d5-2", "assumption-a"}; }

std::string chart_set_for(Family family) {
    switch (family) {
        case Family::D4:
        case Family::B4First:
        case Family::B4Second:
        case Family::D52: return family_name(family);
        default: throw UnknownChart("no chart set characterizes " + family_name(family));
    }
}

ChartTransform chart(const std::string& chart_set, const std::string& index) {
    for (const auto& e : entries(chart_set)) {
        if (index != e.index) continue;
        ChartTransform c;
        c.chart_set = chart_set;
        c.index = index;
        c.local = chart_map(index, e.formula->forward);
        BirationalMap local_inverse = chart_map(index + "^-1", e.formula->inverse);
        if (e.nested_on_r1) {
            const ChartTransform r1 = chart(chart_set, "r1");
            c.nested_on = "r1";
            c.forward = compose(c.local, r1.forward);
            c.inverse = compose(r1.inverse, local_inverse);
        } else {
            c.forward = c.local;
            c.inverse = local_inverse;
        }
        c.forward.label = index;
        c.inverse.label = index + "^-1";
        const Report brackets = verify_symplectic(c.forward);
        if (!brackets.passed())
            throw Error("chart " + chart_set + "/" + index + " is not canonical: " + brackets.witness.value_or(""));
        if (!maps_equal(compose(c.forward, c.inverse), identity_map(kXYZW, {}), ParameterVector{}))
            throw EliminationFails("declared inverse of " + chart_set + "/" + index + " does not undo it");
        return c;
    }
    throw UnknownChart("chart set '" + chart_set + "' has no chart '" + index + "'");
}

std::vector<ChartTransform> charts(const std::string& chart_set) {
    std::vector<ChartTransform> out;
    for (const auto& e : entries(chart_set)) out.push_back(chart(chart_set, e.index));
    return out;
}

VectorField to_chart(const VectorField& field, const ChartTransform& c) {
    if (c.inverse.images.size() != c.forward.vars.size())
        throw EliminationFails("chart " + c.index + " has no inverse in closed form");
    VectorField pushed = pushforward_field(c.forward, field);
    const Assignment back = c.inverse.assignment();
    for (auto& f : pushed.rhs) f = substitute(f, back);
    pushed.time_factor = substitute(pushed.time_factor, back);
    return pushed;
}

VectorField to_chart(const HamiltonianSystem& system, const ChartTransform& c) {
    return to_chart(vector_field(system), c);
}

std::optional<RationalFunction> as_phase_polynomial(const RationalFunction& f) {
    const Polynomial& den = f.den();
    if (!den.depends_on_any(is_phase)) return f;
    Monomial outside = den.monomial_content();
    for (std::size_t i = 0; i < kVarCount; ++i)
        if (is_phase(var_at(i))) outside.exp[i] = 0;
    outside = Monomial::gcd(outside, outside);  // refresh the cached degree
    const Polynomial scale = Polynomial::monomial(outside, 1);
    const auto rest = exact_divide(den, scale);
    if (!rest || !rest->depends_on_any(is_phase)) return f;
    const auto q = exact_divide(f.num(), *rest);
    if (!q) return std::nullopt;
    return RationalFunction(*q, scale);
}

std::optional<std::string> polynomiality_witness(const VectorField& field) {
    for (std::size_t k = 0; k < field.vars.size(); ++k)
        if (!as_phase_polynomial(field.rhs[k]))
            return "d" + std::string(var_name(field.vars[k])) + " has denominator " + to_string(field.rhs[k].den());
    return std::nullopt;
}

RationalFunction reconstruct_hamiltonian(const VectorField& field, const std::vector<CanonicalPair>& pairs) {
    std::vector<Var> vars;
    std::vector<RationalFunction> grad;
    for (const auto& [u, v] : pairs) {
        vars.push_back(u);
        grad.push_back(-field[v]);
        vars.push_back(v);
        grad.push_back(field[u]);
    }
    for (std::size_t i = 0; i < grad.size(); ++i) {
        auto p = as_phase_polynomial(grad[i]);
        if (!p) throw NotHamiltonian("gradient component along " + std::string(var_name(vars[i])) + " is not polynomial");
        grad[i] = *p;
    }
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = i + 1; j < vars.size(); ++j) {
            const RationalFunction r = differentiate(grad[i], vars[j]) - differentiate(grad[j], vars[i]);
            if (!equals(r, 0))
                throw NotHamiltonian("mixed partials along " + std::string(var_name(vars[i])) + ", " +
                                     std::string(var_name(vars[j])) + " differ by " + to_string(r));
        }
    RationalFunction k;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        const RationalFunction rest = grad[i] - differentiate(k, vars[i]);
        if (rest.is_zero()) continue;
        k += RationalFunction(integrate(rest.num(), vars[i]), rest.den());
    }
    return RationalFunction(drop_phase_free(k.num()), k.den());
}

std::vector<Report> verify_chart_polynomiality(const HamiltonianSystem& system, const std::string& chart_set,
                                               CheckMode mode) {
    const VectorField field = vector_field(system);
    std::vector<Report> out;
    for (const auto& c : charts(chart_set)) {
        Stopwatch clock;
        Report r;
        r.family = family_name(system.family);
        r.check = "holomorphy/" + r.family + "/" + chart_set + "/" + c.index;
        r.mode = mode;
        VectorField in_chart = to_chart(field, c);
        // Pole terms may cancel only on the normalization hyperplane.
        for (auto& f : in_chart.rhs) f = system.params.reduce(f);
        if (!mode.exact) {
            PointSampler sampler(seed_for(mode.seed, r.check));
            RationalPoint values = sampler.point({system.time}, system.params);
            for (auto& f : in_chart.rhs) f = specialize(f, values);
        }
        std::optional<std::string> witness = polynomiality_witness(in_chart);
        if (!witness) {
            try {
                const RationalFunction k = reconstruct_hamiltonian(in_chart, system.pairs);
                if (!as_phase_polynomial(k)) witness = "chart Hamiltonian is not polynomial";
            } catch (const NotHamiltonian& e) {
                witness = e.what();
            }
        }
        r.status = witness ? Status::fail : Status::pass;
        r.witness = witness;
        r.elapsed_ms = clock.elapsed_ms();
        out.push_back(r);
    }
    return out;
}

std::vector<Report> probe_assumption_a(const HamiltonianSystem& system) {
    std::vector<Report> out = verify_chart_polynomiality(system, "assumption-a");
    for (auto& r : out) {
        r.witness = r.passed() ? std::string("polynomial") : "not polynomial: " + r.witness.value_or("");
        r.status = Status::inconclusive;
    }
    return out;
}

Json to_json(const ChartTransform& c) {
    Json images = Json::object();
    for (std::size_t i = 0; i < c.local.vars.size(); ++i)
        images[std::string(var_name(c.local.vars[i]))] = to_string(c.local.images[i]);
    Json j{{"chart_set", c.chart_set}, {"index", c.index}, {"images", images}};
    j["nested_on"] = c.nested_on ? Json(*c.nested_on) : Json(nullptr);
    return j;
}

}  // namespace p4d
