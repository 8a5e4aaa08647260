#include "p4d/systems.hpp"

#include "p4d/linalg.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

namespace p4d {

namespace {

RationalFunction v(Var var) { return RationalFunction::variable(var); }

ParameterVector alpha_params(std::vector<long> coeffs, mpq_class offset) {
    ParameterVector pv;
    pv.symbols = {Var::a0, Var::a1, Var::a2, Var::a3, Var::a4};
    AffineConstraint c;
    for (long k : coeffs) c.coeffs.emplace_back(k);
    c.offset = offset;
    pv.constraint = c;
    return pv;
}

const std::vector<CanonicalPair> kFourDim = {{Var::x, Var::y}, {Var::z, Var::w}};
const std::vector<CanonicalPair> kTwoDim = {{Var::q, Var::p}};

bool denominator_is_power_of_t(const RationalFunction& f) {
    const auto& d = f.den();
    if (d.size() != 1) return false;
    for (std::size_t i = 0; i < kVarCount; ++i)
        if (var_at(i) != Var::t && d.leading().mono.exp[i]) return false;
    return true;
}

}  // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::D4: return "d4";
        case Family::B4First: return "b4-first";
        case Family::B4Second: return "b4-second";
        case Family::D52: return "d5-2";
        case Family::D51: return "d5-1";
        case Family::PIII: return "p3";
        case Family::PIIITilde: return "p3-tilde";
        case Family::PV: return "p5";
        case Family::Custom: return "custom";
    }
    return "custom";
}

Family family_from_name(const std::string& name) {
    std::string lower;
    for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    for (Family f : catalog_families())
        if (family_name(f) == lower) return f;
    throw UnknownFamily("unknown family '" + name + "'");
}

std::vector<Family> catalog_families() {
    return {Family::D4, Family::B4First, Family::B4Second, Family::D52, Family::D51,
            Family::PIII, Family::PIIITilde, Family::PV};
}

RationalFunction ParameterVector::constraint_form() const {
    if (!constraint) return {};
    RationalFunction form = -RationalFunction(constraint->offset);
    for (std::size_t i = 0; i < symbols.size(); ++i) form += RationalFunction(constraint->coeffs[i]) * v(symbols[i]);
    return form;
}

Assignment ParameterVector::elimination() const {
    if (!constraint || symbols.empty()) return {};
    const mpq_class lead = constraint->coeffs.front();
    RationalFunction rest = RationalFunction(constraint->offset);
    for (std::size_t i = 1; i < symbols.size(); ++i) rest -= RationalFunction(constraint->coeffs[i]) * v(symbols[i]);
    return {{symbols.front(), rest * RationalFunction(1 / lead)}};
}

RationalFunction ParameterVector::reduce(const RationalFunction& f) const {
    auto e = elimination();
    return e.empty() ? f : substitute(f, e);
}

mpq_class constraint_residual(const ParameterVector& params, const RationalPoint& values) {
    if (!params.constraint) return 0;
    mpq_class sum = -params.constraint->offset;
    for (std::size_t i = 0; i < params.symbols.size(); ++i)
        sum += params.constraint->coeffs[i] * values.at(params.symbols[i]);
    return sum;
}

std::vector<Var> HamiltonianSystem::phase_vars() const {
    std::vector<Var> out;
    for (const auto& pr : pairs) {
        out.push_back(pr.position);
        out.push_back(pr.momentum);
    }
    return out;
}

const RationalFunction& VectorField::operator[](Var var) const {
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == var) return rhs[i];
    throw Error("vector field has no component for '" + std::string(var_name(var)) + "'");
}

// gamma1 enters H_III and H~_III only through gamma0 + 2 gamma1 + gamma2 = 1.
RationalFunction h_iii(const RationalFunction& q, const RationalFunction& p, const RationalFunction& g0,
                       const RationalFunction& g2) {
    const auto t = v(Var::t);
    return (q * q * p * (p - 1) + q * ((g0 + g2) * p - g0) + t * p) / t;
}

RationalFunction h_iii_tilde(const RationalFunction& q, const RationalFunction& p, const RationalFunction& g0,
                             const RationalFunction& g2) {
    const auto t = v(Var::t);
    return (q * q * p * (p - t) - q * ((-g0 + g2) * p + g0 * t) + p) / t;
}

RationalFunction h_v(const RationalFunction& q, const RationalFunction& p, const RationalFunction& g1,
                     const RationalFunction& g2, const RationalFunction& g3) {
    const auto t = v(Var::t);
    return (q * (q - 1) * p * (p + t) - (g1 + g3) * q * p + g1 * p + g2 * t * q) / t;
}

HamiltonianSystem make_hamiltonian(Family family) {
    const auto x = v(Var::x), y = v(Var::y), z = v(Var::z), w = v(Var::w), t = v(Var::t);
    const auto a0 = v(Var::a0), a1 = v(Var::a1), a3 = v(Var::a3), a4 = v(Var::a4);
    HamiltonianSystem s;
    s.family = family;
    s.pairs = kFourDim;
    switch (family) {
        case Family::D4:
            s.hamiltonian = h_iii(x, y, a1, a0) + h_iii_tilde(z, w, a3, 1 - a4) - 2 * y * w / t;
            s.params = alpha_params({1, 1, 2, 1, 1}, 1);
            break;
        case Family::B4First:
            s.hamiltonian = h_iii_tilde(x, y, a1, 2 * a0 + a1) + h_iii_tilde(z, w, a3, 1 - a4) +
                            2 * x * w * (x * y + a1) / t;
            s.params = alpha_params({2, 2, 2, 1, 1}, 1);
            break;
        case Family::B4Second:
            s.hamiltonian = h_iii(x, y, a1, a0) + h_iii(z, w, a3, 1 - a3 - 2 * a4) + 2 * y * z * (z * w + a3) / t;
            s.params = alpha_params({1, 1, 2, 2, 2}, 1);
            break;
        case Family::D52:
            s.hamiltonian = h_iii_tilde(x, y, a1, 2 * a0 + a1) + h_iii(z, w, a3, 1 - a3 - 2 * a4) -
                            2 * x * z * (x * y + a1) * (z * w + a3) / t;
            s.params = alpha_params({1, 1, 1, 1, 1}, mpq_class(1, 2));
            break;
        case Family::D51: {
            const auto b1 = v(Var::b1), b2 = v(Var::b2), b3 = v(Var::b3), b4 = v(Var::b4), b5 = v(Var::b5);
            s.hamiltonian = h_v(x, y, b2 + b5, b1, b2 + 2 * b3 + b4) + h_v(z, w, b5, b3, b4) +
                            2 * y * z * ((z - 1) * w + b3) / t;
            s.params.symbols = {Var::b0, Var::b1, Var::b2, Var::b3, Var::b4, Var::b5};
            s.params.constraint = AffineConstraint{{1, 1, 2, 2, 1, 1}, 1};
            break;
        }
        case Family::PIII:
        case Family::PIIITilde: {
            const auto q = v(Var::q), p = v(Var::p), g0 = v(Var::g0), g2 = v(Var::g2);
            s.hamiltonian = family == Family::PIII ? h_iii(q, p, g0, g2) : h_iii_tilde(q, p, g0, g2);
            s.pairs = kTwoDim;
            s.params.symbols = {Var::g0, Var::g1, Var::g2};
            s.params.constraint = AffineConstraint{{1, 2, 1}, 1};
            break;
        }
        case Family::PV:
            s.hamiltonian = h_v(v(Var::q), v(Var::p), v(Var::v1), v(Var::v2), v(Var::v3));
            s.pairs = kTwoDim;
            s.params.symbols = {Var::v1, Var::v2, Var::v3};
            break;
        case Family::Custom:
            throw UnknownFamily("the custom family has no catalog entry");
    }
    if (!denominator_is_power_of_t(s.hamiltonian))
        throw Error("cataloged Hamiltonian for " + family_name(family) + " has a denominator other than a power of t");
    return s;
}

VectorField vector_field(const HamiltonianSystem& system) {
    VectorField f;
    for (const auto& [u, p] : system.pairs) {
        f.vars.push_back(u);
        f.rhs.push_back(differentiate(system.hamiltonian, p));
        f.vars.push_back(p);
        f.rhs.push_back(-differentiate(system.hamiltonian, u));
    }
    return f;
}

std::optional<VectorField> displayed_field(Family family) {
    std::vector<const char*> rhs;
    switch (family) {
        case Family::D4:
            rhs = {"(2*x^2*y - x^2 + (a0 + a1)*x - 2*w)/t + 1",
                   "(-2*x*y^2 + 2*x*y - (a0 + a1)*y + a1)/t",
                   "(2*z^2*w - t*z^2 - (1 - a3 - a4)*z + 1 - 2*y)/t",
                   "(-2*z*w^2 + 2*t*z*w + (1 - a3 - a4)*w + a3*t)/t"};
            break;
        case Family::B4First:
            rhs = {"(2*x^2*y - t*x^2 - 2*a0*x + 1)/t + 2*x^2*w/t",
                   "(-2*x*y^2 + 2*t*x*y + 2*a0*y + a1*t)/t - 2*w*(2*x*y + a1)/t",
                   "(2*z^2*w - t*z^2 - (1 - a3 - a4)*z + 1)/t + 2*x*(x*y + a1)/t",
                   "(-2*z*w^2 + 2*t*z*w + (1 - a3 - a4)*w + a3*t)/t"};
            break;
        case Family::B4Second:
            rhs = {"(2*x^2*y - x^2 + (a0 + a1)*x + t)/t + 2*z*(z*w + a3)/t",
                   "(-2*x*y^2 + 2*x*y - (a0 + a1)*y + a1)/t",
                   "(2*z^2*w - z^2 + (1 - 2*a4)*z + t)/t + 2*y*z^2/t",
                   "(-2*z*w^2 + 2*z*w - (1 - 2*a4)*w + a3)/t - 2*y*(2*z*w + a3)/t"};
            break;
        case Family::D52:
            rhs = {"(2*x^2*y - t*x^2 - 2*a0*x + 1)/t - 2*x^2*z*(z*w + a3)/t",
                   "(-2*x*y^2 + 2*t*x*y + 2*a0*y + a1*t)/t + 2*z*(z*w + a3)*(2*x*y + a1)/t",
                   "(2*z^2*w - z^2 + (1 - 2*a4)*z + t)/t - 2*x*z^2*(x*y + a1)/t",
                   "(-2*z*w^2 + 2*z*w - (1 - 2*a4)*w + a3)/t + 2*x*(x*y + a1)*(2*z*w + a3)/t"};
            break;
        default:
            return std::nullopt;
    }
    VectorField f;
    f.vars = {Var::x, Var::y, Var::z, Var::w};
    for (const char* r : rhs) f.rhs.push_back(parse(r));
    return f;
}

Report check_field_matches_display(const HamiltonianSystem& system, const VectorField& display) {
    Stopwatch clock;
    Report r;
    r.check = "fields/" + family_name(system.family);
    r.family = family_name(system.family);
    r.mode = CheckMode::exact_mode();
    const VectorField derived = vector_field(system);
    r.status = Status::pass;
    for (std::size_t i = 0; i < derived.vars.size(); ++i) {
        const auto& shown = display[derived.vars[i]];
        if (!equals(derived.rhs[i], shown)) {
            r.status = Status::fail;
            r.witness = "d" + std::string(var_name(derived.vars[i])) + "/dt residual: " +
                        to_string(derived.rhs[i] - shown);
            break;
        }
    }
    r.elapsed_ms = clock.elapsed_ms();
    return r;
}

Report check_field_matches_display(Family family) {
    auto display = displayed_field(family);
    if (!display) throw Error("family " + family_name(family) + " has no displayed system");
    return check_field_matches_display(make_hamiltonian(family), *display);
}

unsigned phase_degree(const HamiltonianSystem& system) {
    return system.hamiltonian.num().total_degree(is_phase);
}

namespace {

// Coefficient table of a list of polynomials: one row per monomial.
RationalMatrix coefficient_rows(const std::vector<Polynomial>& columns) {
    std::unordered_map<Monomial, std::size_t, MonomialHash> row_of;
    RationalMatrix m;
    for (std::size_t j = 0; j < columns.size(); ++j) {
        for (const auto& term : columns[j].terms()) {
            auto [it, inserted] = row_of.try_emplace(term.mono, m.size());
            if (inserted) m.emplace_back(columns.size(), 0);
            m[it->second][j] = term.coeff;
        }
    }
    return m;
}

// Brings all expressions over one common denominator and returns numerators.
std::vector<Polynomial> common_numerators(const std::vector<RationalFunction>& fs) {
    Polynomial common(1);
    for (const auto& f : fs) {
        if (exact_divide(common, f.den())) continue;
        if (auto q = exact_divide(f.den(), common)) {
            common = f.den();
            continue;
        }
        common = common * f.den();
    }
    std::vector<Polynomial> out;
    for (const auto& f : fs) out.push_back(f.num() * *exact_divide(common, f.den()));
    return out;
}

std::vector<Monomial> phase_monomials(const std::vector<Var>& vars, unsigned degree_bound) {
    std::vector<Monomial> out{Monomial{}};
    for (unsigned d = 1; d <= degree_bound; ++d) {
        // all monomials of exact degree d, built by extending degree d-1 with
        // a variable no earlier than the last one used
        std::vector<std::pair<Monomial, std::size_t>> frontier{{Monomial{}, 0}};
        for (unsigned step = 0; step < d; ++step) {
            std::vector<std::pair<Monomial, std::size_t>> next;
            for (const auto& [m, first] : frontier)
                for (std::size_t k = first; k < vars.size(); ++k) next.push_back({m * Monomial::of(vars[k]), k});
            frontier = std::move(next);
        }
        for (const auto& [m, first] : frontier) out.push_back(m);
    }
    return out;
}

}  // namespace

std::vector<RationalFunction> first_integral_search(const HamiltonianSystem& system, unsigned degree_bound,
                                                    int t_lo, int t_hi) {
    if (t_lo > t_hi) throw WindowEmpty("t-power window is empty");
    const RationalFunction h = system.params.reduce(system.hamiltonian);
    std::vector<RationalFunction> dh_du, dh_dv;
    for (const auto& [u, p] : system.pairs) {
        dh_du.push_back(differentiate(h, u));
        dh_dv.push_back(differentiate(h, p));
    }

    std::vector<RationalFunction> ansatz, images;
    for (const auto& m : phase_monomials(system.phase_vars(), degree_bound)) {
        for (int k = t_lo; k <= t_hi; ++k) {
            RationalFunction f = RationalFunction(Polynomial::monomial(m, 1)) * v(system.time).pow(k);
            RationalFunction total = differentiate(f, system.time);
            for (std::size_t i = 0; i < system.pairs.size(); ++i) {
                total += differentiate(f, system.pairs[i].position) * dh_dv[i];
                total -= differentiate(f, system.pairs[i].momentum) * dh_du[i];
            }
            ansatz.push_back(f);
            images.push_back(total);
        }
    }

    auto basis = nullspace(coefficient_rows(common_numerators(images)), ansatz.size());
    std::vector<RationalFunction> out;
    for (const auto& vec : basis) {
        RationalFunction f;
        for (std::size_t j = 0; j < vec.size(); ++j)
            if (sgn(vec[j]) != 0) f += RationalFunction(vec[j]) * ansatz[j];
        out.push_back(f);
    }
    return out;
}

bool same_span(const std::vector<RationalFunction>& a, const std::vector<RationalFunction>& b) {
    std::vector<RationalFunction> all = a;
    all.insert(all.end(), b.begin(), b.end());
    auto nums = common_numerators(all);
    std::vector<Polynomial> na(nums.begin(), nums.begin() + static_cast<long>(a.size()));
    std::vector<Polynomial> nb(nums.begin() + static_cast<long>(a.size()), nums.end());
    auto r_all = rank(coefficient_rows(nums));
    return rank(coefficient_rows(na)) == r_all && rank(coefficient_rows(nb)) == r_all;
}

Json to_json(const HamiltonianSystem& system) {
    Json j;
    j["family"] = family_name(system.family);
    j["hamiltonian"] = to_json(system.hamiltonian);
    j["hamiltonian_text"] = to_string(system.hamiltonian);
    Json pairs = Json::array();
    for (const auto& [u, p] : system.pairs) pairs.push_back({std::string(var_name(u)), std::string(var_name(p))});
    j["pairs"] = pairs;
    j["time"] = std::string(var_name(system.time));
    Json params = Json::array();
    for (Var s : system.params.symbols) params.push_back(std::string(var_name(s)));
    j["parameters"] = params;
    if (system.params.constraint) {
        Json coeffs = Json::array();
        for (const auto& c : system.params.constraint->coeffs) coeffs.push_back(c.get_str());
        j["constraint"] = {{"coeffs", coeffs}, {"offset", system.params.constraint->offset.get_str()}};
    } else {
        j["constraint"] = nullptr;
    }
    return j;
}

}  // namespace p4d
