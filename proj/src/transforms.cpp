#include "p4d/transforms.hpp"

#include <algorithm>
#include <sstream>

namespace p4d {

namespace {

const std::vector<Var> kXYZW = {Var::x, Var::y, Var::z, Var::w};
const std::vector<Var> kAlpha = {Var::a0, Var::a1, Var::a2, Var::a3, Var::a4};
const std::vector<Var> kBeta = {Var::b0, Var::b1, Var::b2, Var::b3, Var::b4, Var::b5};

constexpr std::size_t kWitnessLimit = 4000;

std::string clip(std::string s) {
    if (s.size() > kWitnessLimit) s = s.substr(0, kWitnessLimit) + " ...";
    return s;
}

BirationalMap make_map(std::string label, const std::vector<Var>& vars, std::vector<std::string> images,
                       const std::string& time_image, const std::vector<Var>& params,
                       std::vector<std::string> param_images, int order = 2) {
    BirationalMap m;
    m.label = std::move(label);
    m.vars = vars;
    for (const auto& s : images) m.images.push_back(parse(s));
    m.time_image = parse(time_image);
    m.params = params;
    m.source_params = params;
    for (const auto& s : param_images) m.param_images.push_back(parse(s));
    m.order = order;
    return m;
}

std::string point_text(const RationalPoint& p) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [v, q] : p) {
        os << (first ? "" : ", ") << var_name(v) << "=" << q.get_str();
        first = false;
    }
    return os.str();
}

}  // namespace

Assignment BirationalMap::assignment() const {
    Assignment a;
    for (std::size_t i = 0; i < vars.size(); ++i) a[vars[i]] = images[i];
    a[time] = time_image;
    for (std::size_t i = 0; i < params.size(); ++i) a[params[i]] = param_images[i];
    return a;
}

const RationalFunction& BirationalMap::image(Var v) const {
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == v) return images[i];
    throw Error("map " + label + " has no image for '" + std::string(var_name(v)) + "'");
}

const RationalFunction& BirationalMap::param_image(Var v) const {
    for (std::size_t i = 0; i < params.size(); ++i)
        if (params[i] == v) return param_images[i];
    throw Error("map " + label + " has no image for parameter '" + std::string(var_name(v)) + "'");
}

BirationalMap identity_map(const std::vector<Var>& vars, const std::vector<Var>& params, Var time) {
    BirationalMap m;
    m.label = "id";
    m.vars = vars;
    for (Var v : vars) m.images.push_back(RationalFunction::variable(v));
    m.time = time;
    m.time_image = RationalFunction::variable(time);
    m.params = params;
    m.source_params = params;
    for (Var v : params) m.param_images.push_back(RationalFunction::variable(v));
    m.order = 1;
    return m;
}

BirationalMap compose(const BirationalMap& outer, const BirationalMap& inner) {
    const Assignment a = inner.assignment();
    BirationalMap m;
    m.label = inner.label + " " + outer.label;
    m.vars = outer.vars;
    for (const auto& img : outer.images) m.images.push_back(substitute(img, a));
    m.time = outer.time;
    m.time_image = substitute(outer.time_image, a);
    m.params = outer.params;
    for (const auto& img : outer.param_images) m.param_images.push_back(substitute(img, a));
    m.source_params = inner.source_params;
    return m;
}

BirationalMap compose_word(const std::vector<BirationalMap>& word) {
    if (word.empty()) throw Error("empty word");
    BirationalMap acc = word.front();
    for (std::size_t i = 1; i < word.size(); ++i) acc = compose(word[i], acc);
    acc.order = 0;
    return acc;
}

RationalPoint apply(const BirationalMap& map, const RationalPoint& point) {
    RationalPoint out = point;
    for (std::size_t i = 0; i < map.vars.size(); ++i) out[map.vars[i]] = eval(map.images[i], point);
    out[map.time] = eval(map.time_image, point);
    for (Var s : map.source_params) out.erase(s);
    for (std::size_t i = 0; i < map.params.size(); ++i) out[map.params[i]] = eval(map.param_images[i], point);
    return out;
}

// --- catalog ------------------------------------------------------------------

const BirationalMap& GeneratorSet::get(const std::string& label) const {
    for (const auto& g : reflections)
        if (g.label == label) return g;
    for (const auto& g : automorphisms)
        if (g.label == label) return g;
    throw UnknownLabel("generator '" + label + "' is not in the catalog of " + name);
}

std::vector<std::string> GeneratorSet::labels() const {
    std::vector<std::string> out;
    for (const auto& g : reflections) out.push_back(g.label);
    for (const auto& g : automorphisms) out.push_back(g.label);
    return out;
}

GeneratorSet generator_set(Family family) {
    GeneratorSet g;
    g.name = family_name(family);
    const auto A = kAlpha;
    switch (family) {
        case Family::D4:
            g.params = make_hamiltonian(family).params;
            g.reflections = {
                make_map("s0", kXYZW, {"x + a0/(y - 1)", "y", "z", "w"}, "t", A, {"-a0", "a1", "a2 + a0", "a3", "a4"}),
                make_map("s1", kXYZW, {"x + a1/y", "y", "z", "w"}, "t", A, {"a0", "-a1", "a2 + a1", "a3", "a4"}),
                make_map("s2", kXYZW, {"x", "y - a2*z/(x*z - 1)", "z", "w - a2*x/(x*z - 1)"}, "t", A,
                         {"a0 + a2", "a1 + a2", "-a2", "a3 + a2", "a4 + a2"}),
                make_map("s3", kXYZW, {"x", "y", "z + a3/w", "w"}, "t", A, {"a0", "a1", "a2 + a3", "-a3", "a4"}),
                make_map("s4", kXYZW, {"x", "y", "z + a4/(w - t)", "w"}, "t", A, {"a0", "a1", "a2 + a4", "a3", "-a4"}),
            };
            g.automorphisms = {
                make_map("pi1", kXYZW, {"-x", "1 - y", "-z", "-w"}, "-t", A, {"a1", "a0", "a2", "a3", "a4"}),
                make_map("pi2", kXYZW, {"x", "y", "z", "w - t"}, "-t", A, {"a0", "a1", "a2", "a4", "a3"}),
                make_map("pi3", kXYZW, {"t*z", "w/t", "x/t", "t*y"}, "t", A, {"a4", "a3", "a2", "a1", "a0"}),
                make_map("pi4", kXYZW, {"-t*z", "(t - w)/t", "-x/t", "t - t*y"}, "t", A, {"a3", "a4", "a2", "a0", "a1"}),
            };
            break;
        case Family::B4First:
            g.params = make_hamiltonian(family).params;
            g.reflections = {
                make_map("s0", kXYZW, {"-x", "-y + 2*a0/x - 1/x^2", "-z", "-w"}, "-t", A,
                         {"-a0", "a1 + 2*a0", "a2", "a3", "a4"}),
                make_map("s1", kXYZW, {"x + a1/y", "y", "z", "w"}, "t", A, {"a0 + a1", "-a1", "a2 + a1", "a3", "a4"}),
                make_map("s2", kXYZW, {"x", "y - a2/(x - z)", "z", "w + a2/(x - z)"}, "t", A,
                         {"a0", "a1 + a2", "-a2", "a3 + a2", "a4 + a2"}),
                make_map("s3", kXYZW, {"x", "y", "z + a3/w", "w"}, "t", A, {"a0", "a1", "a2 + a3", "-a3", "a4"}),
                make_map("s4", kXYZW, {"x", "y", "z + a4/(w - t)", "w"}, "t", A, {"a0", "a1", "a2 + a4", "a3", "-a4"}),
            };
            g.automorphisms = {
                make_map("phi", kXYZW, {"x", "y", "z", "w - t"}, "-t", A, {"a0", "a1", "a2", "a4", "a3"}),
            };
            break;
        case Family::B4Second:
            g.params = make_hamiltonian(family).params;
            g.reflections = {
                make_map("s0", kXYZW, {"x + a0/(y - 1)", "y", "z", "w"}, "t", A, {"-a0", "a1", "a2 + a0", "a3", "a4"}),
                make_map("s1", kXYZW, {"x + a1/y", "y", "z", "w"}, "t", A, {"a0", "-a1", "a2 + a1", "a3", "a4"}),
                make_map("s2", kXYZW, {"x", "y - a2/(x - z)", "z", "w + a2/(x - z)"}, "t", A,
                         {"a0 + a2", "a1 + a2", "-a2", "a3 + a2", "a4"}),
                make_map("s3", kXYZW, {"x", "y", "z + a3/w", "w"}, "t", A, {"a0", "a1", "a2 + a3", "-a3", "a4 + a3"}),
                make_map("s4", kXYZW, {"x", "y", "z", "w - 2*a4/z + t/z^2"}, "-t", A,
                         {"a0", "a1", "a2", "a3 + 2*a4", "-a4"}),
            };
            g.automorphisms = {
                make_map("phi", kXYZW, {"-x", "1 - y", "-z", "-w"}, "-t", A, {"a1", "a0", "a2", "a3", "a4"}),
            };
            break;
        case Family::D52:
            g.params = make_hamiltonian(family).params;
            g.reflections = {
                make_map("s0", kXYZW, {"-x", "-y + 2*a0/x - 1/x^2", "-z", "-w"}, "-t", A,
                         {"-a0", "a1 + 2*a0", "a2", "a3", "a4"}),
                make_map("s1", kXYZW, {"x + a1/y", "y", "z", "w"}, "t", A, {"a0 + a1", "-a1", "a2 + a1", "a3", "a4"}),
                make_map("s2", kXYZW, {"x", "y - a2*z/(x*z - 1)", "z", "w - a2*x/(x*z - 1)"}, "t", A,
                         {"a0", "a1 + a2", "-a2", "a3 + a2", "a4"}),
                make_map("s3", kXYZW, {"x", "y", "z + a3/w", "w"}, "t", A, {"a0", "a1", "a2 + a3", "-a3", "a4 + a3"}),
                make_map("s4", kXYZW, {"x", "y", "z", "w - 2*a4/z + t/z^2"}, "-t", A,
                         {"a0", "a1", "a2", "a3 + 2*a4", "-a4"}),
            };
            g.automorphisms = {
                make_map("psi", kXYZW, {"z/t", "t*w", "t*x", "y/t"}, "t", A, {"a4", "a3", "a2", "a1", "a0"}),
            };
            break;
        case Family::D51: {
            g.params = make_hamiltonian(family).params;
            const auto B = kBeta;
            g.reflections = {
                make_map("w0", kXYZW, {"x + b0/(y + t)", "y", "z", "w"}, "t", B,
                         {"-b0", "b1", "b2 + b0", "b3", "b4", "b5"}),
                make_map("w1", kXYZW, {"x + b1/y", "y", "z", "w"}, "t", B, {"b0", "-b1", "b2 + b1", "b3", "b4", "b5"}),
                make_map("w2", kXYZW, {"x", "y - b2/(x - z)", "z", "w + b2/(x - z)"}, "t", B,
                         {"b0 + b2", "b1 + b2", "-b2", "b3 + b2", "b4", "b5"}),
                make_map("w3", kXYZW, {"x", "y", "z + b3/w", "w"}, "t", B,
                         {"b0", "b1", "b2 + b3", "-b3", "b4 + b3", "b5 + b3"}),
                make_map("w4", kXYZW, {"x", "y", "z", "w - b4/(z - 1)"}, "t", B,
                         {"b0", "b1", "b2", "b3 + b4", "-b4", "b5"}),
                make_map("w5", kXYZW, {"x", "y", "z", "w - b5/z"}, "t", B, {"b0", "b1", "b2", "b3 + b5", "b4", "-b5"}),
            };
            break;
        }
        default:
            throw UnknownFamily("family " + family_name(family) + " has no generator catalog");
    }
    return g;
}

GeneratorSet alternative_d4_set() {
    GeneratorSet g;
    g.name = "d4-alt";
    g.params = make_hamiltonian(Family::D4).params;
    const auto A = kAlpha;
    g.reflections = {
        make_map("w0", kXYZW, {"x + a0/(y - 1)", "y", "z", "w"}, "t", A, {"-a0", "a1", "a2 + a0", "a3", "a4"}),
        make_map("w1", kXYZW, {"x + a1/y", "y", "z", "w"}, "t", A, {"a0", "-a1", "a2 + a1", "a3", "a4"}),
        make_map("w2", kXYZW, {"x", "y - a2/(x - z)", "z", "w + a2/(x - z)"}, "t", A,
                 {"a0 + a2", "a1 + a2", "-a2", "a3 + a2", "a4 + a2"}),
        make_map("w3", kXYZW, {"x", "y", "z + a3/w", "w"}, "t", A, {"a0", "a1", "a2 + a3", "-a3", "a4"}),
        make_map("w4", kXYZW, {"x", "y", "z + a4/(w - t)", "w"}, "t", A, {"a0", "a1", "a2 + a4", "a3", "-a4"}),
    };
    return g;
}

BirationalMap generator(Family family, const std::string& label) { return generator_set(family).get(label); }

std::vector<Equivalence> all_equivalences() {
    return {Equivalence::D4ToB4First, Equivalence::D4ToB4Second, Equivalence::B4FirstToB4Second, Equivalence::D4ToD52,
            Equivalence::P3ToP3Tilde};
}

std::string equivalence_name(Equivalence e) {
    switch (e) {
        case Equivalence::D4ToB4First: return "d4->b4-first";
        case Equivalence::D4ToB4Second: return "d4->b4-second";
        case Equivalence::B4FirstToB4Second: return "b4-first->b4-second";
        case Equivalence::D4ToD52: return "d4->d5-2";
        case Equivalence::P3ToP3Tilde: return "p3->p3-tilde";
    }
    return "";
}

Family equivalence_source(Equivalence e) {
    switch (e) {
        case Equivalence::B4FirstToB4Second: return Family::B4First;
        case Equivalence::P3ToP3Tilde: return Family::PIII;
        default: return Family::D4;
    }
}

Family equivalence_target(Equivalence e) {
    switch (e) {
        case Equivalence::D4ToB4First: return Family::B4First;
        case Equivalence::D4ToB4Second:
        case Equivalence::B4FirstToB4Second: return Family::B4Second;
        case Equivalence::D4ToD52: return Family::D52;
        case Equivalence::P3ToP3Tilde: return Family::PIIITilde;
    }
    return Family::Custom;
}

BirationalMap equivalence_map(Equivalence e) {
    const auto A = kAlpha;
    const std::string label = equivalence_name(e);
    switch (e) {
        case Equivalence::D4ToB4First:
            return make_map(label, kXYZW, {"1/x", "-(x*y + a1)*x", "z", "w"}, "t", A,
                            {"(a0 - a1)/2", "a1", "a2", "a3", "a4"}, 0);
        case Equivalence::D4ToB4Second:
            return make_map(label, kXYZW, {"x", "y", "1/z", "-(z*w + a3)*z"}, "t", A,
                            {"a0", "a1", "a2", "a3", "(a4 - a3)/2"}, 0);
        case Equivalence::B4FirstToB4Second:
            return make_map(label, kXYZW, {"1/x", "-(x*y + a1)*x", "1/z", "-(z*w + a3)*z"}, "t", A,
                            {"2*a0 + a1", "a1", "a2", "a3", "(a4 - a3)/2"}, 0);
        case Equivalence::D4ToD52:
            return make_map(label, kXYZW, {"1/x", "-(x*y + a1)*x", "1/z", "-(z*w + a3)*z"}, "t", A,
                            {"(a0 - a1)/2", "a1", "a2", "a3", "(a4 - a3)/2"}, 0);
        case Equivalence::P3ToP3Tilde:
            return make_map(label, {Var::q, Var::p}, {"1/q", "-q*(q*p + g0)"}, "t", {Var::g0, Var::g1, Var::g2},
                            {"g0", "g1", "g2"}, 0);
    }
    throw Error("unknown equivalence");
}

// --- verification -------------------------------------------------------------

VectorField pushforward_field(const BirationalMap& map, const VectorField& field) {
    const RationalFunction dT = differentiate(map.time_image, map.time);
    if (dT.is_zero()) throw NonInvertibleTime("time image of " + map.label + " does not depend on t");
    VectorField out;
    out.vars = map.vars;
    out.time_factor = field.time_factor * dT;
    for (const auto& g : map.images) {
        RationalFunction total = differentiate(g, map.time);
        for (std::size_t i = 0; i < field.vars.size(); ++i) {
            RationalFunction dg = differentiate(g, field.vars[i]);
            if (!dg.is_zero()) total += dg * field.rhs[i];
        }
        out.rhs.push_back(total / dT);
    }
    return out;
}

mpq_class PointSampler::rational() {
    std::uniform_int_distribution<int> num(-1000, 1000), den(1, 1000);
    int n = 0;
    while (n == 0) n = num(rng_);
    mpq_class q(n, den(rng_));
    q.canonicalize();
    return q;
}

RationalPoint PointSampler::point(const std::vector<Var>& free_vars, const ParameterVector& params) {
    RationalPoint p;
    for (Var v : free_vars) p[v] = rational();
    for (std::size_t i = 0; i < params.symbols.size(); ++i)
        if (i > 0 || !params.constraint) p[params.symbols[i]] = rational();
    if (params.constraint && !params.symbols.empty()) {
        const auto& c = *params.constraint;
        mpq_class rest = c.offset;
        for (std::size_t i = 1; i < params.symbols.size(); ++i) rest -= c.coeffs[i] * p[params.symbols[i]];
        p[params.symbols.front()] = rest / c.coeffs.front();
    }
    return p;
}

std::uint64_t seed_for(std::uint64_t base, const std::string& check) {
    std::uint64_t h = 1469598103934665603ull ^ base;
    for (unsigned char c : check) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

constexpr int kMaxResamples = 64;

// Compares lhs (evaluated at the sample) against rhs (evaluated at the map
// image of the sample) component by component.
bool random_field_check(const BirationalMap& map, const VectorField& pushed, const VectorField& target,
                        const ParameterVector& params, CheckMode mode, const std::string& check,
                        std::string& witness) {
    PointSampler sampler(seed_for(mode.seed, check));
    std::vector<Var> free = map.vars;
    free.push_back(map.time);
    int done = 0, attempts = 0;
    while (done < mode.samples) {
        if (++attempts > mode.samples + kMaxResamples) {
            witness = "too many singular sample points";
            return false;
        }
        RationalPoint p = sampler.point(free, params);
        try {
            RationalPoint q = p4d::apply(map, p);
            for (std::size_t k = 0; k < pushed.vars.size(); ++k) {
                mpq_class lhs = eval(pushed.rhs[k], p);
                mpq_class rhs = eval(target[pushed.vars[k]], q);
                if (lhs != rhs) {
                    witness = "d" + std::string(var_name(pushed.vars[k])) + " differs at " + point_text(p) + ": " +
                              lhs.get_str() + " vs " + rhs.get_str();
                    return false;
                }
            }
            ++done;
        } catch (const DenominatorZeroAtPoint&) {
        }
    }
    return true;
}

bool exact_field_check(const BirationalMap& map, const VectorField& pushed, const VectorField& target,
                       const ParameterVector& params, std::string& witness) {
    const Assignment a = map.assignment();
    for (std::size_t k = 0; k < pushed.vars.size(); ++k) {
        RationalFunction lhs = params.reduce(pushed.rhs[k]);
        RationalFunction rhs = params.reduce(substitute(target[pushed.vars[k]], a));
        if (!equals(lhs, rhs)) {
            witness = "d" + std::string(var_name(pushed.vars[k])) + " residual: " + clip(to_string(lhs - rhs));
            return false;
        }
    }
    return true;
}

}  // namespace

Report verify_symmetry(const BirationalMap& map, const HamiltonianSystem& system, CheckMode mode) {
    Stopwatch clock;
    Report r;
    r.family = family_name(system.family);
    r.check = "symmetry/" + r.family + "/" + map.label;
    r.mode = mode;
    const VectorField field = vector_field(system);
    const VectorField pushed = pushforward_field(map, field);
    std::string witness;
    bool ok = mode.exact ? exact_field_check(map, pushed, field, system.params, witness)
                         : random_field_check(map, pushed, field, system.params, mode, r.check, witness);
    r.status = ok ? Status::pass : Status::fail;
    if (!ok) r.witness = witness;
    r.elapsed_ms = clock.elapsed_ms();
    return r;
}

Report verify_symplectic(const BirationalMap& map) {
    Stopwatch clock;
    Report r;
    r.check = "symplectic/" + map.label;
    r.family = "";
    r.mode = CheckMode::exact_mode();
    r.status = Status::pass;
    const auto& vars = map.vars;
    auto bracket = [&](const RationalFunction& f, const RationalFunction& g) {
        RationalFunction s;
        for (std::size_t k = 0; k + 1 < vars.size(); k += 2) {
            s += differentiate(f, vars[k]) * differentiate(g, vars[k + 1]);
            s -= differentiate(f, vars[k + 1]) * differentiate(g, vars[k]);
        }
        return s;
    };
    for (std::size_t i = 0; i < vars.size() && r.passed(); ++i) {
        for (std::size_t j = i + 1; j < vars.size(); ++j) {
            RationalFunction expected = (i % 2 == 0 && j == i + 1) ? RationalFunction(1) : RationalFunction(0);
            RationalFunction got = bracket(map.images[i], map.images[j]);
            if (!equals(got, expected)) {
                r.status = Status::fail;
                r.witness = "{" + std::string(var_name(vars[i])) + "," + std::string(var_name(vars[j])) +
                            "} = " + clip(to_string(got));
                break;
            }
        }
    }
    r.elapsed_ms = clock.elapsed_ms();
    return r;
}

Report verify_equivalence(const BirationalMap& map, const HamiltonianSystem& source, const HamiltonianSystem& target,
                          CheckMode mode) {
    Stopwatch clock;
    Report r;
    r.family = family_name(source.family) + "->" + family_name(target.family);
    r.check = "equivalence/" + map.label;
    r.mode = mode;
    const VectorField pushed = pushforward_field(map, vector_field(source));
    const VectorField target_field = vector_field(target);
    std::string witness;
    bool ok = mode.exact ? exact_field_check(map, pushed, target_field, source.params, witness)
                         : random_field_check(map, pushed, target_field, source.params, mode, r.check, witness);
    if (ok) {
        // K o map * dT/dt - H must be a function of t alone.
        const RationalFunction dT = differentiate(map.time_image, map.time);
        const RationalFunction diff =
            source.params.reduce(substitute(target.hamiltonian, map.assignment()) * dT - source.hamiltonian);
        for (Var v : source.phase_vars()) {
            RationalFunction d = differentiate(diff, v);
            if (!d.is_zero() && !equals(d, 0)) {
                ok = false;
                witness = "Hamiltonian difference depends on " + std::string(var_name(v)) + ": " + clip(to_string(diff));
                break;
            }
        }
    }
    r.status = ok ? Status::pass : Status::fail;
    if (!ok) r.witness = witness;
    r.elapsed_ms = clock.elapsed_ms();
    return r;
}

bool maps_equal(const BirationalMap& a, const BirationalMap& b, const ParameterVector& params, std::string* witness) {
    auto differ = [&](const std::string& what, const RationalFunction& fa, const RationalFunction& fb) {
        RationalFunction ra = params.reduce(fa), rb = params.reduce(fb);
        if (equals(ra, rb)) return false;
        if (witness) *witness = what + " residual: " + clip(to_string(ra - rb));
        return true;
    };
    for (std::size_t i = 0; i < a.vars.size(); ++i)
        if (differ(std::string(var_name(a.vars[i])), a.images[i], b.image(a.vars[i]))) return false;
    if (differ("t", a.time_image, b.time_image)) return false;
    for (std::size_t i = 0; i < a.params.size(); ++i)
        if (differ(std::string(var_name(a.params[i])), a.param_images[i], b.param_image(a.params[i]))) return false;
    return true;
}

bool maps_agree_at_points(const BirationalMap& a, const BirationalMap& b, const ParameterVector& params,
                          CheckMode mode, std::string* witness) {
    PointSampler sampler(seed_for(mode.seed, a.label + "|" + b.label));
    std::vector<Var> free = a.vars;
    free.push_back(a.time);
    int done = 0, attempts = 0;
    while (done < mode.samples) {
        if (++attempts > mode.samples + kMaxResamples) {
            if (witness) *witness = "too many singular sample points";
            return false;
        }
        RationalPoint p = sampler.point(free, params);
        try {
            RationalPoint qa = p4d::apply(a, p), qb = p4d::apply(b, p);
            if (qa != qb) {
                if (witness) *witness = "images differ at " + point_text(p);
                return false;
            }
            ++done;
        } catch (const DenominatorZeroAtPoint&) {
        }
    }
    return true;
}

Json to_json(const BirationalMap& map) {
    Json j;
    j["label"] = map.label;
    Json images = Json::object(), texts = Json::object();
    for (std::size_t i = 0; i < map.vars.size(); ++i) {
        images[std::string(var_name(map.vars[i]))] = to_json(map.images[i]);
        texts[std::string(var_name(map.vars[i]))] = to_string(map.images[i]);
    }
    j["images"] = images;
    j["images_text"] = texts;
    j["time_image"] = to_string(map.time_image);
    Json pnames = Json::array(), ptexts = Json::array();
    for (std::size_t i = 0; i < map.params.size(); ++i) {
        pnames.push_back(std::string(var_name(map.params[i])));
        ptexts.push_back(to_string(map.param_images[i]));
    }
    j["params"] = pnames;
    j["param_images"] = ptexts;

    // Affine parameter matrix [coefficients..., offset] when the action is affine.
    Json matrix = Json::array();
    bool affine = true;
    for (const auto& img : map.param_images) {
        if (!img.is_polynomial() || img.num().total_degree() > 1) {
            affine = false;
            break;
        }
        RationalPoint zero;
        for (Var s : map.source_params) zero[s] = 0;
        Json row = Json::array();
        for (Var s : map.source_params) row.push_back(differentiate(img, s).num().constant_value().get_str());
        row.push_back(eval(img, zero).get_str());
        matrix.push_back(row);
    }
    j["param_matrix"] = affine ? matrix : Json(nullptr);
    if (map.order) j["order"] = map.order;
    return j;
}

}  // namespace p4d
