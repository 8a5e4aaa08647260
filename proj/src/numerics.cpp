#include "p4d/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace p4d {

namespace {

using PowerTable = std::vector<std::vector<Complex>>;

void fill_powers(PowerTable& table, const std::vector<std::pair<std::uint8_t, unsigned>>& max_exp,
                 const std::array<Complex, kVarCount>& env) {
    table.resize(kVarCount);
    for (const auto& [v, e] : max_exp) {
        auto& row = table[v];
        row.resize(e + 1);
        row[0] = 1;
        for (unsigned k = 1; k <= e; ++k) row[k] = row[k - 1] * env[v];
    }
}

void merge_max(std::vector<std::pair<std::uint8_t, unsigned>>& acc, const Polynomial& p) {
    for (const auto& t : p.terms())
        for (std::uint8_t i = 0; i < kVarCount; ++i) {
            if (!t.mono.exp[i]) continue;
            auto it = std::find_if(acc.begin(), acc.end(), [&](const auto& e) { return e.first == i; });
            if (it == acc.end()) acc.emplace_back(i, t.mono.exp[i]);
            else it->second = std::max<unsigned>(it->second, t.mono.exp[i]);
        }
}

// Dormand-Prince 5(4) tableau and the dense-output weights of its
// continuous extension.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

ComplexState axpy(const ComplexState& y, double h, std::initializer_list<std::pair<double, const ComplexState*>> ks) {
    ComplexState out = y;
    for (const auto& [a, k] : ks)
        if (a != 0)
            for (std::size_t i = 0; i < out.size(); ++i) out[i] += h * a * (*k)[i];
    return out;
}

Complex eval_complex(const RationalFunction& f, const std::array<Complex, kVarCount>& env) {
    double den = 0;
    const Complex v = CompiledRational(f).eval(env, &den);
    if (den < kDenominatorGuard) throw DenominatorZeroAtPoint("denominator below guard in " + to_string(f));
    return v;
}

}  // namespace

// --- compiled expressions ----------------------------------------------------

CompiledRational::CompiledRational(const RationalFunction& f) {
    auto compile = [](const Polynomial& p) {
        CompiledPoly c;
        for (const auto& t : p.terms()) {
            std::vector<std::pair<std::uint8_t, std::uint8_t>> exps;
            for (std::uint8_t i = 0; i < kVarCount; ++i)
                if (t.mono.exp[i]) exps.emplace_back(i, t.mono.exp[i]);
            c.terms.emplace_back(Complex(t.coeff.get_d()), std::move(exps));
        }
        return c;
    };
    num_ = compile(f.num());
    den_ = compile(f.den());
    merge_max(max_exp_, f.num());
    merge_max(max_exp_, f.den());
}

Complex CompiledRational::CompiledPoly::eval(const PowerTable& powers) const {
    Complex s = 0;
    for (const auto& [c, exps] : terms) {
        Complex m = c;
        for (const auto& [v, e] : exps) m *= powers[v][e];
        s += m;
    }
    return s;
}

Complex CompiledRational::eval(const std::array<Complex, kVarCount>& env, double* den_abs) const {
    thread_local PowerTable table;
    fill_powers(table, max_exp_, env);
    const Complex d = den_.eval(table);
    if (den_abs) *den_abs = std::abs(d);
    return num_.eval(table) / d;
}

CompiledField::CompiledField(const VectorField& field, Var time, const ComplexParams& params)
    : vars_(field.vars), time_(time) {
    for (const auto& f : field.rhs) rhs_.emplace_back(f);
    for (const auto& [v, c] : params) base_[index(v)] = c;
}

bool CompiledField::eval(Complex t, const ComplexState& state, ComplexState& out) const {
    std::array<Complex, kVarCount> env = base_;
    env[index(time_)] = t;
    for (std::size_t i = 0; i < vars_.size(); ++i) env[index(vars_[i])] = state[i];
    out.resize(rhs_.size());
    for (std::size_t i = 0; i < rhs_.size(); ++i) {
        double den = 0;
        out[i] = rhs_[i].eval(env, &den);
        if (!(den >= kDenominatorGuard) || !std::isfinite(std::abs(out[i]))) return false;
    }
    return true;
}

// --- paths and trajectories --------------------------------------------------

Complex Path::at(double tau) const {
    const std::size_t n = vertices.size() - 1;
    std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(std::max(tau, 0.0)), n - 1);
    return vertices[k] + (tau - static_cast<double>(k)) * (vertices[k + 1] - vertices[k]);
}

Complex Path::velocity(double tau) const {
    const std::size_t n = vertices.size() - 1;
    std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(std::max(tau, 0.0)), n - 1);
    return vertices[k + 1] - vertices[k];
}

bool Path::passes_near(Complex point, double radius) const {
    for (std::size_t k = 0; k + 1 < vertices.size(); ++k) {
        const Complex a = vertices[k], d = vertices[k + 1] - vertices[k];
        const double len2 = std::norm(d);
        double s = len2 > 0 ? ((point - a) * std::conj(d)).real() / len2 : 0;
        s = std::clamp(s, 0.0, 1.0);
        if (std::abs(a + s * d - point) < radius) return true;
    }
    return false;
}

ComplexState Trajectory::state_at(double tau) const {
    if (dense.empty()) return states.front();
    auto it = std::upper_bound(dense.begin(), dense.end(), tau,
                               [](double v, const DenseStep& s) { return v < s.tau0; });
    const DenseStep& s = it == dense.begin() ? dense.front() : *std::prev(it);
    const double th = (tau - s.tau0) / s.h, th1 = 1 - th;
    const auto& r = s.coeffs;
    ComplexState y(r[0].size());
    for (std::size_t i = 0; i < y.size(); ++i)
        y[i] = r[0][i] + th * (r[1][i] + th1 * (r[2][i] + th * (r[3][i] + th1 * r[4][i])));
    return y;
}

std::string Trajectory::json_lines() const {
    std::ostringstream os;
    for (std::size_t k = 0; k < times.size(); ++k) {
        Json state = Json::array();
        for (const auto& c : states[k]) state.push_back({c.real(), c.imag()});
        os << Json{{"t_re", times[k].real()}, {"t_im", times[k].imag()}, {"state", state}}.dump() << "\n";
    }
    return os.str();
}

Trajectory integrate(const HamiltonianSystem& system, const ComplexParams& params, const ComplexState& initial,
                     const Path& path, Tolerance tol, int samples) {
    if (path.vertices.size() < 2) throw Error("a path needs at least two vertices");
    if (samples < 2) throw Error("at least two samples are required");
    if (system.params.constraint) {
        const auto& c = *system.params.constraint;
        Complex r = -c.offset.get_d();
        for (std::size_t i = 0; i < system.params.symbols.size(); ++i) {
            auto it = params.find(system.params.symbols[i]);
            if (it == params.end()) throw Error("parameter " + std::string(var_name(system.params.symbols[i])) + " missing");
            r += c.coeffs[i].get_d() * it->second;
        }
        if (std::abs(r) > 1e-12) throw Error("parameters violate the normalization by " + std::to_string(std::abs(r)));
    }
    const VectorField field = vector_field(system);
    if (initial.size() != field.vars.size()) throw Error("initial state has the wrong dimension");
    bool t_in_denominator = false;
    for (const auto& f : field.rhs) t_in_denominator = t_in_denominator || f.den().depends_on(system.time);
    if (t_in_denominator && path.passes_near(0, kDenominatorGuard))
        throw SingularStart("the path passes through t = 0");

    const CompiledField compiled(field, system.time, params);
    const std::size_t n = initial.size();

    Trajectory tr;
    tr.vars = field.vars;
    tr.params = params;
    tr.tol = tol;
    tr.path = path;

    // d(state)/d(tau) = f(state, t(tau)) * t'(tau)
    auto rhs = [&](double tau, const ComplexState& y, ComplexState& out) {
        ++tr.stats.evaluations;
        if (!compiled.eval(path.at(tau), y, out)) return false;
        const Complex v = path.velocity(tau);
        for (auto& c : out) c *= v;
        return true;
    };

    ComplexState y = initial, k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
    if (!rhs(0, y, k1)) throw SingularStart("a denominator vanishes at the initial point");

    const double end = path.length();
    std::vector<double> targets;
    for (int k = 0; k < samples; ++k) targets.push_back(end * k / (samples - 1));
    std::size_t next = 0;
    auto record = [&](double tau, const ComplexState& state) {
        tr.taus.push_back(tau);
        tr.times.push_back(path.at(tau));
        tr.states.push_back(state);
    };
    record(0, y);
    next = 1;

    double tau = 0;
    double h = std::min(1e-3, end);
    const double h_max = tol.max_step;
    const double h_min = 1e-14 * std::max(1.0, end);
    while (tau < end) {
        // Steps never straddle a polyline vertex.
        const double vertex = std::min(end, std::floor(tau + 1e-12) + 1);
        const double step = std::min({h, h_max, vertex - tau});
        const double s = tau;
        bool ok = rhs(s + c2 * step, axpy(y, step, {{a21, &k1}}), k2) &&
                  rhs(s + c3 * step, axpy(y, step, {{a31, &k1}, {a32, &k2}}), k3) &&
                  rhs(s + c4 * step, axpy(y, step, {{a41, &k1}, {a42, &k2}, {a43, &k3}}), k4) &&
                  rhs(s + c5 * step, axpy(y, step, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}), k5) &&
                  rhs(s + step, axpy(y, step, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}), k6);
        ComplexState y1;
        double err = 0;
        if (ok) {
            y1 = axpy(y, step, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
            ok = rhs(s + step, y1, k7);
        }
        if (ok) {
            for (std::size_t i = 0; i < n; ++i) {
                const Complex e = step * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
                const double scale = tol.abs + tol.rel * std::max(std::abs(y[i]), std::abs(y1[i]));
                err += std::norm(e) / (scale * scale);
            }
            err = std::sqrt(err / static_cast<double>(n));
            ok = std::isfinite(err);
        }
        if (!ok || err > 1.0) {
            ++tr.stats.rejected;
            h = ok ? step * std::max(0.2, 0.9 * std::pow(err, -0.2)) : step * 0.25;
            if (h < h_min) {
                std::ostringstream msg;
                msg << "step size underflow at t = " << path.at(tau) << " (movable singularity or denominator guard)";
                throw StepFailure(msg.str(), tr);
            }
            continue;
        }
        ++tr.stats.accepted;
        Trajectory::DenseStep d{s, step, {}};
        d.coeffs[0] = y;
        d.coeffs[1].resize(n);
        d.coeffs[2].resize(n);
        d.coeffs[3].resize(n);
        d.coeffs[4].resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            d.coeffs[1][i] = y1[i] - y[i];
            d.coeffs[2][i] = step * k1[i] - d.coeffs[1][i];
            d.coeffs[3][i] = d.coeffs[1][i] - step * k7[i] - d.coeffs[2][i];
            d.coeffs[4][i] = step * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
        }
        tr.dense.push_back(std::move(d));
        tau = (vertex - (s + step) < 1e-12) ? vertex : s + step;
        while (next < targets.size() && targets[next] <= tau + 1e-12) {
            record(targets[next], next + 1 == targets.size() ? y1 : tr.state_at(targets[next]));
            ++next;
        }
        y = std::move(y1);
        k1 = k7;
        h = step * std::min(10.0, 0.9 * std::pow(std::max(err, 1e-10), -0.2));
    }
    return tr;
}

double residual(const HamiltonianSystem& system, const Trajectory& tr, std::size_t* worst) {
    const CompiledField compiled(vector_field(system), system.time, tr.params);
    const double end = tr.path.length();
    constexpr double delta = 1e-4;
    double worst_value = 0;
    ComplexState f;
    for (std::size_t k = 0; k < tr.states.size(); ++k) {
        // The stencil stays inside one polyline segment.
        const double segment = std::min(std::floor(tr.taus[k]), end - 1);
        const double tau = std::clamp(tr.taus[k], segment + delta, segment + 1 - delta);
        const ComplexState plus = tr.state_at(tau + delta), minus = tr.state_at(tau - delta);
        const ComplexState here = tau == tr.taus[k] ? tr.states[k] : tr.state_at(tau);
        if (!compiled.eval(tr.path.at(tau), here, f)) return INFINITY;
        const Complex v = tr.path.velocity(tau);
        for (std::size_t i = 0; i < f.size(); ++i) {
            const double d = std::abs((plus[i] - minus[i]) / (2 * delta) - f[i] * v);
            if (!(d <= worst_value)) {
                worst_value = d;
                if (worst) *worst = k;
            }
        }
    }
    return worst_value;
}

double residual(const HamiltonianSystem& system, const Trajectory& tr) { return residual(system, tr, nullptr); }

ComplexImage apply_numeric(const BirationalMap& map, const ComplexState& state, Complex t, const ComplexParams& params) {
    std::array<Complex, kVarCount> env{};
    for (const auto& [v, c] : params) env[index(v)] = c;
    env[index(map.time)] = t;
    for (std::size_t i = 0; i < map.vars.size(); ++i) env[index(map.vars[i])] = state[i];
    ComplexImage out;
    for (const auto& f : map.images) out.state.push_back(eval_complex(f, env));
    out.time = eval_complex(map.time_image, env);
    for (std::size_t i = 0; i < map.params.size(); ++i) out.params[map.params[i]] = eval_complex(map.param_images[i], env);
    return out;
}

ComplexParams perturb_parameter(const ParameterVector& normalization, ComplexParams params, Var k, double delta) {
    params[k] += delta;
    if (!normalization.constraint) return params;
    const auto& syms = normalization.symbols;
    const auto& c = normalization.constraint->coeffs;
    std::size_t ki = 0, ri = syms.size();
    for (std::size_t i = 0; i < syms.size(); ++i) {
        if (syms[i] == k) ki = i;
        else if (ri == syms.size()) ri = i;
    }
    params[syms[ri]] -= delta * c[ki].get_d() / c[ri].get_d();
    return params;
}

Report verify_backlund_numeric(const BirationalMap& map, const HamiltonianSystem& system, const ComplexState& initial,
                               const ComplexParams& params, const Path& path, const BacklundNumericOptions& options) {
    Stopwatch clock;
    Report r;
    r.family = family_name(system.family);
    r.check = "numeric/" + r.family + "/" + map.label;
    r.mode = CheckMode::exact_mode();
    auto fail = [&](std::string why) {
        r.status = Status::fail;
        r.witness = std::move(why);
        r.elapsed_ms = clock.elapsed_ms();
        return r;
    };
    try {
        const Trajectory source = integrate(system, params, initial, path, options.tol, options.samples);
        const ComplexImage start = apply_numeric(map, initial, path.vertices.front(), params);
        ComplexParams target_params = start.params;
        if (options.target_perturbation)
            target_params = perturb_parameter(system.params, target_params, options.target_perturbation->first,
                                              options.target_perturbation->second);
        // Catalog time images are affine in t, so the path maps vertex by vertex.
        Path target_path;
        for (Complex v : path.vertices) target_path.vertices.push_back(apply_numeric(map, initial, v, params).time);
        const Trajectory target =
            integrate(system, target_params, start.state, target_path, options.tol, options.samples);

        double diff = 0;
        std::size_t at = 0;
        for (std::size_t k = 0; k < source.states.size(); ++k) {
            const ComplexImage img = apply_numeric(map, source.states[k], source.times[k], params);
            for (std::size_t i = 0; i < img.state.size(); ++i) {
                const double d = std::abs(img.state[i] - target.states[k][i]);
                if (!(d <= diff)) {
                    diff = d;
                    at = k;
                }
            }
        }
        const double ds = residual(system, source), dt = residual(system, target);
        std::ostringstream w;
        w << "max difference " << diff << " at t = " << source.times[at] << "; defects " << ds << ", " << dt;
        if (diff <= options.threshold && ds <= options.threshold && dt <= options.threshold) {
            r.status = Status::pass;
            r.elapsed_ms = clock.elapsed_ms();
            return r;
        }
        return fail(w.str());
    } catch (const StepFailure& e) {
        return fail(e.what());
    } catch (const SingularStart& e) {
        return fail(e.what());
    } catch (const DenominatorZeroAtPoint& e) {
        return fail(e.what());
    }
}

// --- benchmark ---------------------------------------------------------------

namespace {

Complex complex_from_json(const Json& j) {
    if (j.is_array()) return {j.at(0).get<double>(), j.at(1).get<double>()};
    if (j.is_string()) return mpq_class(j.get<std::string>()).get_d();
    return j.get<double>();
}

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

}  // namespace

Benchmark default_benchmark() {
    Benchmark b;
    b.family = Family::D4;
    b.initial = {0.5, 1.0 / 3, 0.2, 1.0 / 7};
    b.params = {{Var::a0, 0.125}, {Var::a1, 0.125}, {Var::a2, 0.125}, {Var::a3, 0.25}, {Var::a4, 0.25}};
    b.path.vertices = {1.0, 2.0};
    b.tol = {1e-10, 1e-10};
    b.samples = 101;
    return b;
}

Benchmark benchmark_from_json(const Json& j) {
    Benchmark b;
    try {
        b.family = family_from_name(j.value("family", std::string("d4")));
        for (const auto& v : j.at("initial_state")) b.initial.push_back(complex_from_json(v));
        for (const auto& [name, v] : j.at("params").items()) {
            const auto var = var_from_name(name);
            if (!var || !is_parameter(*var)) throw Error("unknown parameter '" + name + "' in benchmark");
            b.params[*var] = complex_from_json(v);
        }
        for (const auto& v : j.at("path")) b.path.vertices.push_back(complex_from_json(v));
        if (j.contains("tol")) {
            const auto& t = j["tol"];
            if (t.is_number()) b.tol = {t.get<double>(), t.get<double>()};
            else b.tol = {t.value("rel", 1e-10), t.value("abs", 1e-10)};
        }
        b.samples = j.value("samples", 101);
    } catch (const Json::exception& e) {
        throw Error(std::string("malformed benchmark: ") + e.what());
    }
    return b;
}

Json to_json(const Benchmark& b) {
    Json j;
    j["family"] = family_name(b.family);
    j["initial_state"] = Json::array();
    for (Complex c : b.initial) j["initial_state"].push_back(complex_to_json(c));
    j["params"] = Json::object();
    for (const auto& [v, c] : b.params) j["params"][std::string(var_name(v))] = complex_to_json(c);
    j["path"] = Json::array();
    for (Complex c : b.path.vertices) j["path"].push_back(complex_to_json(c));
    j["tol"] = {{"rel", b.tol.rel}, {"abs", b.tol.abs}};
    j["samples"] = b.samples;
    return j;
}

}  // namespace p4d
