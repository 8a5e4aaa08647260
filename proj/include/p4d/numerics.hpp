#pragma once

// Complex-domain integration of the cataloged systems with a Dormand-Prince
// 5(4) pair and dense output, and numerical cross-checks of Backlund maps.

#include "p4d/transforms.hpp"

#include <complex>
#include <map>
#include <vector>

namespace p4d {

using Complex = std::complex<double>;
using ComplexParams = std::map<Var, Complex>;
using ComplexState = std::vector<Complex>;

/// Guard on every denominator met during integration.
inline constexpr double kDenominatorGuard = 1e-8;

/// A rational expression evaluated in floating point through per-variable
/// power tables.
class CompiledRational {
public:
    CompiledRational() = default;
    explicit CompiledRational(const RationalFunction& f);

    /// env is indexed by variable index.
    Complex eval(const std::array<Complex, kVarCount>& env, double* den_abs = nullptr) const;

private:
    struct CompiledPoly {
        std::vector<std::pair<Complex, std::vector<std::pair<std::uint8_t, std::uint8_t>>>> terms;
        Complex eval(const std::vector<std::vector<Complex>>& powers) const;
    };
    CompiledPoly num_, den_;
    std::vector<std::pair<std::uint8_t, unsigned>> max_exp_;  // variable index, max exponent
};

class CompiledField {
public:
    CompiledField(const VectorField& field, Var time, const ComplexParams& params);

    std::size_t dim() const { return rhs_.size(); }
    /// Returns false when a denominator magnitude falls below the guard.
    bool eval(Complex t, const ComplexState& state, ComplexState& out) const;

private:
    std::vector<Var> vars_;
    Var time_;
    std::vector<CompiledRational> rhs_;
    std::array<Complex, kVarCount> base_{};
};

/// Polyline in the complex t-plane, parameterized by tau in [0, segments].
struct Path {
    std::vector<Complex> vertices;

    double length() const { return static_cast<double>(vertices.size()) - 1; }
    Complex at(double tau) const;
    Complex velocity(double tau) const;
    bool passes_near(Complex point, double radius) const;
};

struct Tolerance {
    double rel = 1e-10;
    double abs = 1e-10;
    /// In path-parameter units; bounds the dense-output interpolation error.
    double max_step = 1.0 / 64;
};

struct IntegrationStats {
    int accepted = 0;
    int rejected = 0;
    int evaluations = 0;
};

struct Trajectory {
    struct DenseStep {
        double tau0, h;
        std::array<ComplexState, 5> coeffs;
    };

    std::vector<Var> vars;
    std::vector<double> taus;
    std::vector<Complex> times;
    std::vector<ComplexState> states;
    ComplexParams params;
    Tolerance tol;
    IntegrationStats stats;
    Path path;
    std::vector<DenseStep> dense;

    ComplexState state_at(double tau) const;
    /// One JSON object per line: {t_re, t_im, state: [[re, im], ...]}.
    std::string json_lines() const;
};

class SingularStart : public Error {
public:
    using Error::Error;
};

class StepFailure : public Error {
public:
    StepFailure(const std::string& what, Trajectory partial) : Error(what), partial(std::move(partial)) {}
    Trajectory partial;
};

/// Parameters must satisfy the normalization to 1e-12. Samples are taken at
/// the path fractions k / (samples - 1).
Trajectory integrate(const HamiltonianSystem& system, const ComplexParams& params, const ComplexState& initial,
                     const Path& path, Tolerance tol = {}, int samples = 101);

/// Largest |central difference of the dense output - field| over the samples.
double residual(const HamiltonianSystem& system, const Trajectory& trajectory);
/// Same, also reporting the worst sample index.
double residual(const HamiltonianSystem& system, const Trajectory& trajectory, std::size_t* worst);

/// Evaluates the map at a complex point of (vars, t, params).
struct ComplexImage {
    ComplexState state;
    Complex time;
    ComplexParams params;
};
ComplexImage apply_numeric(const BirationalMap& map, const ComplexState& state, Complex t, const ComplexParams& params);

/// Shifts params[k] by delta and restores the normalization through the
/// first other parameter.
ComplexParams perturb_parameter(const ParameterVector& normalization, ComplexParams params, Var k, double delta);

struct BacklundNumericOptions {
    Tolerance tol;
    int samples = 101;
    double threshold = 1e-6;
    /// Applied to the target parameters after mapping (mutation runs).
    std::optional<std::pair<Var, double>> target_perturbation;
};

Report verify_backlund_numeric(const BirationalMap& map, const HamiltonianSystem& system, const ComplexState& initial,
                               const ComplexParams& params, const Path& path,
                               const BacklundNumericOptions& options = {});

/// Fixed benchmark: D4, (x, y, z, w) = (1/2, 1/3, 1/5, 1/7), path [1, 2],
/// alpha = (1/8, 1/8, 1/8, 1/4, 1/4), tolerance 1e-10.
struct Benchmark {
    Family family = Family::D4;
    ComplexState initial;
    ComplexParams params;
    Path path;
    Tolerance tol;
    int samples = 101;
};

Benchmark default_benchmark();
Benchmark benchmark_from_json(const Json& j);
Json to_json(const Benchmark& b);

}  // namespace p4d
