#pragma once

// Catalog of the Hamiltonians and Hamiltonian systems: the coupled
// Painleve III systems of types D4(1), B4(1) (two members), D5(2), the
// coupled Painleve V system of type D5(1), and the second-order building
// blocks H_III, H~_III and H_V.

#include "p4d/algebra.hpp"
#include "p4d/report.hpp"
#include "p4d/serialize.hpp"

#include <optional>
#include <string>
#include <vector>

namespace p4d {

enum class Family { D4, B4First, B4Second, D52, D51, PIII, PIIITilde, PV, Custom };

std::string family_name(Family f);
/// Accepts the canonical names ("d4", "b4-first", ...) case-insensitively.
/// Throws UnknownFamily.
Family family_from_name(const std::string& name);
std::vector<Family> catalog_families();

class UnknownFamily : public Error {
public:
    using Error::Error;
};

/// sum_i coeffs[i] * symbols[i] = offset
struct AffineConstraint {
    std::vector<mpq_class> coeffs;
    mpq_class offset;
};

struct ParameterVector {
    std::vector<Var> symbols;
    std::optional<AffineConstraint> constraint;

    /// The form sum c_i s_i - offset, symbolically.
    RationalFunction constraint_form() const;
    /// Solves the constraint for the first symbol; empty without a constraint.
    Assignment elimination() const;
    /// Substitutes the elimination into f.
    RationalFunction reduce(const RationalFunction& f) const;
};

/// Value of sum c_i v_i - offset; 0 iff the point is admissible.
mpq_class constraint_residual(const ParameterVector& params, const RationalPoint& values);

struct CanonicalPair {
    Var position;
    Var momentum;
};

struct HamiltonianSystem {
    Family family = Family::Custom;
    RationalFunction hamiltonian;
    std::vector<CanonicalPair> pairs;
    Var time = Var::t;
    ParameterVector params;

    std::vector<Var> phase_vars() const;
};

/// Right-hand sides d(var)/dT, one per phase variable, with the factor
/// dT/dt recorded when the field was produced by a change of time.
struct VectorField {
    std::vector<Var> vars;
    std::vector<RationalFunction> rhs;
    RationalFunction time_factor{1};

    const RationalFunction& operator[](Var v) const;
};

// Building blocks with the argument binding left to the caller.
RationalFunction h_iii(const RationalFunction& q, const RationalFunction& p, const RationalFunction& g0,
                       const RationalFunction& g2);
RationalFunction h_iii_tilde(const RationalFunction& q, const RationalFunction& p, const RationalFunction& g0,
                             const RationalFunction& g2);
RationalFunction h_v(const RationalFunction& q, const RationalFunction& p, const RationalFunction& g1,
                     const RationalFunction& g2, const RationalFunction& g3);

/// The cataloged system with its normalization attached. Asserts that the
/// Hamiltonian's denominator is a power of t.
HamiltonianSystem make_hamiltonian(Family family);

/// Hamilton's equations: du/dt = dH/dv, dv/dt = -dH/du for each pair (u, v).
VectorField vector_field(const HamiltonianSystem& system);

/// Independent transcription of the displayed right-hand sides, for the
/// families whose systems are displayed explicitly (D4, B4 x2, D5(2)).
std::optional<VectorField> displayed_field(Family family);

Report check_field_matches_display(Family family);
/// Compares against a caller-supplied display (used for mutation runs).
Report check_field_matches_display(const HamiltonianSystem& system, const VectorField& display);

/// Total degree in the phase variables only.
unsigned phase_degree(const HamiltonianSystem& system);

class WindowEmpty : public Error {
public:
    using Error::Error;
};

/// Polynomial first integrals F = sum c * m(phase) * t^k with deg m <=
/// degree_bound and t_lo <= k <= t_hi, with constant coefficients, after
/// eliminating the first parameter through the normalization. Returns a
/// basis of the solution space.
std::vector<RationalFunction> first_integral_search(const HamiltonianSystem& system, unsigned degree_bound,
                                                    int t_lo, int t_hi);

/// True when the two families of expressions span the same Q-vector space.
bool same_span(const std::vector<RationalFunction>& a, const std::vector<RationalFunction>& b);

Json to_json(const HamiltonianSystem& system);

}  // namespace p4d
