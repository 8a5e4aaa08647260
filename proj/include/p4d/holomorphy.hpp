#pragma once

// Holomorphy charts: canonical coordinate changes in which a cataloged
// system stays polynomial, plus reconstruction of the chart Hamiltonian.

#include "p4d/transforms.hpp"

#include <optional>
#include <string>
#include <vector>

namespace p4d {

class UnknownChart : public Error {
public:
    using Error::Error;
};

class EliminationFails : public Error {
public:
    using Error::Error;
};

class NotHamiltonian : public Error {
public:
    using Error::Error;
};

struct ChartTransform {
    std::string chart_set;  // "d4", "b4-first", "b4-second", "d5-2", "assumption-a"
    std::string index;      // "r0" .. "r4"
    /// Formula as written, on the coordinates of nested_on when set.
    BirationalMap local;
    /// Source coordinates to chart coordinates, nesting composed in.
    BirationalMap forward;
    /// Chart coordinates back to source coordinates.
    BirationalMap inverse;
    std::optional<std::string> nested_on;
};

/// Chart sets in catalog order.
std::vector<std::string> chart_set_names();
/// The chart set that characterizes a family's system.
std::string chart_set_for(Family family);

/// Throws UnknownChart. Construction checks the canonical brackets of the
/// forward map and that inverse undoes forward.
ChartTransform chart(const std::string& chart_set, const std::string& index);
std::vector<ChartTransform> charts(const std::string& chart_set);

/// The system's field in chart coordinates.
VectorField to_chart(const HamiltonianSystem& system, const ChartTransform& chart);
VectorField to_chart(const VectorField& field, const ChartTransform& chart);

/// f as num/den with den free of phase variables, when f is a polynomial in
/// the phase variables over the field of t and the parameters.
std::optional<RationalFunction> as_phase_polynomial(const RationalFunction& f);

/// Empty when every component is a phase polynomial; otherwise a witness.
std::optional<std::string> polynomiality_witness(const VectorField& field);

/// K with dK/dv = du/dt and dK/du = -dv/dt for each pair (u, v), without a
/// phase-free term. Throws NotHamiltonian with the failing condition.
RationalFunction reconstruct_hamiltonian(const VectorField& field, const std::vector<CanonicalPair>& pairs);

/// One report per chart: polynomial field and a polynomial chart Hamiltonian,
/// both modulo the normalization.
/// Random mode specializes t and the parameters before the division test.
std::vector<Report> verify_chart_polynomiality(const HamiltonianSystem& system, const std::string& chart_set,
                                               CheckMode mode = CheckMode::exact_mode());

/// Runs the assumption-(A) charts against a system. Outcomes are reported
/// as inconclusive with the observation as witness.
std::vector<Report> probe_assumption_a(const HamiltonianSystem& system);

Json to_json(const ChartTransform& chart);

}  // namespace p4d
