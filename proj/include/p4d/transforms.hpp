#pragma once

// Birational maps on (phase variables, t, parameters): the generator
// catalog of every family, composition, and the symmetry / symplecticity /
// equivalence verdicts.

#include "p4d/algebra.hpp"
#include "p4d/report.hpp"
#include "p4d/systems.hpp"

#include <random>
#include <string>
#include <vector>

namespace p4d {

class UnknownLabel : public Error {
public:
    using Error::Error;
};

class NonInvertibleTime : public Error {
public:
    using Error::Error;
};

/// A point map (vars, t, params) -> (images). Images are expressions in the
/// source symbols; `params` names the target parameter symbols and
/// `source_params` the symbols the images may use.
struct BirationalMap {
    std::string label;
    std::vector<Var> vars;
    std::vector<RationalFunction> images;
    Var time = Var::t;
    RationalFunction time_image = RationalFunction::variable(Var::t);
    std::vector<Var> params;
    std::vector<RationalFunction> param_images;
    std::vector<Var> source_params;
    /// Declared order for involutions and diagram automorphisms; 0 if none.
    int order = 0;

    /// Every image keyed by the symbol it replaces.
    Assignment assignment() const;
    const RationalFunction& image(Var v) const;
    const RationalFunction& param_image(Var v) const;
};

BirationalMap identity_map(const std::vector<Var>& vars, const std::vector<Var>& params, Var time = Var::t);

/// Point map outer o inner: inner's images are substituted into outer's.
BirationalMap compose(const BirationalMap& outer, const BirationalMap& inner);

/// A word g1 g2 ... gn read as Backlund automorphisms, so the point map
/// applies g1 first: gn o ... o g1. This is the reading under which the
/// translation words reproduce their parameter shifts.
BirationalMap compose_word(const std::vector<BirationalMap>& word);

/// Exact image of a rational point (vars, t and source params assigned).
RationalPoint apply(const BirationalMap& map, const RationalPoint& point);

/// A named set of generators acting on one family's parameters.
struct GeneratorSet {
    std::string name;
    ParameterVector params;
    std::vector<BirationalMap> reflections;   // s_i, in node order
    std::vector<BirationalMap> automorphisms; // pi, phi, ...

    const BirationalMap& get(const std::string& label) const;
    std::vector<std::string> labels() const;
};

/// Catalog generators of a family (D4, B4First, B4Second, D52, D51).
GeneratorSet generator_set(Family family);
/// The alternative D4(1) representation w0..w4 (no Hamiltonian attached).
GeneratorSet alternative_d4_set();

BirationalMap generator(Family family, const std::string& label);

/// Equivalences between catalog systems.
enum class Equivalence { D4ToB4First, D4ToB4Second, B4FirstToB4Second, D4ToD52, P3ToP3Tilde };
std::vector<Equivalence> all_equivalences();
std::string equivalence_name(Equivalence e);
BirationalMap equivalence_map(Equivalence e);
Family equivalence_source(Equivalence e);
Family equivalence_target(Equivalence e);

/// Chain rule through the map: dX/dT = (sum dg/dx_i f_i + dg/dt) / (dT/dt).
/// The result is expressed in the source variables.
VectorField pushforward_field(const BirationalMap& map, const VectorField& field);

/// Seeded sampler for random-mode checks: rationals with numerator and
/// denominator of magnitude <= 1000, parameters on the normalization
/// hyperplane.
class PointSampler {
public:
    explicit PointSampler(std::uint64_t seed) : rng_(seed) {}
    mpq_class rational();
    RationalPoint point(const std::vector<Var>& free_vars, const ParameterVector& params);

private:
    std::mt19937_64 rng_;
};

/// Stable hash used to derive per-check seeds.
std::uint64_t seed_for(std::uint64_t base, const std::string& check);

Report verify_symmetry(const BirationalMap& map, const HamiltonianSystem& system,
                       CheckMode mode = CheckMode::exact_mode());
Report verify_symplectic(const BirationalMap& map);
Report verify_equivalence(const BirationalMap& map, const HamiltonianSystem& source, const HamiltonianSystem& target,
                          CheckMode mode = CheckMode::exact_mode());

/// True when the two maps agree on variables, time and parameters after
/// reducing by the normalization `params`.
bool maps_equal(const BirationalMap& a, const BirationalMap& b, const ParameterVector& params,
                std::string* witness = nullptr);
/// Random-mode counterpart of maps_equal.
bool maps_agree_at_points(const BirationalMap& a, const BirationalMap& b, const ParameterVector& params,
                          CheckMode mode, std::string* witness = nullptr);

Json to_json(const BirationalMap& map);

}  // namespace p4d
