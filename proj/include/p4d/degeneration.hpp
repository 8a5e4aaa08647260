#pragma once

// The eps-confluence from the D5(1) system to the D4(1) system and the
// convergence of the chosen subgroup of D5(1) Backlund transformations.
// New coordinates (T, X, Y, Z, W) reuse the symbols t, x, y, z, w.

#include "p4d/transforms.hpp"

namespace p4d {

class PoleAtEpsilonZero : public Error {
public:
    using Error::Error;
};

struct ConfluenceSubstitution {
    /// Old coordinates and betas in terms of the new ones and eps.
    BirationalMap to_old;
    /// New coordinates, alphas and eps in terms of the old ones and betas.
    BirationalMap to_new;
    /// dt/dT.
    RationalFunction time_factor;
};

ConfluenceSubstitution confluence();

/// The D5(1) field rewritten in the new coordinates, eps symbolic.
VectorField substitute_confluence(const HamiltonianSystem& d51);

/// Pole check, then eps = 0. Throws PoleAtEpsilonZero.
RationalFunction epsilon_limit(const RationalFunction& f);
VectorField epsilon_limit(const VectorField& field);
/// Limits of all images; eps itself must tend to 0 and is dropped.
BirationalMap epsilon_limit(const BirationalMap& map);

/// C o g o C^-1 for a D5(1) map g, in new coordinates with eps symbolic.
BirationalMap conjugate_by_confluence(const BirationalMap& g);

/// s0..s3 = w0..w3 and s4 = w4 w5 w3 w4 w5, as D5(1) words.
std::vector<std::vector<BirationalMap>> convergent_subgroup_words();

/// The limit field equals the D4(1) field (one report).
Report verify_confluence_field();
/// One report per limit generator, compared with the D4(1) s_i.
std::vector<Report> verify_group_convergence();

}  // namespace p4d
