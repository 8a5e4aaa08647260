#pragma once

// Coxeter presentations read off the parameter actions of the catalog
// generators, relation checks, and the D4(1) translation operators.

#include "p4d/transforms.hpp"

#include <array>
#include <string>
#include <vector>

namespace p4d {

class NonAffineAction : public Error {
public:
    using Error::Error;
};

using IntMatrix = std::vector<std::vector<int>>;

/// Convention: s_i sends alpha_j to alpha_j - cartan[j][i] * alpha_i.
struct CoxeterPresentation {
    std::vector<std::string> labels;
    IntMatrix cartan;
    IntMatrix coxeter_m;
};

CoxeterPresentation derive_cartan(const GeneratorSet& set);
CoxeterPresentation derive_cartan(Family family);

/// m_ij from a_ij * a_ji in {0, 1, 2, 3}.
IntMatrix coxeter_matrix(const IntMatrix& cartan);

/// Standard affine Cartan matrix in Kac's labeling and convention
/// (s_i(alpha_j) = alpha_j - a_ij alpha_i), i.e. the transpose of ours.
IntMatrix standard_cartan(Family family);

/// Searches for a node relabeling perm with derived[j][i] ==
/// standard[perm[i]][perm[j]]. Empty when none exists.
std::vector<int> match_standard(const CoxeterPresentation& p, Family family);

/// Splits "s0 s2 pi1", "s0,s2,pi1" or "s0s2pi1" into catalog generators.
std::vector<BirationalMap> parse_word(const GeneratorSet& set, const std::string& text);

/// Exact image of a point under a word, letter by letter.
RationalPoint apply_word(const std::vector<BirationalMap>& word, const RationalPoint& point);

/// Checks w = identity. Exact mode compares the two halves of the word,
/// using that every letter is a declared involution.
Report verify_word_is_identity(const std::vector<BirationalMap>& word, const ParameterVector& params,
                               const std::string& check, const std::string& family, CheckMode mode);

/// One report per relation s_i^2 and (s_i s_j)^{m_ij}, i < j.
std::vector<Report> verify_coxeter_relations(const GeneratorSet& set, CheckMode mode);
std::vector<Report> verify_coxeter_relations(Family family, CheckMode mode);

/// Declared orders of the diagram automorphisms, pi4 = pi2 pi3 pi2 for
/// D4(1), and pi s_j pi = s_sigma(j) for each automorphism pi.
std::vector<Report> verify_extended_relations(Family family);

std::vector<BirationalMap> translation_word(int k);
BirationalMap translation_operator(int k);
/// Shift vectors the translations are expected to realize.
std::array<mpq_class, 5> expected_shift(int k);

/// Parameter part of a map only (no variable images).
BirationalMap parameter_part(const BirationalMap& map);

std::vector<Report> verify_translation_shifts();

Json to_json(const CoxeterPresentation& p);

}  // namespace p4d
