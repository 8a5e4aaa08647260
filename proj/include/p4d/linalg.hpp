#pragma once

#include <gmpxx.h>

#include <vector>

namespace p4d {

using RationalMatrix = std::vector<std::vector<mpq_class>>;

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> row_reduce(RationalMatrix& m);

std::size_t rank(RationalMatrix m);

/// Basis of {c : m c = 0}, one vector per free column, each with a 1 in its
/// free column (so the basis is canonical for a given matrix).
std::vector<std::vector<mpq_class>> nullspace(RationalMatrix m, std::size_t columns);

}  // namespace p4d
