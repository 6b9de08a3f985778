#pragma once

#include <iosfwd>
#include <string>

#include "projopt/ascent.hpp"
#include "projopt/sym_matrix.hpp"

namespace projopt {

/// Parses the dense text format: first line n, then n rows of n reals.
/// Near-symmetric input (within sym_tol, scaled by the largest entry) is
/// symmetrized exactly; anything worse is rejected.
SymMatrix parse_dense_matrix(const std::string& text, double sym_tol = 1e-9);

/// Parses MatrixMarket coordinate format ("matrix coordinate real
/// symmetric"); entries may sit in either triangle, duplicates are rejected.
SymMatrix parse_matrix_market(const std::string& text);

/// Reads a matrix file, dispatching on the MatrixMarket banner.
SymMatrix read_matrix_file(const std::string& path);

/// Writes the dense text format with round-trip precision.
void write_dense_matrix(std::ostream& out, const SymMatrix& a);
void write_dense_matrix_file(const std::string& path, const SymMatrix& a);

/// Writes an iterate trace as CSV with columns k,f,step_norm,eta,fw_gap.
void write_trace_csv(std::ostream& out, const IterateTrace& trace);
void write_trace_csv_file(const std::string& path, const IterateTrace& trace);

}  // namespace projopt
