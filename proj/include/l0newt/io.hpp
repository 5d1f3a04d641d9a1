#pragma once

#include "l0newt/core.hpp"
#include "l0newt/solver.hpp"

#include <iosfwd>
#include <string>

namespace l0newt::io {

/// Plain-text vector: first token n, then n whitespace-separated decimals.
Vector read_vector(std::istream& in);
Vector read_vector_file(const std::string& path);
void write_vector(std::ostream& out, const Vector& v);

/// Matrix Market reader for real/integer matrices in coordinate or array
/// layout, general or symmetric.
Matrix read_matrix_market(std::istream& in);
Matrix read_matrix_market_file(const std::string& path);
/// Writes "array real general".
void write_matrix_market(std::ostream& out, const Matrix& A);

/// Report JSON: {config, stop_reason, converged, iterations, x_final, history, ...}.
std::string report_to_json(const SolveReport& report, const SolverConfig& cfg);

}  // namespace l0newt::io
