#pragma once

#include "ccdlab/linalg.hpp"

namespace ccdlab {

/// File format: {"n": qubit count, "entries": [[re, im], ...]} row-major,
/// dimension 2^n x 2^n.  Writers emit 17 significant digits.
Mat read_matrix_json(const std::string& path);
std::string matrix_to_json(const Mat& m, int n);
void write_matrix_json(const std::string& path, const Mat& m, int n);

/// %.17g with a stable representation, shared by every serializer so reports
/// are byte-identical across runs.
std::string format_double(double x);

}  // namespace ccdlab
