#pragma once

#include "peri_couple/dense_linalg.hpp"

#include <iosfwd>
#include <string>

namespace peri_couple {

/// "%.10g" in the C locale.
std::string format_number(double value);

/// One matrix row per line, entries separated by single spaces.
void write_dense(std::ostream& out, const DenseMatrix& A);
DenseMatrix read_dense(std::istream& in);

/// Header line "rows cols nnz", then one "row col value" line per nonzero
/// with 1-based indices, in row-major order.
void write_triplets(std::ostream& out, const DenseMatrix& A);
DenseMatrix read_triplets(std::istream& in);

} // namespace peri_couple
