#pragma once

#include "nlipm/functionals.hpp"
#include "nlipm/graph.hpp"
#include "nlipm/sparse_pca.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace nlipm::io {

/// Shortest decimal that round-trips, so equal values print identically.
std::string format_double(double x);

/// Edge list "i<TAB>j<TAB>w" (any blank separates fields), 0-based ids,
/// '#' comments. A "# vertices N" comment fixes the vertex count, else it
/// is one more than the largest id. Throws ParseError with the line.
graph::SparseGraph read_edge_list(std::istream& in);
graph::SparseGraph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const graph::SparseGraph& g);

/// Numeric CSV, one row per line, no header.
Matrix read_points_csv(std::istream& in);
void write_points_csv(std::ostream& out, const Matrix& points);

/// "vertex,label" with header.
void write_partition_csv(std::ostream& out, const graph::Partition& p);
graph::Partition read_partition_csv(std::istream& in);

/// Numeric CSV with an optional header row; a first line with any
/// non-numeric field counts as header.
Matrix read_matrix_csv(std::istream& in, std::vector<std::string>* header = nullptr);

/// "alpha,cardinality,relative_variance,lambda".
void write_tradeoff_csv(std::ostream& out, const std::vector<spca::SparsePcaResult>& rows);

/// "feature_index,value" over nonzeros, in original column indices.
void write_component_csv(std::ostream& out, const spca::DataMatrix& X, const spca::SparsePcaResult& r);

}  // namespace nlipm::io
