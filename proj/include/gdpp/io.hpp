#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gdpp/graph.hpp"
#include "gdpp/sampling_set.hpp"
#include "gdpp/types.hpp"

namespace gdpp {

/// Shortest decimal form that parses back to the same double (%.17g).
std::string format_double(double v);
/// Strict decimal parse; throws ParseError naming `what`.
double parse_double(const std::string& text, const std::string& what);
long long parse_integer(const std::string& text, const std::string& what);

// Matrix Market `coordinate real symmetric`, lower triangle, 1-based.
// Reading also accepts `integer` and `pattern` fields (pattern -> weight 1).
void write_graph_mtx(const Graph& g, std::ostream& out);
Graph read_graph_mtx(std::istream& in);

// Sidecar `node,community`.
void write_labels_csv(const std::vector<int>& labels, std::ostream& out);
std::vector<int> read_labels_csv(std::istream& in, Index n);

void save_graph(const Graph& g, const std::string& mtx_path, const std::string& labels_path = {});
Graph load_graph(const std::string& mtx_path, const std::string& labels_path = {});

// Signals: single column with header `value`.
void write_signal_csv(const Vector& x, std::ostream& out);
Vector read_signal_csv(std::istream& in);

// Sampling sets: `node,weight`; an empty weight column means unweighted.
void write_sampling_csv(const SamplingSet& s, std::ostream& out);
SamplingSet read_sampling_csv(std::istream& in);

// Per-node estimates: `node,value`.
void write_node_values_csv(const Vector& v, std::ostream& out);
Vector read_node_values_csv(std::istream& in);

// Matrix Market `array real general`, column-major (debug dumps of kernels).
void write_dense_mtx(const Matrix& m, std::ostream& out);

// Path helpers used by the C API and CLI.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace gdpp
