#include "gdpp/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gdpp/error.hpp"

namespace gdpp {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& text, const std::string& what) {
  if (text.empty()) throw Error(ErrorCode::ParseError, what + ": empty number");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || errno == ERANGE)
    throw Error(ErrorCode::ParseError, what + ": not a number: '" + text + "'");
  return v;
}

long long parse_integer(const std::string& text, const std::string& what) {
  if (text.empty()) throw Error(ErrorCode::ParseError, what + ": empty integer");
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(text.c_str(), &end, 10);
  if (end != text.c_str() + text.size() || errno == ERANGE)
    throw Error(ErrorCode::ParseError, what + ": not an integer: '" + text + "'");
  return v;
}

namespace {

std::string strip(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
  std::size_t a = 0;
  while (a < s.size() && (s[a] == ' ' || s[a] == '\t')) ++a;
  return s.substr(a);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(strip(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string where(const char* kind, std::size_t line) {
  return std::string(kind) + " line " + std::to_string(line);
}

// Reads CSV rows after checking the header; skips blank lines.
template <class Row>
void read_csv(std::istream& in, const std::string& header, std::size_t columns, const char* kind,
              Row&& row) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, std::string(kind) + ": empty input");
  ++lineno;
  if (strip(line) != header)
    throw Error(ErrorCode::ParseError,
                std::string(kind) + ": expected header '" + header + "', got '" + strip(line) + "'");
  while (std::getline(in, line)) {
    ++lineno;
    if (strip(line).empty()) continue;
    auto cells = split_csv(line);
    if (cells.size() != columns)
      throw Error(ErrorCode::ParseError, where(kind, lineno) + ": expected " +
                                             std::to_string(columns) + " columns");
    row(cells, where(kind, lineno));
  }
}

}  // namespace

void write_graph_mtx(const Graph& g, std::ostream& out) {
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  out << g.node_count() << ' ' << g.node_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.j + 1 << ' ' << e.i + 1 << ' ' << format_double(e.w) << '\n';
}

Graph read_graph_mtx(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, "mtx: empty input");
  ++lineno;
  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  for (std::string* s : {&object, &format, &field, &symmetry})
    for (char& c : *s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (tag != "%%MatrixMarket" || object != "matrix" || format != "coordinate")
    throw Error(ErrorCode::ParseError, "mtx: expected a coordinate MatrixMarket banner");
  if (symmetry != "symmetric")
    throw Error(ErrorCode::ParseError, "mtx: adjacency must be stored as symmetric");
  const bool pattern = field == "pattern";
  if (!pattern && field != "real" && field != "integer")
    throw Error(ErrorCode::ParseError, "mtx: unsupported field '" + field + "'");

  long long rows = -1, cols = -1, nnz = -1;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = strip(line);
    if (s.empty() || s[0] == '%') continue;
    std::istringstream ss(s);
    if (!(ss >> rows >> cols >> nnz) || rows != cols || rows < 0 || nnz < 0)
      throw Error(ErrorCode::ParseError, where("mtx", lineno) + ": bad size line");
    break;
  }
  if (rows < 0) throw Error(ErrorCode::ParseError, "mtx: missing size line");

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(nnz));
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = strip(line);
    if (s.empty() || s[0] == '%') continue;
    std::istringstream ss(s);
    std::string a, b, w;
    ss >> a >> b >> w;
    const auto ctx = where("mtx", lineno);
    const long long i = parse_integer(a, ctx), j = parse_integer(b, ctx);
    if (i < 1 || j < 1 || i > rows || j > rows)
      throw Error(ErrorCode::ParseError, ctx + ": index out of range");
    const double weight = pattern ? 1.0 : parse_double(w, ctx);
    edges.push_back({static_cast<Index>(i - 1), static_cast<Index>(j - 1), weight});
  }
  if (static_cast<long long>(edges.size()) != nnz)
    throw Error(ErrorCode::ParseError, "mtx: expected " + std::to_string(nnz) + " entries, found " +
                                           std::to_string(edges.size()));
  return Graph(static_cast<Index>(rows), std::move(edges));
}

void write_labels_csv(const std::vector<int>& labels, std::ostream& out) {
  out << "node,community\n";
  for (std::size_t i = 0; i < labels.size(); ++i) out << i << ',' << labels[i] << '\n';
}

std::vector<int> read_labels_csv(std::istream& in, Index n) {
  std::vector<int> labels(static_cast<std::size_t>(n), -1);
  read_csv(in, "node,community", 2, "labels", [&](const auto& cells, const std::string& ctx) {
    const long long node = parse_integer(cells[0], ctx);
    if (node < 0 || node >= n) throw Error(ErrorCode::ParseError, ctx + ": node out of range");
    labels[static_cast<std::size_t>(node)] = static_cast<int>(parse_integer(cells[1], ctx));
  });
  for (int l : labels)
    if (l < 0) throw Error(ErrorCode::ParseError, "labels: every node needs a community");
  return labels;
}

void save_graph(const Graph& g, const std::string& mtx_path, const std::string& labels_path) {
  std::ostringstream mtx;
  write_graph_mtx(g, mtx);
  write_file(mtx_path, mtx.str());
  if (!labels_path.empty() && !g.communities().empty()) {
    std::ostringstream csv;
    write_labels_csv(g.communities(), csv);
    write_file(labels_path, csv.str());
  }
}

Graph load_graph(const std::string& mtx_path, const std::string& labels_path) {
  std::istringstream mtx(read_file(mtx_path));
  Graph g = read_graph_mtx(mtx);
  if (!labels_path.empty()) {
    std::istringstream csv(read_file(labels_path));
    g.set_communities(read_labels_csv(csv, g.node_count()));
  }
  return g;
}

void write_signal_csv(const Vector& x, std::ostream& out) {
  out << "value\n";
  for (Index i = 0; i < x.size(); ++i) out << format_double(x[i]) << '\n';
}

Vector read_signal_csv(std::istream& in) {
  std::vector<double> vals;
  read_csv(in, "value", 1, "signal", [&](const auto& cells, const std::string& ctx) {
    vals.push_back(parse_double(cells[0], ctx));
  });
  return Eigen::Map<Vector>(vals.data(), static_cast<Index>(vals.size()));
}

void write_sampling_csv(const SamplingSet& s, std::ostream& out) {
  out << "node,weight\n";
  for (std::size_t t = 0; t < s.size(); ++t) {
    out << s.nodes[t] << ',';
    if (s.weighted()) out << format_double(s.weights[t]);
    out << '\n';
  }
}

SamplingSet read_sampling_csv(std::istream& in) {
  SamplingSet s;
  std::size_t blank = 0;
  read_csv(in, "node,weight", 2, "sampling", [&](const auto& cells, const std::string& ctx) {
    const long long node = parse_integer(cells[0], ctx);
    if (node < 0) throw Error(ErrorCode::ParseError, ctx + ": negative node");
    s.nodes.push_back(static_cast<Index>(node));
    if (cells[1].empty()) {
      ++blank;
    } else {
      s.weights.push_back(parse_double(cells[1], ctx));
    }
  });
  if (blank != 0 && blank != s.nodes.size())
    throw Error(ErrorCode::ParseError, "sampling: weights must be given for all rows or none");
  return s;
}

void write_node_values_csv(const Vector& v, std::ostream& out) {
  out << "node,value\n";
  for (Index i = 0; i < v.size(); ++i) out << i << ',' << format_double(v[i]) << '\n';
}

Vector read_node_values_csv(std::istream& in) {
  std::vector<std::pair<long long, double>> rows;
  read_csv(in, "node,value", 2, "values", [&](const auto& cells, const std::string& ctx) {
    rows.emplace_back(parse_integer(cells[0], ctx), parse_double(cells[1], ctx));
  });
  Vector v(static_cast<Index>(rows.size()));
  for (std::size_t t = 0; t < rows.size(); ++t) {
    if (rows[t].first != static_cast<long long>(t))
      throw Error(ErrorCode::ParseError, "values: nodes must be listed as 0..N-1 in order");
    v[static_cast<Index>(t)] = rows[t].second;
  }
  return v;
}

void write_dense_mtx(const Matrix& m, std::ostream& out) {
  out << "%%MatrixMarket matrix array real general\n";
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) out << format_double(m(i, j)) << '\n';
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

}  // namespace gdpp
