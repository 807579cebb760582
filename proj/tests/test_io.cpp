#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "gdpp/error.hpp"
#include "gdpp/io.hpp"
#include "test_util.hpp"

using namespace gdpp;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::InvalidParams;
}

void expect_same_graph(const Graph& a, const Graph& b) {
  ASSERT_EQ(a.node_count(), b.node_count());
  ASSERT_EQ(a.edge_count(), b.edge_count());
  for (std::size_t e = 0; e < a.edge_count(); ++e) {
    EXPECT_EQ(a.edges()[e].i, b.edges()[e].i);
    EXPECT_EQ(a.edges()[e].j, b.edges()[e].j);
    EXPECT_EQ(a.edges()[e].w, b.edges()[e].w);  // bit-exact
  }
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "gdpp_test_io";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Numbers, FormatRoundTripsBitExact) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0, 1e-5, std::nextafter(1.0, 2.0)}) {
    EXPECT_EQ(parse_double(format_double(v), "v"), v);
  }
  EXPECT_EQ(parse_integer("-42", "i"), -42);
  EXPECT_EQ(code_of([] { parse_double("1.5x", "v"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_double("", "v"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_integer("3.0", "i"); }), ErrorCode::ParseError);
}

TEST(GraphMtx, RoundTripIsBitExact) {
  const Graph g = test::random_weighted_graph(30, 0.2, 1);
  std::stringstream ss;
  write_graph_mtx(g, ss);
  expect_same_graph(g, read_graph_mtx(ss));
}

TEST(GraphMtx, HeaderAndLayout) {
  const Graph g(3, {{0, 2, 0.5}});
  std::stringstream ss;
  write_graph_mtx(g, ss);
  std::string banner, size, entry;
  std::getline(ss, banner);
  EXPECT_EQ(banner, "%%MatrixMarket matrix coordinate real symmetric");
  std::getline(ss, size);
  while (size.rfind('%', 0) == 0) std::getline(ss, size);
  EXPECT_EQ(size, "3 3 1");
  std::getline(ss, entry);
  EXPECT_EQ(entry, "3 1 0.5");
}

TEST(GraphMtx, AcceptsPatternAndComments) {
  std::stringstream ss("%%MatrixMarket matrix coordinate pattern symmetric\n% comment\n4 4 2\n2 1\n4 3\n");
  const Graph g = read_graph_mtx(ss);
  EXPECT_EQ(g.node_count(), 4);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.weight(0, 1), 1.0);
  EXPECT_EQ(g.weight(2, 3), 1.0);
}

TEST(GraphMtx, RejectsMalformedInput) {
  const auto parse = [](const std::string& text) {
    std::stringstream ss(text);
    return read_graph_mtx(ss);
  };
  EXPECT_EQ(code_of([&] { parse("garbage\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([&] { parse("%%MatrixMarket matrix coordinate real general\n2 2 1\n2 1 1\n"); }),
            ErrorCode::ParseError);
  EXPECT_EQ(code_of([&] { parse("%%MatrixMarket matrix coordinate real symmetric\n2 2 2\n2 1 1\n"); }),
            ErrorCode::ParseError);
  EXPECT_EQ(code_of([&] { parse("%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n2 1 abc\n"); }),
            ErrorCode::ParseError);
  EXPECT_EQ(code_of([&] { parse("%%MatrixMarket matrix coordinate real symmetric\n2 3 1\n2 1 1\n"); }),
            ErrorCode::ParseError);
  // Self loops surface as graph errors.
  EXPECT_EQ(code_of([&] { parse("%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n1 1 1\n"); }),
            ErrorCode::InvalidGraph);
}

TEST(Labels, RoundTripAndValidation) {
  const std::vector<int> labels{0, 0, 1, 1, 2};
  std::stringstream ss;
  write_labels_csv(labels, ss);
  EXPECT_EQ(read_labels_csv(ss, 5), labels);
  std::stringstream missing("node,community\n0,0\n2,1\n");
  EXPECT_EQ(code_of([&] { read_labels_csv(missing, 3); }), ErrorCode::ParseError);
  std::stringstream header("id,community\n0,0\n");
  EXPECT_EQ(code_of([&] { read_labels_csv(header, 1); }), ErrorCode::ParseError);
}

TEST(GraphFiles, SaveAndLoadWithLabels) {
  SbmParams p;
  p.n = 60;
  p.communities = 3;
  p.c = 6;
  p.eps = 0.2;
  const Graph g = sbm_generate(p, 3);
  const auto mtx = scratch("g.mtx"), lab = scratch("g.labels.csv");
  save_graph(g, mtx.string(), lab.string());
  const Graph back = load_graph(mtx.string(), lab.string());
  expect_same_graph(g, back);
  EXPECT_EQ(back.communities(), g.communities());
  EXPECT_TRUE(load_graph(mtx.string()).communities().empty());
  EXPECT_EQ(code_of([] { load_graph("/nonexistent/dir/g.mtx"); }), ErrorCode::IoError);
}

TEST(Signal, RoundTripIsBitExact) {
  Rng rng(4);
  std::normal_distribution<double> nd;
  Vector x(50);
  for (Index i = 0; i < 50; ++i) x[i] = nd(rng) * std::pow(10.0, static_cast<double>(i % 7) - 3);
  std::stringstream ss;
  write_signal_csv(x, ss);
  EXPECT_EQ(read_signal_csv(ss), x);
  std::stringstream bad("value\n1.0\nnope\n");
  EXPECT_EQ(code_of([&] { read_signal_csv(bad); }), ErrorCode::ParseError);
}

TEST(Sampling, WeightedAndUnweightedRoundTrip) {
  SamplingSet w;
  w.nodes = {4, 1, 4};
  w.weights = {0.1, 1.0 / 3.0, 0.1};
  std::stringstream ss;
  write_sampling_csv(w, ss);
  const SamplingSet wb = read_sampling_csv(ss);
  EXPECT_EQ(wb.nodes, w.nodes);
  EXPECT_EQ(wb.weights, w.weights);

  SamplingSet u;
  u.nodes = {7, 2};
  std::stringstream su;
  write_sampling_csv(u, su);
  const SamplingSet ub = read_sampling_csv(su);
  EXPECT_EQ(ub.nodes, u.nodes);
  EXPECT_FALSE(ub.weighted());

  std::stringstream mixed("node,weight\n1,0.5\n2,\n");
  EXPECT_EQ(code_of([&] { read_sampling_csv(mixed); }), ErrorCode::ParseError);
  std::stringstream columns("node,weight\n1,0.5,3\n");
  EXPECT_EQ(code_of([&] { read_sampling_csv(columns); }), ErrorCode::ParseError);
}

TEST(NodeValues, RoundTripAndOrder) {
  const Vector v = (Vector(4) << 0.25, 1e-12, 3.0, 0.0).finished();
  std::stringstream ss;
  write_node_values_csv(v, ss);
  EXPECT_EQ(read_node_values_csv(ss), v);
  std::stringstream order("node,value\n1,0.5\n0,0.2\n");
  EXPECT_EQ(code_of([&] { read_node_values_csv(order); }), ErrorCode::ParseError);
}

TEST(DenseMtx, ColumnMajorLayout) {
  Matrix m(2, 2);
  m << 1, 2, 3, 4;
  std::stringstream ss;
  write_dense_mtx(m, ss);
  std::string line;
  std::getline(ss, line);
  EXPECT_EQ(line, "%%MatrixMarket matrix array real general");
  std::getline(ss, line);
  EXPECT_EQ(line, "2 2");
  std::vector<std::string> rest;
  while (std::getline(ss, line)) rest.push_back(line);
  EXPECT_EQ(rest, (std::vector<std::string>{"1", "3", "2", "4"}));
}

TEST(Files, ReadWrite) {
  const auto path = scratch("blob.txt");
  write_file(path.string(), "abc\n");
  EXPECT_EQ(read_file(path.string()), "abc\n");
  EXPECT_EQ(code_of([] { read_file("/nonexistent/x"); }), ErrorCode::IoError);
  EXPECT_EQ(code_of([] { write_file("/nonexistent/dir/x", "y"); }), ErrorCode::IoError);
}
