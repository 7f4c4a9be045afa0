// Text formats: graph files ("n d" header, one "u v" per edge entry),
// matrix files ("rows cols" header, %.17g entries), and JSON metadata.
// Output is deterministic; nothing here emits timestamps.
#pragma once

#include <Eigen/Dense>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "cutcloud/common.hpp"
#include "cutcloud/graph.hpp"
#include "json.hpp"

namespace cutcloud::io {

// %.17g round trips doubles exactly through strtod
inline std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline void write_graph(std::ostream& out, const RegularGraph& g) {
  out << g.n << ' ' << g.d << '\n';
  for (const auto& [u, v] : g.edges) out << u << ' ' << v << '\n';
}

inline RegularGraph read_graph(std::istream& in) {
  int n = 0, d = 0;
  if (!(in >> n >> d)) throw invalid_argument_error("read_graph: missing n d header");
  std::vector<Edge> edges;
  int u, v;
  while (in >> u >> v) edges.emplace_back(u, v);
  if (!in.eof()) throw invalid_argument_error("read_graph: trailing garbage after edge list");
  return RegularGraph::from_edges(n, d, edges);
}

inline void write_matrix(std::ostream& out, const Eigen::MatrixXd& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << fmt_double(m(i, j));
    }
    out << '\n';
  }
}

inline Eigen::MatrixXd read_matrix(std::istream& in) {
  Eigen::Index rows = 0, cols = 0;
  if (!(in >> rows >> cols)) throw invalid_argument_error("read_matrix: missing size header");
  if (rows < 0 || cols < 0) throw invalid_argument_error("read_matrix: negative size");
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      if (!(in >> m(i, j))) throw invalid_argument_error("read_matrix: short entry list");
  double extra;
  if (in >> extra) throw invalid_argument_error("read_matrix: trailing garbage after entries");
  return m;
}

template <typename Writer>
void write_file(const std::string& path, Writer&& writer) {
  std::ofstream out(path);
  if (!out) throw invalid_argument_error("cannot open for writing: " + path);
  writer(out);
  out.flush();
  if (!out) throw invalid_argument_error("write failed: " + path);
}

inline RegularGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_argument_error("cannot open graph file: " + path);
  return read_graph(in);
}

inline Eigen::MatrixXd read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_argument_error("cannot open matrix file: " + path);
  return read_matrix(in);
}

inline nlohmann::json instance_json(const PlantedInstance& inst) {
  nlohmann::json j;
  j["kind"] = inst.kind;
  j["n"] = inst.graph.n;
  j["d"] = inst.graph.d;
  j["delta"] = inst.delta;
  j["eps"] = inst.eps;
  j["seed"] = inst.seed;
  if (inst.planted)
    j["planted"] = inst.planted->indices;
  else
    j["planted"] = nullptr;
  return j;
}

// Reattaches sidecar metadata to a graph read from its own file.
inline PlantedInstance instance_from_json(RegularGraph graph, const nlohmann::json& j) {
  PlantedInstance inst;
  inst.graph = std::move(graph);
  inst.kind = j.at("kind").get<std::string>();
  inst.delta = j.at("delta").get<double>();
  inst.eps = j.at("eps").get<double>();
  inst.seed = j.at("seed").get<std::uint64_t>();
  if (j.at("n").get<int>() != inst.graph.n || j.at("d").get<int>() != inst.graph.d)
    throw invalid_argument_error("instance_from_json: sidecar n/d disagree with graph file");
  if (!j.at("planted").is_null())
    inst.planted = VertexSet::of(j.at("planted").get<std::vector<int>>());
  return inst;
}

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_argument_error("cannot open json file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw invalid_argument_error(std::string("bad json in ") + path + ": " + e.what());
  }
  return j;
}

}  // namespace cutcloud::io
