#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "agc/io.hpp"

using namespace agc;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / "agc_test_io") {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("edge list parsing") {
  TempDir t;
  std::ofstream(t.path / "e.tsv") << "# header\n0\t1\n1 2 0.5\n\n3\t0\t2\n";
  io::EdgeList el = io::read_edge_list(t.path / "e.tsv");
  REQUIRE(el.edges.size() == 3);
  CHECK(el.max_node_id == 3);
  CHECK(el.edges[0].weight == 1.0);
  CHECK(el.edges[1].weight == 0.5);

  std::ofstream(t.path / "bad.tsv") << "0\t1\n0\tx\n";
  try {
    io::read_edge_list(t.path / "bad.tsv");
    FAIL("expected parse_error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::parse_error);
    CHECK(std::string(e.what()).find("bad.tsv:2") != std::string::npos);
  }
  try {
    io::read_edge_list(t.path / "absent.tsv");
    FAIL("expected io_error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::io_error);
    CHECK(std::string(e.what()).find("absent.tsv") != std::string::npos);
  }
}

TEST_CASE("round trips") {
  TempDir t;
  std::vector<Edge> edges{{0, 1, 0.1}, {1, 2, 1.0 / 3.0}};
  io::write_edge_list(t.path / "e.tsv", edges);
  io::EdgeList back = io::read_edge_list(t.path / "e.tsv");
  CHECK(back.edges[1].weight == 1.0 / 3.0);

  FeatureMatrix x(2, 3);
  x << 1.5, -2, 1e-300, 0, 3.25, 7;
  io::write_features_csv(t.path / "x.csv", x);
  CHECK(io::read_features_csv(t.path / "x.csv") == x);

  io::write_labels(t.path / "y.txt", {3, -1, 4});
  CHECK(io::read_labels(t.path / "y.txt") == std::vector<Label>{3, -1, 4});
  io::write_assignment(t.path / "a.txt", {0, 0, 1});
  CHECK(io::read_assignment(t.path / "a.txt") == std::vector<Index>{0, 0, 1});
  CHECK(slurp(t.path / "a.txt") == "0\n0\n1\n");
}

TEST_CASE("ragged feature rows are rejected") {
  TempDir t;
  std::ofstream(t.path / "x.csv") << "1,2\n3\n";
  CHECK_THROWS_AS(io::read_features_csv(t.path / "x.csv"), Error);
}

TEST_CASE("graph loading infers the node count") {
  TempDir t;
  std::ofstream(t.path / "e.tsv") << "0\t4\n";
  Graph g = io::load_graph({t.path / "e.tsv", std::nullopt, std::nullopt, std::nullopt});
  CHECK(g.num_nodes() == 5);
  Graph h = io::load_graph({t.path / "e.tsv", std::nullopt, std::nullopt, Index{8}});
  CHECK(h.num_nodes() == 8);
  std::ofstream(t.path / "x.csv") << "1\n2\n";
  CHECK_THROWS_AS(io::load_graph({t.path / "e.tsv", t.path / "x.csv", std::nullopt, std::nullopt}),
                  Error);
}
