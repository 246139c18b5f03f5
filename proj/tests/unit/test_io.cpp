#include <cstdio>
#include <filesystem>

#include <gtest/gtest.h>

#include "pathpair/constructions.hpp"
#include "pathpair/error.hpp"
#include "pathpair/io.hpp"

namespace pathpair {
namespace {

using io::json;

TEST(IoTest, GraphRoundTrip) {
  for (const Graph& g : {complete(5), cartesian_product(cycle(3), path(2)), complete_bipartite(2, 3),
                         blown_up_path(3, 2).graph}) {
    const Graph back = io::graph_from_json(io::to_json(g));
    EXPECT_EQ(back, g);
    EXPECT_EQ(back.has_labels(), g.has_labels());
    EXPECT_EQ(back.product_shape(), g.product_shape());
    EXPECT_EQ(io::to_json(back), io::to_json(g));
  }
}

TEST(IoTest, PairsAndPaths) {
  const std::vector<TerminalPair> pairs{{0, 3}, {1, 2}};
  EXPECT_EQ(io::to_json(pairs).dump(), R"({"pairs":[[0,3],[1,2]]})");
  EXPECT_EQ(io::pairs_from_json(io::to_json(pairs)), pairs);

  PathSystem s;
  s.routes = {Path{{0, 1, 2, 3}}, Path{{9, 4, 12}}, Path{{5}}};
  EXPECT_EQ(io::path_system_from_json(io::to_json(s)), s);
  const json delta = io::to_json(s, io::RouteEncoding::kDelta);
  EXPECT_EQ(delta["encoding"], "delta");
  EXPECT_EQ(delta["routes"][1], json({9, -5, 8}));
  EXPECT_EQ(io::path_system_from_json(delta), s);
}

TEST(IoTest, MalformedInputCarriesPosition) {
  try {
    io::parse(R"({"pairs": [[1,2],)", "pairs.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find("pairs.json"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("byte"), std::string::npos);
  }
  EXPECT_THROW(io::graph_from_json(json::parse(R"({"n":2,"edges":[[0,0]]})")), Error);
  EXPECT_THROW(io::graph_from_json(json::parse(R"({"n":2,"edges":[[0,-1]]})")), Error);
  EXPECT_THROW(io::pairs_from_json(json::parse(R"({"pairs":[[0,1,2]]})")), Error);
}

TEST(IoTest, EdgeListAndDot) {
  const Graph g = cycle(4);
  const std::string text = io::to_edge_list(g);
  EXPECT_EQ(io::graph_from_edge_list(text), g);
  EXPECT_EQ(io::graph_from_edge_list("# n 3\n0 1\n\n1 2\n"), path(3));
  const std::string dot = io::to_dot(g, "C4");
  EXPECT_NE(dot.find("graph C4"), std::string::npos);
  EXPECT_NE(dot.find("0 -- 1"), std::string::npos);
}

TEST(IoTest, GzipFiles) {
  const std::string payload(10000, 'x');
  EXPECT_EQ(io::gzip_decompress(io::gzip_compress(payload)), payload);
  EXPECT_TRUE(io::is_gzip(io::gzip_compress("abc")));
  EXPECT_FALSE(io::is_gzip("{}"));

  const auto dir = std::filesystem::temp_directory_path();
  const std::string packed = (dir / "pathpair_io_test.json.gz").string();
  const std::string plain = (dir / "pathpair_io_test.json").string();
  io::write_file(packed, payload);
  io::write_file(plain, payload);
  EXPECT_LT(std::filesystem::file_size(packed), payload.size());
  EXPECT_EQ(io::read_file(packed), payload);
  EXPECT_EQ(io::read_file(plain), payload);
  std::remove(packed.c_str());
  std::remove(plain.c_str());
  EXPECT_THROW(io::read_file(plain), Error);
}

}  // namespace
}  // namespace pathpair
