#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "d2dmatch/generators.hpp"
#include "d2dmatch/graph_io.hpp"

using namespace d2d;

namespace {
std::filesystem::path tmp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}
}  // namespace

TEST_CASE("graph json round trip is exact") {
  const auto model = WeightModel::uniform({1.0, 1.0 + 1e-9});
  auto g = generate_geometric(80, 100.0, 40.0, model, 17);
  g = with_random_quantities(g, std::vector<int>{1, 2, 3}, 5);

  const auto path = tmp_file("d2d_roundtrip.json");
  write_graph_json(g, path.string());
  const auto h = read_graph_json(path.string());
  REQUIRE(h.num_nodes() == g.num_nodes());
  REQUIRE(h.num_edges() == g.num_edges());
  for (std::int64_t e = 0; e < g.num_edges(); ++e) {
    CHECK(h.edge(e).u == g.edge(e).u);
    CHECK(h.edge(e).v == g.edge(e).v);
    CHECK(h.edge(e).w == g.edge(e).w);  // bit-exact through JSON
  }
  for (int i = 0; i < g.num_nodes(); ++i) {
    CHECK(h.quantity(i) == g.quantity(i));
    CHECK(h.coord(i).x == g.coord(i).x);
    CHECK(h.coord(i).y == g.coord(i).y);
  }
  std::filesystem::remove(path);
}

TEST_CASE("graph csv round trip") {
  const auto g = generate_line(50, WeightModel::uniform({1.0, 2.0}), 3);
  const auto path = tmp_file("d2d_edges.csv");
  write_graph_csv(g, path.string());
  const auto h = read_graph_csv(path.string());
  REQUIRE(h.num_edges() == g.num_edges());
  for (std::int64_t e = 0; e < g.num_edges(); ++e) {
    CHECK(h.edge(e).w == g.edge(e).w);
  }
  std::filesystem::remove(path);
}

TEST_CASE("location csv parses and reports the offending line") {
  std::stringstream ok("user_id,x,y,floor\nu1,0.5,1.5,0\nu2,2.5,3.5,1\n");
  const auto recs = parse_locations_csv(ok);
  REQUIRE(recs.size() == 2);
  CHECK(recs[1].x == 2.5);
  CHECK(recs[1].floor == 1);

  std::stringstream no_floor("user_id,x,y\nu1,0.5,1.5\n");
  CHECK(parse_locations_csv(no_floor)[0].floor == -1);

  std::stringstream bad_header("id,x,y\nu1,0,0\n");
  CHECK_THROWS_AS(parse_locations_csv(bad_header), ParseError);

  std::stringstream bad_row("user_id,x,y\nu1,0.5\n");
  try {
    parse_locations_csv(bad_row);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }

  std::stringstream bad_num("user_id,x,y\nu1,0.5,abc\n");
  try {
    parse_locations_csv(bad_num);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}
