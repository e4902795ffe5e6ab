#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "loopblocks/json_io.hpp"

using namespace loopblocks;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& text) {
    static int counter = 0;
    path = "json_io_test_tmp_" + std::to_string(counter++) + ".json";
    std::ofstream out(path);
    out << text;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("group round trip through a Cayley table file") {
  FiniteGroup d6 = parse_group("D6");
  TempFile f(group_to_json(d6));
  FiniteGroup back = load_group_json(f.path);
  CHECK(back.order() == 6);
  for (Elem a = 0; a < 6; ++a)
    for (Elem b = 0; b < 6; ++b) CHECK(back.mul(a, b) == d6.mul(a, b));
  // parse_group accepts the same file
  FiniteGroup again = parse_group("file:" + f.path);
  CHECK(again.order() == 6);
}

TEST_CASE("family shorthand in group files") {
  TempFile f(R"({"family": "Q", "param": 8})");
  CHECK(load_group_json(f.path).order() == 8);
  TempFile bad(R"({"family": "D", "param": 7})");
  CHECK_THROWS_AS(load_group_json(bad.path), validation_error);
  TempFile junk("not json at all");
  CHECK_THROWS_AS(load_group_json(junk.path), validation_error);
  CHECK_THROWS_AS(load_group_json("no_such_file.json"), validation_error);
  // a non-associative table is rejected by the group validator
  TempFile tab(R"({"order": 2, "cayley": [[0, 1], [1, 1]]})");
  CHECK_THROWS_AS(load_group_json(tab.path), validation_error);
}

TEST_CASE("character table serialization carries the frozen dihedral data") {
  CharacterTable ct = character_table(parse_group("D6"));
  std::string text = character_table_to_json(ct);
  CHECK(text.find("\"irreps\"") != std::string::npos);
  CHECK(text.find("\"classes\"") != std::string::npos);
  CHECK(text.find("\"order\": 6") != std::string::npos);
}

TEST_CASE("blocks documents re-parse consistently") {
  CharacterTable ct = character_table(parse_group("D6"));
  BlockStructure bs = blocks(validate(parse_cut("torus-slab:n=2,k=1")), ct);
  std::string text = block_structure_to_json(bs);
  BlocksRoundTrip rt = reparse_blocks_json(text);
  CHECK(rt.total_dof == 108);
  CHECK(rt.recomputed == 108);
  CHECK(rt.consistent);

  // corrupting a coefficient is caught by the recomputation
  auto pos = text.find("\"total_dof\": 108");
  REQUIRE(pos != std::string::npos);
  std::string corrupted = text;
  corrupted.replace(pos, 16, "\"total_dof\": 109");
  BlocksRoundTrip bad = reparse_blocks_json(corrupted);
  CHECK_FALSE(bad.consistent);
  CHECK(bad.total_dof == 109);
  CHECK(bad.recomputed == 108);

  CHECK_THROWS_AS(reparse_blocks_json("{\"blocks\": 3}"), validation_error);
}

TEST_CASE("gauge blocks serialize with orbits and sectors") {
  DoubleData dd = double_data(parse_group("Z2"));
  GaugeBlockStructure gb =
      gauge_blocks(validate(parse_cut("torus-slab:n=2,k=1")), dd);
  std::string text = gauge_blocks_to_json(gb);
  CHECK(text.find("\"orbits\"") != std::string::npos);
  CHECK(text.find("\"sectors\"") != std::string::npos);
}

TEST_CASE("state files") {
  TempFile f(R"({"amplitudes": [
    {"orbit": [0], "sector": [0, 0], "values": [1.0]},
    {"orbit": [1], "sector": [1, 1], "values": [0.5]}
  ]})");
  auto amps = load_state_json(f.path);
  REQUIRE(amps.size() == 2);
  CHECK(amps[0].orbit == std::vector<Elem>{0});
  CHECK(amps[0].sector == std::vector<int>{0, 0});
  CHECK(amps[1].values == std::vector<double>{0.5});

  TempFile missing(R"({"amplitudes": [{"orbit": [0]}]})");
  CHECK_THROWS_AS(load_state_json(missing.path), validation_error);
  TempFile wrong(R"({"something": 1})");
  CHECK_THROWS_AS(load_state_json(wrong.path), validation_error);
}

TEST_CASE("generic cut files with defaults") {
  TempFile f(R"({
    "x": {"generators": 2, "relators": [], "boundary": [[1, 2, -1, -2]]},
    "y": {"generators": 2, "relators": [], "boundary": [[1, 2, -1, -2]]},
    "base_points": 1
  })");
  GenericCut gc = load_generic_cut_json(f.path);
  CHECK(gc.pres_x.num_generators == 2);
  CHECK(gc.pairing == std::vector<int>{0});  // identity by default
  CHECK(gc.signs == std::vector<int>{1});    // plus by default
  CHECK(gc.base_points == 1);

  // the genus-2 split expressed as a file reproduces the closed form
  BipartitionSpec s;
  s.kind = CutKind::Generic;
  s.generic = gc;
  CharacterTable ct = character_table(parse_group("D6"));
  BlockStructure bs = blocks(validate(s), ct);
  CHECK(bs.total_dof == 486);

  TempFile bad(R"({"x": {"generators": 1, "relators": [[7]], "boundary": [[1]]},
                   "y": {"generators": 1, "relators": [], "boundary": [[1]]}})");
  CHECK_THROWS_AS(load_generic_cut_json(bad.path), validation_error);
}
