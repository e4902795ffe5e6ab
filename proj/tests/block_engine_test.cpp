#include <cmath>
#include <map>
#include <vector>

#include "doctest.h"
#include "loopblocks/block_engine.hpp"

using namespace loopblocks;

namespace {

ValidatedSpec cut(const std::string& text) { return validate(parse_cut(text)); }

long long dof_sum(const BlockStructure& bs) {
  long long t = 0;
  for (const Block& b : bs.blocks)
    t += b.mult.coeff * b.rows.coeff * b.cols.coeff;
  return t;
}

}  // namespace

TEST_CASE("dihedral torus slab: 6x6 + 4 copies of 3x3 + 9 copies of 2x2") {
  CharacterTable ct = character_table(parse_group("D6"));
  ValidatedSpec vs = cut("torus-slab:n=2,k=1");
  BlockStructure bs = blocks(vs, ct);
  REQUIRE(bs.blocks.size() == 3);

  CHECK(bs.blocks[0].label == std::vector<Elem>{0});
  CHECK(bs.blocks[0].label_tuples == 1);
  CHECK(bs.blocks[0].mult.coeff == 1);
  CHECK(bs.blocks[0].rows.coeff == 6);
  CHECK(bs.blocks[0].cols.coeff == 6);

  CHECK(bs.blocks[1].label == std::vector<Elem>{1});
  CHECK(bs.blocks[1].label_tuples == 2);
  CHECK(bs.blocks[1].mult.coeff == 4);
  CHECK(bs.blocks[1].rows.coeff == 3);

  CHECK(bs.blocks[2].label == std::vector<Elem>{3});
  CHECK(bs.blocks[2].label_tuples == 3);
  CHECK(bs.blocks[2].mult.coeff == 9);
  CHECK(bs.blocks[2].rows.coeff == 2);

  CHECK(bs.dropped.empty());
  CHECK(bs.total_dof == 108);
  CHECK(total_dof(bs) == 108);
  CHECK(dof_sum(bs) == 108);
  CHECK(expected_total_dof(vs, ct) == 108);
}

TEST_CASE("dihedral symmetric genus-2 cut: 18x18 + 2 copies of 9x9") {
  CharacterTable ct = character_table(parse_group("D6"));
  ValidatedSpec vs = cut("orient:gx=1,gy=1,n=1");
  BlockStructure bs = blocks(vs, ct);
  REQUIRE(bs.blocks.size() == 2);
  CHECK(bs.blocks[0].label == std::vector<Elem>{0});
  CHECK(bs.blocks[0].mult.coeff == 1);
  CHECK(bs.blocks[0].rows.coeff == 18);
  CHECK(bs.blocks[0].cols.coeff == 18);
  CHECK(bs.blocks[1].label == std::vector<Elem>{1});
  CHECK(bs.blocks[1].mult.coeff == 2);
  CHECK(bs.blocks[1].rows.coeff == 9);
  CHECK(bs.blocks[1].cols.coeff == 9);
  // the reflection class supports no genus-1 boundary solutions on either side
  REQUIRE(bs.dropped.size() == 1);
  CHECK(bs.dropped[0].label == std::vector<Elem>{3});
  CHECK(bs.dropped[0].row_coeff == 0);
  CHECK(bs.dropped[0].col_coeff == 0);
  CHECK(bs.total_dof == 486);
  CHECK(expected_total_dof(vs, ct) == 486);
}

TEST_CASE("lattice vertex counts only move powers of |G|") {
  CharacterTable ct = character_table(parse_group("D6"));
  BipartitionSpec s = parse_cut("torus-slab:n=2,k=1");
  apply_lattice_flags(s, "vx=1,vy=2,vb=4");
  BlockStructure bs = blocks(validate(s), ct);
  REQUIRE(bs.blocks.size() == 3);
  for (const Block& b : bs.blocks) {
    CHECK(b.mult.gpow == 2);  // vboundary - |A|
    CHECK(b.rows.gpow == 1);  // vx
    CHECK(b.cols.gpow == 2);  // vy
  }
  // topological content is unchanged
  CHECK(bs.blocks[0].rows.coeff == 6);
  CHECK(bs.blocks[1].mult.coeff == 4);
  CHECK(bs.total_dof == 108);
  CHECK(bs.lattice.vboundary == 4);
}

TEST_CASE("two Moebius strips: square-root counts on each side") {
  CharacterTable ct = character_table(parse_group("D6"));
  ValidatedSpec vs = cut("nonorient:kx=1,ky=1,n=1");
  BlockStructure bs = blocks(vs, ct);
  REQUIRE(bs.blocks.size() == 2);
  CHECK(bs.blocks[0].label == std::vector<Elem>{0});
  CHECK(bs.blocks[0].rows.coeff == 4);  // involution count
  CHECK(bs.blocks[0].cols.coeff == 4);
  CHECK(bs.blocks[1].label == std::vector<Elem>{1});
  CHECK(bs.blocks[1].label_tuples == 2);
  CHECK(bs.blocks[1].mult.coeff == 2);
  CHECK(bs.blocks[1].rows.coeff == 1);
  CHECK(bs.blocks[1].cols.coeff == 1);
  CHECK(bs.total_dof == 18);  // Klein bottle solution count
  CHECK(expected_total_dof(vs, ct) == 18);
}

TEST_CASE("disk against Moebius strip keeps one-sided labels out") {
  CharacterTable ct = character_table(parse_group("D6"));
  ValidatedSpec vs = cut("mixed:gx=0,ky=1,n=1");
  BlockStructure bs = blocks(vs, ct);
  REQUIRE(bs.blocks.size() == 1);
  CHECK(bs.blocks[0].label == std::vector<Elem>{0});
  CHECK(bs.blocks[0].rows.coeff == 1);
  CHECK(bs.blocks[0].cols.coeff == 4);
  // the rotation label is reachable from the strip side only
  REQUIRE(bs.dropped.size() == 2);
  CHECK(bs.dropped[0].label == std::vector<Elem>{1});
  CHECK(bs.dropped[0].row_coeff == 0);
  CHECK(bs.dropped[0].col_coeff == 1);
  CHECK(bs.total_dof == 4);
  CHECK(expected_total_dof(vs, ct) == 4);
}

TEST_CASE("lens spaces count torsion labels") {
  CharacterTable ct = character_table(parse_group("D6"));
  BlockStructure q2 = blocks(cut("lens:q=2,p=1"), ct);
  REQUIRE(q2.blocks.size() == 2);
  CHECK(q2.blocks[0].label == std::vector<Elem>{0});
  CHECK(q2.blocks[1].label == std::vector<Elem>{3});
  CHECK(q2.blocks[1].mult.coeff == 3);
  CHECK(q2.total_dof == 4);  // 1 + three involutions

  BlockStructure q3 = blocks(cut("lens:q=3,p=1"), ct);
  REQUIRE(q3.blocks.size() == 2);
  CHECK(q3.blocks[1].label == std::vector<Elem>{1});
  CHECK(q3.blocks[1].mult.coeff == 2);
  CHECK(q3.total_dof == 3);

  // blocks depend on q only, not on the coprime twist p
  CharacterTable z5 = character_table(parse_group("Z5"));
  BlockStructure p1 = blocks(cut("lens:q=5,p=1"), z5);
  BlockStructure p2 = blocks(cut("lens:q=5,p=2"), z5);
  REQUIRE(p1.blocks.size() == p2.blocks.size());
  for (size_t i = 0; i < p1.blocks.size(); ++i) {
    CHECK(p1.blocks[i].label == p2.blocks[i].label);
    CHECK(p1.blocks[i].mult.coeff == p2.blocks[i].mult.coeff);
  }
  CHECK(p1.total_dof == 5);
}

TEST_CASE("totals match independent solution counts across cuts and groups") {
  for (const char* gname : {"Z4", "Q8", "D8"}) {
    CharacterTable ct = character_table(parse_group(gname));
    for (const char* c :
         {"orient:gx=0,gy=1,n=1", "orient:gx=0,gy=0,n=2,s=+-",
          "orient:gx=1,gy=0,n=2", "nonorient:kx=2,ky=1,n=2",
          "mixed:gx=1,ky=1,n=1", "torus-slab:n=3,k=2", "lens:q=4,p=1"}) {
      ValidatedSpec vs = cut(c);
      BlockStructure bs = blocks(vs, ct);
      CAPTURE(gname);
      CAPTURE(c);
      CHECK(bs.total_dof == dof_sum(bs));
      CHECK(bs.total_dof == expected_total_dof(vs, ct));
    }
  }
}

TEST_CASE("generic cut path agrees with the surface formulas") {
  CharacterTable ct = character_table(parse_group("D6"));
  for (const char* c : {"orient:gx=1,gy=0,n=1", "nonorient:kx=1,ky=2,n=1"}) {
    ValidatedSpec vs = cut(c);
    BipartitionSpec gs;
    gs.kind = CutKind::Generic;
    gs.generic = generic_from_surface(vs.spec);
    ValidatedSpec gvs = validate(gs);
    BlockStructure direct = blocks(vs, ct);
    BlockStructure via_pres = blocks(gvs, ct);
    CHECK(direct.total_dof == via_pres.total_dof);
  }
}

TEST_CASE("label enumeration respects the cap") {
  CharacterTable ct = character_table(parse_group("D6"));
  CHECK_THROWS_AS(blocks(cut("orient:gx=0,gy=0,n=3"), ct, 10), cap_exceeded);
  CHECK_THROWS_AS(blocks(cut("torus-slab:n=4,k=1"), ct, 10), cap_exceeded);
  CHECK_NOTHROW(blocks(cut("orient:gx=0,gy=0,n=3"), ct, 30));
}

TEST_CASE("spectrum of supplied block amplitudes") {
  CharacterTable ct = character_table(parse_group("D6"));
  BlockStructure bs = blocks(cut("torus-slab:n=2,k=1"), ct);

  // identity on the 6x6 identity-label block: six equal Schmidt values
  std::map<size_t, Eigen::MatrixXcd> mats;
  mats[0] = Eigen::MatrixXcd::Identity(6, 6);
  SpectrumResult sr = spectrum_from_amplitudes(bs, mats);
  CHECK(sr.lines.size() == 6);
  for (const SpectrumLine& l : sr.lines) {
    CHECK(l.block_index == 0);
    CHECK(l.sigma == doctest::Approx(1.0));
    CHECK(l.deg_coeff == 1);
  }
  CHECK(sr.entropy == doctest::Approx(std::log(6.0)).epsilon(1e-12));

  // single unit amplitude in the 9-fold replicated reflection block
  std::map<size_t, Eigen::MatrixXcd> one;
  one[2] = Eigen::MatrixXcd::Zero(2, 2);
  one[2](0, 0) = 1.0;
  SpectrumResult sr2 = spectrum_from_amplitudes(bs, one);
  REQUIRE(sr2.lines.size() == 1);
  CHECK(sr2.lines[0].deg_coeff == 9);
  CHECK(sr2.entropy == doctest::Approx(std::log(9.0)).epsilon(1e-12));

  // equal-weight mix of both: ln(6 + 9)
  mats[2] = one[2];
  SpectrumResult sr3 = spectrum_from_amplitudes(bs, mats);
  CHECK(sr3.entropy == doctest::Approx(std::log(15.0)).epsilon(1e-12));

  // validation
  std::map<size_t, Eigen::MatrixXcd> bad;
  bad[0] = Eigen::MatrixXcd::Zero(3, 3);
  CHECK_THROWS_AS(spectrum_from_amplitudes(bs, bad), validation_error);
  std::map<size_t, Eigen::MatrixXcd> oor;
  oor[7] = Eigen::MatrixXcd::Identity(2, 2);
  CHECK_THROWS_AS(spectrum_from_amplitudes(bs, oor), validation_error);
  std::map<size_t, Eigen::MatrixXcd> empty;
  CHECK_THROWS_AS(spectrum_from_amplitudes(bs, empty), validation_error);
}
