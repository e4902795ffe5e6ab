#include <algorithm>
#include <vector>

#include "doctest.h"
#include "loopblocks/block_engine.hpp"
#include "loopblocks/gauge.hpp"
#include "loopblocks/lattice.hpp"

using namespace loopblocks;

namespace {

int euler(const Lattice& lat) {
  return lat.num_vertices - static_cast<int>(lat.edges.size()) +
         static_cast<int>(lat.plaquettes.size());
}

}  // namespace

TEST_CASE("builtin meshes have the right cell counts") {
  Lattice torus = builtin_lattice("torus", 2);
  CHECK(torus.name == "torus:2");
  CHECK(torus.num_vertices == 4);
  CHECK(torus.edges.size() == 8);
  CHECK(torus.plaquettes.size() == 4);
  CHECK(euler(torus) == 0);
  CHECK(torus.base_points == std::vector<int>{0, 1});

  Lattice klein = builtin_lattice("klein", 2);
  CHECK(euler(klein) == 0);
  CHECK(klein.base_points == std::vector<int>{0, 2});

  Lattice km = builtin_lattice("klein-mobius", 2);
  CHECK(km.num_vertices == 8);
  CHECK(km.edges.size() == 16);
  CHECK(euler(km) == 0);

  Lattice fan = builtin_lattice("rp2-fan", 2);
  CHECK(fan.num_vertices == 5);
  CHECK(fan.edges.size() == 10);
  CHECK(euler(fan) == 1);

  CHECK(euler(builtin_lattice("sigma2-octagon")) == -2);
  CHECK(euler(builtin_lattice("rp2-bigon")) == 1);
  CHECK(euler(builtin_lattice("torus-disk", 3)) == 0);
  CHECK(euler(builtin_lattice("torus", 4)) == 0);
  CHECK(euler(builtin_lattice("klein", 3)) == 0);

  CHECK_THROWS_AS(builtin_lattice("torus", 1), validation_error);
  // at m = 2 the disk's neighbouring faces degenerate (see builtin_lattice)
  CHECK_THROWS_AS(builtin_lattice("torus-disk", 2), validation_error);
  CHECK_THROWS_AS(builtin_lattice("moebius-strip", 2), validation_error);
}

TEST_CASE("vertex side bookkeeping") {
  LatticeCounts tc = derive_counts(builtin_lattice("torus", 2));
  CHECK(tc.vboundary == 4);  // every vertex touches both sides at m = 2
  CHECK(tc.vx == 0);
  CHECK(tc.vy == 0);

  LatticeCounts t3 = derive_counts(builtin_lattice("torus", 3));
  CHECK(t3.vboundary + t3.vx + t3.vy == 9);
  CHECK(t3.vboundary == 6);  // two vertex columns on the cut
  CHECK(t3.vx == 0);
  CHECK(t3.vy == 3);

  LatticeCounts km = derive_counts(builtin_lattice("klein-mobius", 2));
  CHECK(km.vboundary == 4);  // the shared circle
  CHECK(km.vx == 2);         // one strip core each
  CHECK(km.vy == 2);

  LatticeCounts fan = derive_counts(builtin_lattice("rp2-fan", 2));
  CHECK(fan.vboundary == 4);
  CHECK(fan.vx == 0);
  CHECK(fan.vy == 1);  // the apex

  LatticeCounts oct = derive_counts(builtin_lattice("sigma2-octagon"));
  CHECK(oct.vboundary == 1);
}

TEST_CASE("flatness and gauge moves") {
  FiniteGroup g = parse_group("Z2");
  Lattice lat = builtin_lattice("torus", 2);
  auto cfgs = flat_configs(g, lat);
  CHECK(cfgs.size() == 32);
  CHECK(flat_config_count(g, lat) == 32);
  for (const auto& c : cfgs) CHECK(is_flat(g, lat, c));

  // flipping one edge of a flat configuration breaks a plaquette
  auto broken = cfgs[0];
  broken[3] ^= 1;
  CHECK_FALSE(is_flat(g, lat, broken));

  // gauge transforms preserve flatness; the identity transform is trivial
  std::vector<Elem> at(lat.num_vertices, 0);
  CHECK(gauge_transform(g, lat, cfgs[5], at) == cfgs[5]);
  at = {1, 0, 1, 0};
  auto moved = gauge_transform(g, lat, cfgs[5], at);
  CHECK(is_flat(g, lat, moved));
  // the move set is closed: the result is one of the flat configurations
  CHECK(std::find(cfgs.begin(), cfgs.end(), moved) != cfgs.end());

  CHECK_THROWS_AS(flat_configs(g, lat, 10), cap_exceeded);
}

TEST_CASE("flat counts factor as solution count times pointed gauge sweep") {
  FiniteGroup z3 = parse_group("Z3");
  // |flat| = |Hom(pi1(M), G)| * N^(V-1)
  CHECK(flat_config_count(z3, builtin_lattice("torus", 2)) == 9 * 27);
  CHECK(flat_config_count(z3, builtin_lattice("klein", 2)) == 3 * 27);
  CHECK(flat_config_count(z3, builtin_lattice("sigma2-octagon")) == 81);
  CHECK(flat_config_count(z3, builtin_lattice("rp2-fan", 2)) == 1 * 81);
  FiniteGroup z2 = parse_group("Z2");
  CHECK(flat_config_count(z2, builtin_lattice("klein-mobius", 2)) == 4 * 128);
  CHECK(flat_config_count(z2, builtin_lattice("torus-disk", 3)) == 4 * 256);
}

TEST_CASE("enumerated blocks: torus tube") {
  FiniteGroup g = parse_group("Z2");
  EmpiricalBlocks eb = empirical_blocks(g, builtin_lattice("torus", 2));
  REQUIRE(eb.blocks.size() == 8);
  for (const auto& b : eb.blocks) {
    CHECK(b.rows == 2);
    CHECK(b.cols == 2);
    CHECK(b.count == 4);
  }
  CHECK(eb.total == 32);
  CHECK(eb.counts.vboundary == 4);
}

TEST_CASE("enumerated blocks: Klein bottle from two Moebius strips") {
  FiniteGroup g = parse_group("Z2");
  EmpiricalBlocks eb = empirical_blocks(g, builtin_lattice("klein-mobius", 2));
  REQUIRE(eb.blocks.size() == 8);
  for (const auto& b : eb.blocks) {
    CHECK(b.rows == 8);
    CHECK(b.cols == 8);
  }
  CHECK(eb.total == 512);
}

TEST_CASE("enumerated blocks match the closed-form engine") {
  // expand engine blocks into explicit (rows, cols, copies) and compare
  for (auto [gname, lname, msize] :
       std::vector<std::tuple<const char*, const char*, int>>{
           {"Z3", "torus", 2},
           {"Z3", "klein", 2},
           {"Z2", "torus-disk", 3},
           {"Z3", "rp2-fan", 2},
           {"Z3", "sigma2-octagon", 0}}) {
    CAPTURE(gname);
    CAPTURE(lname);
    FiniteGroup g = parse_group(gname);
    CharacterTable ct = character_table(g);
    Lattice lat = builtin_lattice(lname, msize);
    ReferenceCut rc = lattice_reference(lname);
    LatticeCounts c = derive_counts(lat);
    rc.spec.lattice.vx = rc.transpose ? c.vy : c.vx;
    rc.spec.lattice.vy = rc.transpose ? c.vx : c.vy;
    rc.spec.lattice.vboundary = c.vboundary;
    BlockStructure bs = blocks(validate(rc.spec), ct);
    const long long N = g.order();

    std::map<std::pair<long long, long long>, long long> expected;
    for (const Block& b : bs.blocks) {
      long long rows = b.rows.coeff * ipow(N, static_cast<int>(b.rows.gpow));
      long long cols = b.cols.coeff * ipow(N, static_cast<int>(b.cols.gpow));
      if (rc.transpose) std::swap(rows, cols);
      expected[{rows, cols}] +=
          b.mult.coeff * ipow(N, static_cast<int>(b.mult.gpow));
    }
    std::map<std::pair<long long, long long>, long long> seen;
    EmpiricalBlocks eb = empirical_blocks(g, lat);
    for (const EmpiricalBlock& b : eb.blocks) ++seen[{b.rows, b.cols}];
    CHECK(expected == seen);
    CHECK(eb.total == flat_config_count(g, lat));
  }
}

TEST_CASE("gauge class counts match ground-state counts") {
  FiniteGroup z2 = parse_group("Z2");
  FiniteGroup z3 = parse_group("Z3");
  DoubleData d2 = double_data(z2);
  DoubleData d3 = double_data(z3);
  CHECK(empirical_gauge_dof(z2, builtin_lattice("torus", 2)) ==
        gsd(d2, true, 1));
  CHECK(empirical_gauge_dof(z3, builtin_lattice("torus", 2)) ==
        gsd(d3, true, 1));
  CHECK(empirical_gauge_dof(z2, builtin_lattice("klein", 2)) ==
        gsd(d2, false, 2));
  CHECK(empirical_gauge_dof(z2, builtin_lattice("klein-mobius", 2)) ==
        gsd(d2, false, 2));
  CHECK(empirical_gauge_dof(z3, builtin_lattice("rp2-fan", 2)) ==
        gsd(d3, false, 1));
  CHECK(empirical_gauge_dof(z3, builtin_lattice("sigma2-octagon")) ==
        gsd(d3, true, 2));
  CHECK(empirical_gauge_dof(z2, builtin_lattice("torus-disk", 3)) ==
        gsd(d2, true, 1));
}

TEST_CASE("reference cuts carry the mesh topology") {
  ReferenceCut torus = lattice_reference("torus");
  CHECK(torus.spec.kind == CutKind::TorusSlab);
  CHECK_FALSE(torus.transpose);
  ReferenceCut disk = lattice_reference("torus-disk");
  CHECK(disk.spec.kind == CutKind::OrientPair);
  CHECK(disk.spec.gy == 1);
  ReferenceCut fan = lattice_reference("rp2-fan");
  CHECK(fan.spec.kind == CutKind::Mixed);
  CHECK(fan.transpose);  // mesh X side is the Moebius strip
  ReferenceCut km = lattice_reference("klein-mobius");
  CHECK(km.spec.kind == CutKind::NonorientPair);
  CHECK(validate(lattice_reference("klein").spec).manifold.name == "N_2");
  CHECK_THROWS_AS(lattice_reference("nonsense"), validation_error);
}
