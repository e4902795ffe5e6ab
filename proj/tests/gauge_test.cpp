#include <cmath>
#include <vector>

#include "doctest.h"
#include "loopblocks/gauge.hpp"

using namespace loopblocks;

namespace {

ValidatedSpec cut(const std::string& text) { return validate(parse_cut(text)); }

const GaugeOrbit& orbit_of(const GaugeBlockStructure& gb,
                           const std::vector<Elem>& rep) {
  for (const auto& o : gb.orbits)
    if (o.rep == rep) return o;
  REQUIRE(false);
  return gb.orbits.front();
}

bool has_sector(const GaugeOrbit& o, std::vector<int> alphas, long long d,
                long long x, long long y) {
  for (const auto& s : o.sectors)
    if (s.alphas == alphas) return s.d == d && s.x == x && s.y == y;
  return false;
}

}  // namespace

TEST_CASE("stabilizers and orbits of boundary labels") {
  FiniteGroup g = parse_group("D6");
  ValidatedSpec slab = cut("torus-slab:n=2,k=1");
  StabOrbit id = stabilizer_and_orbit(slab, g, {0});
  CHECK(id.orbit_size == 1);
  CHECK(id.stab_order == 36);  // C(1) x C(1)
  REQUIRE(id.factors.size() == 2);
  CHECK(id.factors[0].size() == 6);

  StabOrbit rot = stabilizer_and_orbit(slab, g, {1});
  CHECK(rot.orbit_size == 4);  // class size squared
  CHECK(rot.stab_order == 9);
  CHECK(rot.factors[0].size() == 3);

  ValidatedSpec s2 = cut("orient:gx=1,gy=1,n=1");
  StabOrbit r2 = stabilizer_and_orbit(s2, g, {1});
  CHECK(r2.orbit_size == 2);
  CHECK(r2.stab_order == 3);
  REQUIRE(r2.factors.size() == 1);
}

TEST_CASE("sector multiplicities on the dihedral torus slab") {
  DoubleData dd = double_data(parse_group("D6"));
  ValidatedSpec slab = cut("torus-slab:n=2,k=1");
  GaugeBlockStructure gb = gauge_blocks(slab, dd);
  CHECK(gb.base_points == 2);
  REQUIRE(gb.orbits.size() == 3);

  const GaugeOrbit& o1 = orbit_of(gb, {0});
  CHECK(o1.orbit_size == 1);
  CHECK(o1.stab_order == 36);
  REQUIRE(o1.sectors.size() == 3);
  CHECK(has_sector(o1, {0, 0}, 1, 1, 1));
  CHECK(has_sector(o1, {1, 1}, 1, 1, 1));
  CHECK(has_sector(o1, {2, 2}, 4, 1, 1));  // 2-dim irrep on both points

  const GaugeOrbit& orot = orbit_of(gb, {1});
  CHECK(orot.orbit_size == 4);
  // the slab pairs a centralizer irrep with its conjugate
  CHECK(has_sector(orot, {0, 0}, 1, 1, 1));
  CHECK(has_sector(orot, {1, 2}, 1, 1, 1));
  CHECK(has_sector(orot, {2, 1}, 1, 1, 1));
  CHECK_FALSE(has_sector(orot, {1, 1}, 1, 1, 1));

  const GaugeOrbit& oref = orbit_of(gb, {3});
  CHECK(oref.orbit_size == 9);
  CHECK(oref.stab_order == 4);
  REQUIRE(oref.sectors.size() == 2);

  // total sector count over all orbits is the torus ground-state count
  long long total = 0;
  for (const auto& o : gb.orbits) total += fiber_orbit_count(slab, dd, o.rep);
  CHECK(total == 8);
  CHECK(total == gsd(dd, true, 1));
}

TEST_CASE("sector multiplicities on the symmetric genus-2 cut") {
  DoubleData dd = double_data(parse_group("D6"));
  ValidatedSpec s2 = cut("orient:gx=1,gy=1,n=1");
  GaugeBlockStructure gb = gauge_blocks(s2, dd);
  CHECK(gb.base_points == 1);
  REQUIRE(gb.orbits.size() == 2);  // reflection labels are unreachable
  const GaugeOrbit& o1 = orbit_of(gb, {0});
  CHECK(has_sector(o1, {0}, 1, 8, 8));
  CHECK(has_sector(o1, {1}, 1, 4, 4));
  CHECK(has_sector(o1, {2}, 2, 3, 3));
  const GaugeOrbit& orot = orbit_of(gb, {1});
  CHECK(has_sector(orot, {0}, 1, 3, 3));
  CHECK(has_sector(orot, {1}, 1, 3, 3));
  CHECK(has_sector(orot, {2}, 1, 3, 3));

  CHECK(fiber_orbit_count(s2, dd, {0}) == 89);
  CHECK(fiber_orbit_count(s2, dd, {1}) == 27);
  CHECK(89 + 27 == gsd(dd, true, 2));
}

TEST_CASE("one-sided sectors appear with a zero count") {
  DoubleData dd = double_data(parse_group("D6"));
  ValidatedSpec mx = cut("mixed:gx=1,ky=1,n=1");
  GaugeBlockStructure gb = gauge_blocks(mx, dd);
  const GaugeOrbit& o1 = orbit_of(gb, {0});
  CHECK(has_sector(o1, {0}, 1, 8, 2));
  CHECK(has_sector(o1, {1}, 1, 4, 0));  // genus side only
  CHECK(has_sector(o1, {2}, 2, 3, 1));
  CHECK(fiber_orbit_count(mx, dd, {0}) == 8 * 2 + 3 * 1);
}

TEST_CASE("permutation traces match fiber sizes and centralizer restrictions") {
  DoubleData dd = double_data(parse_group("D6"));
  ValidatedSpec s2 = cut("orient:gx=1,gy=1,n=1");
  // identity stabilizer element: trace = fiber size
  CHECK(perm_trace(s2, dd, Side::X, {0}, {0}) == 18);
  CHECK(perm_trace(s2, dd, Side::Y, {0}, {0}) == 18);
  // conjugation by a rotation fixes the commuting pairs inside C(r)
  CHECK(perm_trace(s2, dd, Side::X, {0}, {1}) == 9);
  // fiber over a rotation label
  CHECK(perm_trace(s2, dd, Side::X, {1}, {0}) == 9);
  // the stabilizer element must centralize the label
  CHECK_THROWS_AS(perm_trace(s2, dd, Side::X, {1}, {3}), validation_error);
  // slabs have no side presentation
  ValidatedSpec slab = cut("torus-slab:n=2,k=1");
  CHECK_THROWS_AS(perm_trace(slab, dd, Side::X, {0}, {0}), validation_error);
}

TEST_CASE("anyon tuples seen by the two sides") {
  DoubleData dd = double_data(parse_group("Z4"));
  // plain gluing: both sides see the same anyon
  ValidatedSpec s2 = cut("orient:gx=1,gy=1,n=1");
  std::vector<int> ax = sector_anyons(s2, dd, Side::X, {1}, {1});
  std::vector<int> ay = sector_anyons(s2, dd, Side::Y, {1}, {1});
  REQUIRE(ax.size() == 1);
  CHECK(ax == ay);
  CHECK(ax[0] == dd.find(AnyonLabel{1, 1}));

  // a flipped circle transports the Y anyon to the dual conjugate partner
  ValidatedSpec tube = cut("orient:gx=0,gy=0,n=2,s=+-");
  std::vector<int> ty = sector_anyons(tube, dd, Side::Y, {1, 1}, {0, 1});
  REQUIRE(ty.size() == 2);
  CHECK(ty[0] == dd.find(AnyonLabel{1, 0}));  // plus circle: unchanged
  CHECK(ty[1] == dd.find(AnyonLabel{3, 1}));  // dual of the conjugate irrep
  std::vector<int> tx = sector_anyons(tube, dd, Side::X, {1, 1}, {0, 1});
  CHECK(tx[0] == dd.find(AnyonLabel{1, 0}));
  CHECK(tx[1] == dd.find(AnyonLabel{1, 1}));

  CHECK_THROWS_AS(sector_anyons(s2, dd, Side::X, {1}, {0, 1}),
                  validation_error);
  CHECK_THROWS_AS(sector_anyons(s2, dd, Side::X, {1}, {9}), validation_error);
}

TEST_CASE("sector multiplicities agree with the S-matrix formula") {
  DoubleData dd = double_data(parse_group("D6"));
  SMatrix sm = s_matrix(dd);
  ValidatedSpec s2 = cut("orient:gx=1,gy=1,n=1");
  GaugeBlockStructure gb = gauge_blocks(s2, dd);
  for (const auto& o : gb.orbits)
    for (const auto& s : o.sectors) {
      long long via_s = multiplicity_smatrix(
          dd, sm, true, 1, sector_anyons(s2, dd, Side::X, o.rep, s.alphas));
      CHECK(via_s == s.x);
    }
  // Moebius side of the mixed cut: non-orientable formula with one crosscap
  ValidatedSpec mx = cut("mixed:gx=1,ky=1,n=1");
  for (const auto& o : gauge_blocks(mx, dd).orbits)
    for (const auto& s : o.sectors) {
      long long via_s = multiplicity_smatrix(
          dd, sm, false, 1, sector_anyons(mx, dd, Side::Y, o.rep, s.alphas));
      CHECK(via_s == s.y);
    }
  CHECK_THROWS_AS(multiplicity_smatrix(dd, sm, true, 1, {}),
                  validation_error);
}

TEST_CASE("minimal-state topological entropy") {
  DoubleData dd = double_data(parse_group("D6"));
  ValidatedSpec slab = cut("torus-slab:n=2,k=1");
  double twol6 = 2 * std::log(6.0);
  CHECK(tee_minimal(slab, dd, {0}, {0, 0}) ==
        doctest::Approx(twol6).epsilon(1e-12));
  CHECK(tee_minimal(slab, dd, {0}, {2, 2}) ==
        doctest::Approx(twol6 - std::log(4.0)).epsilon(1e-12));
  CHECK(tee_minimal(slab, dd, {1}, {1, 2}) ==
        doctest::Approx(twol6 - std::log(4.0)).epsilon(1e-12));
  CHECK(tee_minimal(slab, dd, {3}, {0, 0}) ==
        doctest::Approx(twol6 - std::log(9.0)).epsilon(1e-12));
  // slab sectors pair conjugate irreps, so (1,1) is absent over a rotation
  CHECK_THROWS_AS(tee_minimal(slab, dd, {1}, {1, 1}), validation_error);
  // reachable from one side only
  ValidatedSpec mx = cut("mixed:gx=1,ky=1,n=1");
  CHECK_THROWS_AS(tee_minimal(mx, dd, {0}, {1}), validation_error);
}

TEST_CASE("entropy of general sector states") {
  DoubleData dd = double_data(parse_group("D6"));
  ValidatedSpec slab = cut("torus-slab:n=2,k=1");
  // one unit amplitude: entropy = |A| ln|G| - tee of that sector
  for (auto [phi, alphas] :
       std::vector<std::pair<std::vector<Elem>, std::vector<int>>>{
           {{0}, {0, 0}}, {{1}, {1, 2}}, {{3}, {0, 0}}}) {
    SectorAmplitudes a{phi, alphas, {1.0}};
    double s = entropy_general(slab, dd, {a});
    double gamma = tee_minimal(slab, dd, phi, alphas);
    CHECK(s == doctest::Approx(2 * std::log(6.0) - gamma).epsilon(1e-12));
  }

  // equal-weight spread over all four sectors of the Z2 slab: ln 4
  DoubleData z2 = double_data(parse_group("Z2"));
  std::vector<SectorAmplitudes> amps;
  for (Elem c : {0, 1})
    for (int k : {0, 1})
      amps.push_back({{c}, {k, k}, {1.0}});
  CHECK(entropy_general(cut("torus-slab:n=2,k=1"), z2, amps) ==
        doctest::Approx(std::log(4.0)).epsilon(1e-12));

  // boundary vertices beyond the base points add ln|G| each
  BipartitionSpec wide = parse_cut("torus-slab:n=2,k=1");
  apply_lattice_flags(wide, "vb=5");
  SectorAmplitudes vac{{0}, {0, 0}, {1.0}};
  CHECK(entropy_general(validate(wide), z2, {vac}) ==
        doctest::Approx(3 * std::log(2.0)).epsilon(1e-12));

  // validation
  DoubleData d6 = dd;
  SectorAmplitudes dup{{0}, {0, 0}, {1.0}};
  CHECK_THROWS_AS(entropy_general(slab, d6, {dup, dup}), validation_error);
  CHECK_THROWS_AS(entropy_general(slab, d6, {{{2}, {0, 0}, {1.0}}}),
                  validation_error);  // non-canonical orbit label
  CHECK_THROWS_AS(entropy_general(slab, d6, {{{0}, {0, 0}, {1.0, 1.0}}}),
                  validation_error);  // multiplicity is 1
  CHECK_THROWS_AS(entropy_general(slab, d6, {{{0}, {0, 0}, {-1.0}}}),
                  validation_error);
  CHECK_THROWS_AS(entropy_general(slab, d6, {}), validation_error);
}

TEST_CASE("ground-state counts across surfaces") {
  DoubleData s3 = double_data(parse_group("S3"));
  CHECK(gsd(s3, true, 0) == 1);
  CHECK(gsd(s3, true, 1) == 8);
  CHECK(gsd(s3, true, 2) == 116);
  DoubleData z2 = double_data(parse_group("Z2"));
  CHECK(gsd(z2, true, 0) == 1);
  CHECK(gsd(z2, true, 1) == 4);
  CHECK(gsd(z2, true, 3) == 64);  // 4^g for an abelian double
  CHECK(gsd(z2, false, 1) == 2);
  CHECK(gsd(z2, false, 2) == 4);
  // both routes agree
  for (const char* name : {"Z2", "Z4", "S3", "Q8"}) {
    DoubleData dd = double_data(parse_group(name));
    SMatrix sm = s_matrix(dd);
    for (int g = 0; g <= 2; ++g)
      CHECK(gsd(dd, true, g) == gsd_from_smatrix(dd, sm, true, g));
    for (int k = 1; k <= 3; ++k)
      CHECK(gsd(dd, false, k) == gsd_from_smatrix(dd, sm, false, k));
  }
}

TEST_CASE("orbit counts by explicit enumeration") {
  DoubleData z2 = double_data(parse_group("Z2"));
  CHECK(burnside_orbit_count(cut("orient:gx=0,gy=0,n=2"), z2) == 4);
  CHECK(burnside_orbit_count(cut("orient:gx=0,gy=0,n=2,s=+-"), z2) == 4);
  CHECK(burnside_orbit_count(cut("nonorient:kx=1,ky=1,n=1"), z2) == 4);
  DoubleData d6 = double_data(parse_group("D6"));
  CHECK(burnside_orbit_count(cut("orient:gx=0,gy=0,n=2"), d6) == 8);
  CHECK(burnside_orbit_count(cut("orient:gx=1,gy=1,n=1"), d6) == 116);
  CHECK_THROWS_AS(burnside_orbit_count(cut("torus-slab:n=2,k=1"), z2),
                  validation_error);
  CHECK_THROWS_AS(
      burnside_orbit_count(cut("orient:gx=2,gy=2,n=1"), d6, 1000),
      cap_exceeded);
}
