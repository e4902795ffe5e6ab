#pragma once

#include <vector>

#include "loopblocks/block_engine.hpp"
#include "loopblocks/double_mtc.hpp"
#include "loopblocks/topology.hpp"

namespace loopblocks {

enum class Side { X, Y };

// One irrep sector of the stabilizer G_phi: alphas indexes an irrep per
// stabilizer factor, x and y count how often the sector appears in the
// side solution fibers.
struct GaugeSector {
  std::vector<int> alphas;
  long long d = 1;  // product of the irrep dimensions
  long long x = 0, y = 0;
};

struct GaugeOrbit {
  std::vector<Elem> rep;     // canonical boundary holonomy
  long long orbit_size = 1;  // under the gauge action at the base points
  long long stab_order = 1;  // |G_phi|
  std::vector<GaugeSector> sectors;  // x > 0 or y > 0 only
};

struct GaugeBlockStructure {
  std::vector<GaugeOrbit> orbits;
  int base_points = 1;
};

// Orbit size and stabilizer of one boundary label under the G^{|A|} action.
// For surface pairs the stabilizer factors are the holonomy centralizers;
// for torus slabs and lens cuts they are joint tuple centralizers.
struct StabOrbit {
  std::vector<std::vector<Elem>> factors;  // one element list per base point
  long long orbit_size = 1;
  long long stab_order = 1;
};
StabOrbit stabilizer_and_orbit(const ValidatedSpec& vs, const FiniteGroup& g,
                               const std::vector<Elem>& phi);

// Fixed points of one stabilizer element acting on a side's solution fiber
// over phi. Runs both an explicit enumeration over the side presentation's
// free generators and the centralizer character closed form; the two must
// agree exactly or consistency_error is thrown. Surface pairs only.
long long perm_trace(const ValidatedSpec& vs, const DoubleData& dd, Side side,
                     const std::vector<Elem>& phi,
                     const std::vector<Elem>& gphi,
                     long long cap = 100000000);

// All sectors over one boundary label (surface pairs, torus slabs, lens).
std::vector<GaugeSector> multiplicities(const ValidatedSpec& vs,
                                        const DoubleData& dd,
                                        const std::vector<Elem>& phi,
                                        long long cap = 10000000);

// Sector decomposition of every orbit in the image.
GaugeBlockStructure gauge_blocks(const ValidatedSpec& vs, const DoubleData& dd,
                                 long long cap = 1000000);

// sum over sectors of x*y for one orbit, evaluated directly as the Burnside
// inner product of the two side traces (no sector expansion).
long long fiber_orbit_count(const ValidatedSpec& vs, const DoubleData& dd,
                            const std::vector<Elem>& phi);

// S-matrix path: multiplicity of the anyon tuple on a side of genus g (or k
// crosscaps) with n = anyons.size() boundary circles.
long long multiplicity_smatrix(const DoubleData& dd, const SMatrix& sm,
                               bool orientable, int genus_or_k,
                               const std::vector<int>& anyons);

// The anyon tuple a side sees for one sector: label classes paired with the
// sector irreps. A circle glued with a flip transports the Y anyon to the
// dual of the conjugate-irrep partner.
std::vector<int> sector_anyons(const ValidatedSpec& vs, const DoubleData& dd,
                               Side side, const std::vector<Elem>& phi,
                               const std::vector<int>& alphas);

// Topological entanglement entropy of the minimal state carrying one sector:
// |A| ln|G| - ln(orbit size * sector dimension). The sector must be present
// (x > 0 and y > 0).
double tee_minimal(const ValidatedSpec& vs, const DoubleData& dd,
                   const std::vector<Elem>& phi,
                   const std::vector<int>& alphas);

struct SectorAmplitudes {
  std::vector<Elem> orbit;
  std::vector<int> sector;
  std::vector<double> values;  // singular values of the sector matrix
};

// Entanglement entropy of a general gauge-invariant state given per-sector
// singular values; reduces to area term + tee correction for one amplitude.
double entropy_general(const ValidatedSpec& vs, const DoubleData& dd,
                       const std::vector<SectorAmplitudes>& amps);

// Ground-state count on a closed surface: sum over classes and centralizer
// irreps of (|C_g|/d)^(2g-2), with the FS sign insertion when non-orientable.
long long gsd(const DoubleData& dd, bool orientable, int genus_or_k);

// Orbit count of the gauge action on the glued manifold's solution set,
// via explicit fiber enumeration and Burnside's lemma. Surface pairs only.
long long burnside_orbit_count(const ValidatedSpec& vs, const DoubleData& dd,
                               long long cap = 100000000);

}  // namespace loopblocks
