#pragma once

#include <string>
#include <vector>

#include "loopblocks/group.hpp"
#include "loopblocks/topology.hpp"

namespace loopblocks {

// Directed edge of a plaquette complex, assigned to one side of the cut.
struct LatticeEdge {
  int src = 0, dst = 0;
  char side = 'x';  // 'x' or 'y'
};

// Explicit 2-cell complex carrying group-valued edge configurations. Each
// plaquette is a closed walk given as signed 1-based edge tokens in
// composition order (the product of transports, evaluated left to right,
// is the holonomy based at the walk's start).
struct Lattice {
  std::string name;
  int num_vertices = 0;
  std::vector<LatticeEdge> edges;
  std::vector<Word> plaquettes;
  std::vector<int> base_points;  // one marked cut vertex per cut component
};

// Built-in closed-surface meshes with a marked cut:
//   torus:<m>          m x m square torus, tube cut between vertex columns
//   torus-disk:<m>     same mesh, one plaquette's edges as the X side
//   klein:<m>          square Klein bottle, tube cut between vertex rows
//   sigma2-octagon     one-vertex genus-2 surface, handles split X/Y
//   rp2-bigon          one-vertex projective plane (flat counting only)
//   rp2-fan:<m>        projective plane as Moebius strip (X) plus disk (Y)
//   klein-mobius:<m>   Klein bottle as two Moebius strips glued on a circle
Lattice builtin_lattice(const std::string& name, int size = 0);

// The cut the lattice realizes, for closed-form comparison. `transpose`
// marks lattices whose X side corresponds to the reference spec's Y side
// (row/column counts swap). The spec's lattice counts are left empty; fill
// them from derive_counts.
struct ReferenceCut {
  BipartitionSpec spec;
  bool transpose = false;
};
ReferenceCut lattice_reference(const std::string& name);

// Vertex bookkeeping: a vertex incident to edges of both sides is a cut
// vertex, otherwise it is interior to its side.
LatticeCounts derive_counts(const Lattice& lat);

bool is_flat(const FiniteGroup& g, const Lattice& lat,
             const std::vector<Elem>& cfg);

// cfg'(e) = at[dst] cfg(e) at[src]^-1.
std::vector<Elem> gauge_transform(const FiniteGroup& g, const Lattice& lat,
                                  const std::vector<Elem>& cfg,
                                  const std::vector<Elem>& at);

// Every flat configuration, built as representatives (spanning tree fixed to
// the identity, the rest enumerated against the plaquette relators) swept by
// the free pointed gauge action. cap bounds the total count.
std::vector<std::vector<Elem>> flat_configs(const FiniteGroup& g,
                                            const Lattice& lat,
                                            long long cap = 20000000);

// |flat configurations| without materializing them.
long long flat_config_count(const FiniteGroup& g, const Lattice& lat,
                            long long cap = 100000000);

struct EmpiricalBlock {
  long long rows = 0, cols = 0, count = 0;  // count == rows * cols
};

struct EmpiricalBlocks {
  std::vector<EmpiricalBlock> blocks;  // sorted by (rows, cols)
  LatticeCounts counts;
  long long total = 0;  // number of flat configurations
};

// Block structure read off the flat configurations directly: connected
// components of the bipartite graph between realized X-side and Y-side
// restrictions. Each component must be a full product (checked).
EmpiricalBlocks empirical_blocks(const FiniteGroup& g, const Lattice& lat,
                                 long long cap = 20000000);

// Number of gauge classes of flat configurations (gauge moves at every
// vertex, base points included).
long long empirical_gauge_dof(const FiniteGroup& g, const Lattice& lat,
                              long long cap = 20000000);

}  // namespace loopblocks
