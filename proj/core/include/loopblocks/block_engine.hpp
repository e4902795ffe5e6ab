#pragma once

#include <Eigen/Core>
#include <map>
#include <vector>

#include "loopblocks/rep.hpp"
#include "loopblocks/topology.hpp"

namespace loopblocks {

// dimension = coeff * |G|^gPower: topological coefficient times the
// geometric replication carried by lattice vertex counts.
struct SymbolicDim {
  long long coeff = 0;
  long long gpow = 0;
};

struct Block {
  std::vector<Elem> label;     // canonical boundary holonomy representative
  long long label_tuples = 1;  // element tuples grouped under this label
  SymbolicDim mult;            // block replication (includes label grouping)
  SymbolicDim rows, cols;      // per-copy dimensions
};

// Boundary labels whose block would be zero-dimensional: kept out of the
// decomposition but reported (a holonomy reachable from at most one side).
struct DroppedLabel {
  std::vector<Elem> label;
  long long row_coeff = 0, col_coeff = 0;
};

struct BlockStructure {
  std::vector<Block> blocks;  // sorted by (label, rows, cols)
  std::vector<DroppedLabel> dropped;
  long long total_dof = 0;  // sum of mult.coeff * rows.coeff * cols.coeff
  int group_order = 0;
  LatticeCounts lattice;
};

// The loop-symmetry block decomposition of the bipartite amplitude matrix
// for the given cut. `cap` bounds label-space enumerations (class-tuple
// count, commuting-tuple lists, generic Hom searches).
BlockStructure blocks(const ValidatedSpec& vs, const CharacterTable& ct,
                      long long cap = 1000000);

long long total_dof(const BlockStructure& bs);

// |Hom(pi1(M,A),G)| of the glued manifold by independent bookkeeping
// (character sums for closed forms, a glued presentation for generic cuts);
// must equal total_dof.
long long expected_total_dof(const ValidatedSpec& vs, const CharacterTable& ct,
                             long long cap = 100000000);

struct SpectrumLine {
  size_t block_index;
  double sigma;         // singular value of the topological block matrix
  long long deg_coeff;  // degeneracy = deg_coeff * |G|^deg_gpow
  long long deg_gpow;
};

struct SpectrumResult {
  std::vector<SpectrumLine> lines;
  double entropy = 0.0;  // nats, after normalization
};

// Entanglement data of a state supplied as per-block topological matrices
// (indexed into bs.blocks); the geometric factor of each block is the
// all-equal rank-one pattern, so it only rescales and replicates.
SpectrumResult spectrum_from_amplitudes(
    const BlockStructure& bs, const std::map<size_t, Eigen::MatrixXcd>& mats);

}  // namespace loopblocks
