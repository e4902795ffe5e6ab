#pragma once

#include <string>
#include <utility>
#include <vector>

#include "loopblocks/group.hpp"

namespace loopblocks {

enum class CutKind { OrientPair, NonorientPair, Mixed, TorusSlab, Lens, Generic };

// Vertex bookkeeping of the (optional) ambient lattice. Block dimensions are
// reported as coefficient * |G|^power, so no mesh is ever built here; these
// counts only set the powers.
struct LatticeCounts {
  long long vx = 0;         // interior vertices on the X side
  long long vy = 0;         // interior vertices on the Y side
  long long vboundary = 0;  // vertices on the cut (0 = default to |A|)
  int base_points = 0;      // |A|; derived from the cut variant
};

// User-supplied bipartition of an arbitrary manifold: presentations of both
// sides (with one boundary word per cut circle) plus the circle gluing map.
struct GenericCut {
  GroupPresentation pres_x, pres_y;
  std::vector<int> pairing;  // X circle j glues to Y circle pairing[j]
  std::vector<int> signs;    // +1/-1 gluing orientation per X circle
  int base_points = 0;       // |A|, declared (connectivity is not inferred)
};

struct BipartitionSpec {
  CutKind kind = CutKind::OrientPair;
  int gx = 0, gy = 0;      // orientable genera of the sides
  int kx = 1, ky = 1;      // crosscap counts of the sides
  int n = 1;               // cut circles (surface pairs) / torus dimension
  int slab_k = 1;          // TorusSlab cut index
  std::vector<int> signs;  // per-circle gluing signs (OrientPair only)
  long long q = 1, p = 0;  // Lens
  GenericCut generic;
  LatticeCounts lattice;
};

struct ManifoldDescriptor {
  int dimension = 2;
  bool orientable = true;
  int genus = 0;      // when orientable surface
  int crosscaps = 0;  // when non-orientable surface
  int base_points = 1;
  std::string name;
};

struct ValidatedSpec {
  BipartitionSpec spec;  // normalized (canonical lens label, defaulted signs)
  ManifoldDescriptor manifold;
  std::vector<std::string> warnings;
};

// Checks per-variant arithmetic, fills |A| and default lattice counts, and
// derives the glued manifold. Idempotent on its own output.
ValidatedSpec validate(const BipartitionSpec& spec);

// (q, p mod q); q=1 -> (1,0) = S^3, q=0 -> (0,1) = S^1 x S^2.
std::pair<long long, long long> lens_canonical(long long q, long long p);

struct LabelSpace {
  enum class Kind { ElementTuples, CommutingTuples, TorsionElements } kind;
  int tuple_len = 0;        // components of a boundary holonomy
  long long torsion_q = 0;  // Lens: labels satisfy g^q = 1
  std::vector<int> signs;   // involution data c -> c^s (surface pairs)
};

LabelSpace boundary_label_space(const ValidatedSpec& vs);

// Fundamental-groupoid presentation of one side: a surface of genus gamma
// (or k crosscaps) with n boundary circles and one base point per circle.
// All generators are free (no relators). boundary_words[j] evaluates to the
// holonomy of circle j based at its own point; circles j >= 2 reach the main
// base point through a dedicated transport generator, so the number of
// generators is 2*gamma + 2n - 2 (resp. k + 2n - 2).
GroupPresentation orient_side_presentation(int gamma, int n);
GroupPresentation nonorient_side_presentation(int k, int n);

// Re-expresses a surface-pair spec as a GenericCut (cross-check path).
GenericCut generic_from_surface(const BipartitionSpec& spec);

// CLI grammar: "orient:gx=1,gy=1,n=1,s=+", "nonorient:kx=1,ky=1,n=1",
// "mixed:gx=0,ky=1,n=1", "torus-slab:n=3,k=2", "lens:q=3,p=1".
// ("pres:<file>" is the caller's job: it needs file IO.)
BipartitionSpec parse_cut(const std::string& text);

// "--lattice vx=0,vy=2,vb=4" -> fills the counts on an existing spec.
void apply_lattice_flags(BipartitionSpec& spec, const std::string& text);

}  // namespace loopblocks
