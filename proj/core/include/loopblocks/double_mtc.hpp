#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "loopblocks/rep.hpp"

namespace loopblocks {

// Simple object of the quantum double D(G): a conjugacy class together with
// an irrep of the centralizer of its canonical representative.
struct AnyonLabel {
  Elem class_rep = 0;
  int irrep = 0;
  bool operator==(const AnyonLabel&) const = default;
};

// Two printed forms of the same S matrix exist: one with plain characters,
// one with both characters conjugated (the form whose unitarity argument is
// spelled out). They differ by elementwise complex conjugation.
enum class SConvention { Conjugated, Plain };

struct DoubleData {
  FiniteGroup group;
  ConjugacyData conj;
  std::vector<Subgroup> cents;               // per class
  std::vector<CharacterTable> cent_tables;   // per class
  std::vector<AnyonLabel> anyons;            // vacuum first
  std::vector<std::vector<int>> anyon_index; // class -> irrep -> anyon

  int num_anyons() const { return static_cast<int>(anyons.size()); }
  int class_of_anyon(int a) const {
    return conj.class_of[anyons[a].class_rep];
  }
  int find(const AnyonLabel& l) const;
};

DoubleData double_data(const FiniteGroup& g, std::uint64_t seed = 2026);

struct SMatrix {
  SConvention convention;
  Eigen::MatrixXcd entries;  // anyon x anyon
};

SMatrix s_matrix(const DoubleData& dd,
                 SConvention conv = SConvention::Conjugated);

// One raw matrix element between anyon `a` and a column part given as an
// explicit element (not necessarily a canonical representative, e.g. the
// inverse of one). `c_table_class` names the class whose centralizer table
// interprets `alpha`; the centralizer of `c_elem` must coincide with it
// (always true for c_elem = rep^-1), which is checked.
cplx s_entry(const DoubleData& dd, int a, Elem c_elem, int c_table_class,
             int alpha, SConvention conv);

// The charge-conjugate anyon: class of c^-1 with the transported conjugate
// irrep; S^2 permutes anyons by this map.
int dual_anyon(const DoubleData& dd, int a);

// Verlinde coefficient N_{ab}^c = sum_x S_xa S_xb S_{x,dual(c)} / S_{x,vac}.
long long fusion(const DoubleData& dd, const SMatrix& sm, int a, int b, int c);

long long quantum_dim(const DoubleData& dd, int a);
double total_dim(const DoubleData& dd);  // sqrt(sum of squared dims) = |G|

// Frobenius-Schur indicator of the anyon's centralizer irrep.
int anyon_fs(const DoubleData& dd, int a);

// Closed-surface ground-state count from the S matrix: sum_x S_{x,vac}^(2-2g)
// for genus g, or sum_x iota_x^k S_{x,vac}^(2-k) for k crosscaps.
long long gsd_from_smatrix(const DoubleData& dd, const SMatrix& sm,
                           bool orientable, int genus_or_k);

}  // namespace loopblocks
