#include "loopblocks/double_mtc.hpp"

#include <cmath>
#include <string>

#include "loopblocks/errors.hpp"

namespace loopblocks {

int DoubleData::find(const AnyonLabel& l) const {
  if (l.class_rep < 0 || l.class_rep >= group.order())
    throw validation_error("anyon: class representative out of range");
  int cl = conj.class_of[l.class_rep];
  if (l.irrep < 0 || l.irrep >= cent_tables[cl].num_irreps)
    throw validation_error("anyon: centralizer irrep index out of range");
  return anyon_index[cl][l.irrep];
}

DoubleData double_data(const FiniteGroup& g, std::uint64_t seed) {
  DoubleData dd;
  dd.group = g;
  dd.conj = conjugacy(g);
  int k = dd.conj.num_classes();
  dd.anyon_index.resize(k);
  for (int cl = 0; cl < k; ++cl) {
    dd.cents.push_back(make_subgroup(g, dd.conj.centralizer_of_rep[cl],
                                     g.name() + "-cent" + std::to_string(cl)));
    dd.cent_tables.push_back(character_table(dd.cents[cl].induced, seed));
    for (int b = 0; b < dd.cent_tables[cl].num_irreps; ++b) {
      dd.anyon_index[cl].push_back(dd.num_anyons());
      dd.anyons.push_back({dd.conj.class_rep[cl], b});
    }
  }
  return dd;
}

namespace {

cplx s_entry_raw(const FiniteGroup& g, Elem a, const Subgroup& ca,
                 const CharacterTable& ta, int beta, Elem c,
                 const Subgroup& cc, const CharacterTable& tc, int alpha,
                 SConvention conv) {
  cplx sum = 0.0;
  for (Elem h = 0; h < g.order(); ++h) {
    Elem u = g.conj(g.inv(h), a);  // h^-1 a h
    if (g.mul(u, c) != g.mul(c, u)) continue;
    Elem w = g.conj(h, c);  // h c h^-1, lands in the centralizer of a
    cplx term = ta.chi(beta, ca.index_of[w]) * tc.chi(alpha, cc.index_of[u]);
    sum += conv == SConvention::Conjugated ? std::conj(term) : term;
  }
  return sum / static_cast<double>(ca.elems.size() * cc.elems.size());
}

}  // namespace

cplx s_entry(const DoubleData& dd, int a, Elem c_elem, int c_table_class,
             int alpha, SConvention conv) {
  const FiniteGroup& g = dd.group;
  const Subgroup& cc = dd.cents[c_table_class];
  long long commuters = 0;
  for (Elem h = 0; h < g.order(); ++h)
    if (g.mul(h, c_elem) == g.mul(c_elem, h)) ++commuters;
  for (Elem x : cc.elems)
    if (g.mul(x, c_elem) != g.mul(c_elem, x))
      throw validation_error("s_entry: centralizer of the column element "
                             "differs from the declared class's");
  if (commuters != static_cast<long long>(cc.elems.size()))
    throw validation_error("s_entry: centralizer of the column element "
                           "differs from the declared class's");
  const AnyonLabel& la = dd.anyons[a];
  int cla = dd.conj.class_of[la.class_rep];
  return s_entry_raw(g, la.class_rep, dd.cents[cla], dd.cent_tables[cla],
                     la.irrep, c_elem, cc, dd.cent_tables[c_table_class],
                     alpha, conv);
}

SMatrix s_matrix(const DoubleData& dd, SConvention conv) {
  int n = dd.num_anyons();
  SMatrix sm;
  sm.convention = conv;
  sm.entries.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const AnyonLabel& x = dd.anyons[i];
      const AnyonLabel& y = dd.anyons[j];
      int cx = dd.conj.class_of[x.class_rep], cy = dd.conj.class_of[y.class_rep];
      sm.entries(i, j) = s_entry_raw(dd.group, x.class_rep, dd.cents[cx],
                                     dd.cent_tables[cx], x.irrep, y.class_rep,
                                     dd.cents[cy], dd.cent_tables[cy], y.irrep,
                                     conv);
    }
  return sm;
}

int dual_anyon(const DoubleData& dd, int a) {
  const FiniteGroup& g = dd.group;
  const AnyonLabel& l = dd.anyons[a];
  Elem cinv = g.inv(l.class_rep);
  int cl2 = dd.conj.class_of[cinv];
  Elem c2 = dd.conj.class_rep[cl2];
  Elem u = -1;
  for (Elem h = 0; h < g.order(); ++h)
    if (g.conj(h, cinv) == c2) {
      u = h;
      break;
    }
  // Character of the transported conjugate irrep on the centralizer of c2.
  int cl1 = dd.conj.class_of[l.class_rep];
  const CharacterTable& t1 = dd.cent_tables[cl1];
  const CharacterTable& t2 = dd.cent_tables[cl2];
  const Subgroup& s1 = dd.cents[cl1];
  const Subgroup& s2 = dd.cents[cl2];
  Elem ui = g.inv(u);
  for (int b = 0; b < t2.num_irreps; ++b) {
    bool match = true;
    for (Elem x : s2.elems) {
      cplx want = std::conj(t1.chi(l.irrep, s1.index_of[g.conj(ui, x)]));
      if (std::abs(t2.chi(b, s2.index_of[x]) - want) > 1e-6) {
        match = false;
        break;
      }
    }
    if (match) return dd.anyon_index[cl2][b];
  }
  throw consistency_error("dual_anyon: conjugate irrep not found");
}

long long fusion(const DoubleData& dd, const SMatrix& sm, int a, int b, int c) {
  int cd = dual_anyon(dd, c);
  cplx sum = 0.0;
  for (int x = 0; x < dd.num_anyons(); ++x)
    sum += sm.entries(x, a) * sm.entries(x, b) * sm.entries(x, cd) /
           sm.entries(x, 0);
  long long v = round_integer(sum, "fusion");
  if (v < 0) throw consistency_error("fusion: negative coefficient");
  return v;
}

long long quantum_dim(const DoubleData& dd, int a) {
  const AnyonLabel& l = dd.anyons[a];
  int cl = dd.conj.class_of[l.class_rep];
  return static_cast<long long>(dd.conj.classes[cl].size()) *
         dd.cent_tables[cl].dims[l.irrep];
}

double total_dim(const DoubleData& dd) {
  double s = 0.0;
  for (int a = 0; a < dd.num_anyons(); ++a) {
    double d = static_cast<double>(quantum_dim(dd, a));
    s += d * d;
  }
  return std::sqrt(s);
}

int anyon_fs(const DoubleData& dd, int a) {
  const AnyonLabel& l = dd.anyons[a];
  int cl = dd.conj.class_of[l.class_rep];
  return fs_indicators(dd.cent_tables[cl]).iota[l.irrep];
}

long long gsd_from_smatrix(const DoubleData& dd, const SMatrix& sm,
                           bool orientable, int genus_or_k) {
  cplx sum = 0.0;
  for (int x = 0; x < dd.num_anyons(); ++x) {
    double sv = sm.entries(x, 0).real();  // vacuum column is real positive
    if (orientable) {
      sum += std::pow(sv, 2 - 2 * genus_or_k);
    } else {
      int io = anyon_fs(dd, x);
      if (io == 0) continue;
      double sign = (io < 0 && (genus_or_k & 1)) ? -1.0 : 1.0;
      sum += sign * std::pow(sv, 2 - genus_or_k);
    }
  }
  return round_integer(sum, "gsd_from_smatrix");
}

}  // namespace loopblocks
