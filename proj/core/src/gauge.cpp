#include "loopblocks/gauge.hpp"

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "loopblocks/errors.hpp"

namespace loopblocks {

namespace {

struct SideGeom {
  bool orientable = true;
  int genus_or_k = 0;
};

bool is_surface_pair(const BipartitionSpec& s) {
  return s.kind == CutKind::OrientPair || s.kind == CutKind::NonorientPair ||
         s.kind == CutKind::Mixed;
}

SideGeom side_geom(const ValidatedSpec& vs, Side side) {
  const auto& s = vs.spec;
  switch (s.kind) {
    case CutKind::OrientPair:
      return side == Side::X ? SideGeom{true, s.gx} : SideGeom{true, s.gy};
    case CutKind::NonorientPair:
      return side == Side::X ? SideGeom{false, s.kx} : SideGeom{false, s.ky};
    case CutKind::Mixed:
      return side == Side::X ? SideGeom{true, s.gx} : SideGeom{false, s.ky};
    default:
      throw validation_error("side geometry is only defined for surface pairs");
  }
}

// Boundary value a side sees on circle j; Y flips by the gluing sign.
Elem side_value(const ValidatedSpec& vs, const FiniteGroup& g, Side side,
                const std::vector<Elem>& phi, int j) {
  if (side == Side::Y && vs.spec.kind == CutKind::OrientPair)
    return g.pow(phi[j], vs.spec.signs[j]);
  return phi[j];
}

// iota^k: 0 annihilates, the sign survives odd powers only.
double iota_pow(int iota, int k) {
  if (iota == 0) return 0.0;
  return (iota < 0 && k % 2) ? -1.0 : 1.0;
}

long long round_count(cplx z, const char* what) {
  long long r = round_integer(z, what);
  if (r < 0)
    throw consistency_error(std::string(what) + " is negative: " +
                            std::to_string(r));
  return r;
}

void check_range(const FiniteGroup& g, const std::vector<Elem>& phi) {
  for (Elem e : phi)
    if (e < 0 || e >= g.order())
      throw validation_error("label entry out of range");
}

// t[e] conjugates the class representative to e, for every e in class cl.
std::vector<Elem> transporters(const FiniteGroup& g, const ConjugacyData& cd,
                               int cl) {
  std::vector<Elem> t(g.order(), -1);
  Elem rep = cd.class_rep[cl];
  for (Elem h = 0; h < g.order(); ++h) {
    Elem e = g.conj(h, rep);
    if (t[e] < 0) t[e] = h;
  }
  return t;
}

bool next_index_tuple(std::vector<int>& idx, const std::vector<int>& sizes) {
  for (int j = static_cast<int>(idx.size()) - 1; j >= 0; --j) {
    if (++idx[j] < sizes[j]) return true;
    idx[j] = 0;
  }
  return false;
}

// Trace of the stabilizer tuple gphi on the side solution fiber over vals:
// zero unless all entries lie in one class [g]; otherwise, writing
// g_j = h_j g h_j^-1, it is sum over Irr(C_g) of
// eps_beta (|C_g|/d_beta)^e prod_j chi^beta(h_j^-1 vals_j h_j), with
// e = 2 gamma + n - 2 (eps = 1) or e = k + n - 2 (eps = iota^k).
long long trd_closed(const DoubleData& dd, const SideGeom& geo,
                     const std::vector<Elem>& vals,
                     const std::vector<Elem>& gphi) {
  const FiniteGroup& g = dd.group;
  int n = static_cast<int>(vals.size());
  int cl = dd.conj.class_of[gphi[0]];
  for (Elem gj : gphi)
    if (dd.conj.class_of[gj] != cl) return 0;
  const Subgroup& cent = dd.cents[cl];
  const CharacterTable& ct = dd.cent_tables[cl];
  auto tr = transporters(g, dd.conj, cl);
  std::vector<int> ucls(n);
  for (int j = 0; j < n; ++j) {
    Elem h = tr[gphi[j]];
    int idx = cent.index_of[g.conj(g.inv(h), vals[j])];
    if (idx < 0)
      throw consistency_error("conjugated holonomy left the centralizer");
    ucls[j] = ct.conj.class_of[idx];
  }
  int e = geo.orientable ? 2 * geo.genus_or_k + n - 2 : geo.genus_or_k + n - 2;
  FSData fs;
  if (!geo.orientable) fs = fs_indicators(ct);
  cplx total = 0;
  for (int b = 0; b < ct.num_irreps; ++b) {
    double eps = geo.orientable ? 1.0 : iota_pow(fs.iota[b], geo.genus_or_k);
    if (eps == 0.0) continue;
    cplx prod =
        eps * std::pow(double(ct.order()) / ct.dims[b], double(e));
    for (int j = 0; j < n; ++j) prod *= ct.chars[b][ucls[j]];
    total += prod;
  }
  return round_count(total, "side permutation trace");
}

// Gauge action on a side presentation assignment: loop generators conjugate
// by the element at the main base point, the transport to circle j picks up
// gphi[j] on the left and gphi[0]^-1 on the right.
std::vector<Elem> act_assignment(const FiniteGroup& g, int body, int n,
                                 const std::vector<Elem>& gphi,
                                 const std::vector<Elem>& a) {
  std::vector<Elem> out(a.size());
  int loops = body + n - 1;
  for (int i = 0; i < static_cast<int>(a.size()); ++i) {
    if (i < loops)
      out[i] = g.conj(gphi[0], a[i]);
    else
      out[i] = g.mul(g.mul(gphi[i - loops + 1], a[i]), g.inv(gphi[0]));
  }
  return out;
}

// All side assignments bucketed by their boundary holonomy tuple.
struct SideFibers {
  GroupPresentation pres;
  int body = 0, n = 1;
  std::map<std::vector<Elem>, std::vector<std::vector<Elem>>> by_boundary;
};

SideFibers enumerate_side(const FiniteGroup& g, const SideGeom& geo, int n,
                          long long cap) {
  SideFibers sf;
  sf.pres = geo.orientable
                ? orient_side_presentation(geo.genus_or_k, n)
                : nonorient_side_presentation(geo.genus_or_k, n);
  sf.body = geo.orientable ? 2 * geo.genus_or_k : geo.genus_or_k;
  sf.n = n;
  int gens = sf.pres.num_generators;
  if (ipow(g.order(), gens) > cap)
    throw cap_exceeded("side fiber enumeration exceeds the cap");
  std::vector<Elem> a(gens, 0);
  std::vector<Elem> bnd(n);
  while (true) {
    for (int j = 0; j < n; ++j)
      bnd[j] = evaluate_word(g, sf.pres.boundary_words[j], a);
    sf.by_boundary[bnd].push_back(a);
    int j = gens - 1;
    for (; j >= 0; --j) {
      if (++a[j] < g.order()) break;
      a[j] = 0;
    }
    if (j < 0) break;
  }
  return sf;
}

struct TraceAgg {
  long long sx = 0, sy = 0, sxy = 0;
};

// Side traces over one boundary label, summed over stabilizer tuples and
// aggregated by the tuple of factor classes (all a sector's character
// product depends on). Stabilizer tuples split by the common G-class of
// their entries; tuples with mixed classes contribute nothing.
struct LabelTraces {
  std::vector<int> factor_class;  // G-class per circle
  std::vector<const CharacterTable*> factor_tables;
  long long stab_order = 1;
  std::map<std::vector<int>, TraceAgg> agg;
};

LabelTraces surface_label_traces(const ValidatedSpec& vs, const DoubleData& dd,
                                 const std::vector<Elem>& phi, long long cap) {
  const FiniteGroup& g = dd.group;
  int n = vs.spec.n;
  if (static_cast<int>(phi.size()) != n)
    throw validation_error("boundary label must have one entry per circle");
  check_range(g, phi);
  SideGeom geoX = side_geom(vs, Side::X), geoY = side_geom(vs, Side::Y);
  std::vector<Elem> vx(n), vy(n);
  LabelTraces lt;
  for (int j = 0; j < n; ++j) {
    int cl = dd.conj.class_of[phi[j]];
    if (phi[j] != dd.conj.class_rep[cl])
      throw validation_error(
          "sector analysis expects canonical class representatives");
    vx[j] = side_value(vs, g, Side::X, phi, j);
    vy[j] = side_value(vs, g, Side::Y, phi, j);
    lt.factor_class.push_back(cl);
    lt.factor_tables.push_back(&dd.cent_tables[cl]);
    lt.stab_order *= static_cast<long long>(dd.cents[cl].elems.size());
  }
  int eX = geoX.orientable ? 2 * geoX.genus_or_k + n - 2
                           : geoX.genus_or_k + n - 2;
  int eY = geoY.orientable ? 2 * geoY.genus_or_k + n - 2
                           : geoY.genus_or_k + n - 2;
  long long tuples = 0;
  for (int cl2 = 0; cl2 < dd.conj.num_classes(); ++cl2) {
    const Subgroup& cg = dd.cents[cl2];
    const CharacterTable& tg = dd.cent_tables[cl2];
    auto tr = transporters(g, dd.conj, cl2);
    struct Entry {
      int fcls, ux, uy;
    };
    std::vector<std::vector<Entry>> lists(n);
    bool empty = false;
    for (int j = 0; j < n && !empty; ++j) {
      const Subgroup& cj = dd.cents[lt.factor_class[j]];
      const CharacterTable& tj = *lt.factor_tables[j];
      for (size_t m = 0; m < cj.elems.size(); ++m) {
        Elem e = cj.elems[m];
        if (dd.conj.class_of[e] != cl2) continue;
        Elem h = tr[e];
        int ix = cg.index_of[g.conj(g.inv(h), vx[j])];
        int iy = cg.index_of[g.conj(g.inv(h), vy[j])];
        if (ix < 0 || iy < 0)
          throw consistency_error("conjugated holonomy left the centralizer");
        lists[j].push_back({tj.conj.class_of[static_cast<int>(m)],
                            tg.conj.class_of[ix], tg.conj.class_of[iy]});
      }
      if (lists[j].empty()) empty = true;
    }
    if (empty) continue;
    FSData fsg;
    if (!geoX.orientable || !geoY.orientable) fsg = fs_indicators(tg);
    std::vector<double> wx(tg.num_irreps), wy(tg.num_irreps);
    for (int b = 0; b < tg.num_irreps; ++b) {
      double base = double(tg.order()) / tg.dims[b];
      double ex = geoX.orientable ? 1.0
                                  : iota_pow(fsg.iota[b], geoX.genus_or_k);
      double ey = geoY.orientable ? 1.0
                                  : iota_pow(fsg.iota[b], geoY.genus_or_k);
      wx[b] = ex == 0.0 ? 0.0 : ex * std::pow(base, double(eX));
      wy[b] = ey == 0.0 ? 0.0 : ey * std::pow(base, double(eY));
    }
    std::vector<int> idx(n, 0), sizes(n);
    long long block_tuples = 1;
    for (int j = 0; j < n; ++j) {
      sizes[j] = static_cast<int>(lists[j].size());
      block_tuples *= sizes[j];
    }
    tuples += block_tuples;
    if (tuples > cap)
      throw cap_exceeded("stabilizer tuple enumeration exceeds the cap");
    std::vector<int> key(n);
    while (true) {
      cplx tx = 0, ty = 0;
      for (int b = 0; b < tg.num_irreps; ++b) {
        if (wx[b] == 0.0 && wy[b] == 0.0) continue;
        cplx px = 1, py = 1;
        for (int j = 0; j < n; ++j) {
          const Entry& en = lists[j][idx[j]];
          px *= tg.chars[b][en.ux];
          py *= tg.chars[b][en.uy];
        }
        tx += wx[b] * px;
        ty += wy[b] * py;
      }
      long long trx = round_count(tx, "side permutation trace");
      long long trysum = round_count(ty, "side permutation trace");
      for (int j = 0; j < n; ++j) key[j] = lists[j][idx[j]].fcls;
      TraceAgg& ta = lt.agg[key];
      ta.sx += trx;
      ta.sy += trysum;
      ta.sxy += trx * trysum;
      if (!next_index_tuple(idx, sizes)) break;
    }
  }
  return lt;
}

std::vector<GaugeSector> surface_multiplicities(const ValidatedSpec& vs,
                                                const DoubleData& dd,
                                                const std::vector<Elem>& phi,
                                                long long cap) {
  LabelTraces lt = surface_label_traces(vs, dd, phi, cap);
  int n = static_cast<int>(phi.size());
  std::vector<int> nirr(n);
  long long sector_count = 1;
  for (int j = 0; j < n; ++j) {
    nirr[j] = lt.factor_tables[j]->num_irreps;
    sector_count *= nirr[j];
  }
  if (sector_count > cap)
    throw cap_exceeded("sector enumeration exceeds the cap");
  std::vector<GaugeSector> out;
  std::vector<int> al(n, 0);
  long long sum_xd = 0, sum_yd = 0;
  while (true) {
    cplx xa = 0, ya = 0;
    for (const auto& [key, ta] : lt.agg) {
      cplx chi = 1;  // projection pairs the conjugated character with the trace
      for (int j = 0; j < n; ++j)
        chi *= std::conj(lt.factor_tables[j]->chars[al[j]][key[j]]);
      xa += chi * double(ta.sx);
      ya += chi * double(ta.sy);
    }
    long long x =
        round_count(xa / double(lt.stab_order), "sector multiplicity");
    long long y =
        round_count(ya / double(lt.stab_order), "sector multiplicity");
    long long d = 1;
    for (int j = 0; j < n; ++j) d *= lt.factor_tables[j]->dims[al[j]];
    sum_xd += x * d;
    sum_yd += y * d;
    if (x > 0 || y > 0) {
      GaugeSector s;
      s.alphas = al;
      s.d = d;
      s.x = x;
      s.y = y;
      out.push_back(std::move(s));
    }
    if (!next_index_tuple(al, nirr)) break;
  }
  // audit: multiplicities weighted by dimension rebuild the side fibers
  const FiniteGroup& g = dd.group;
  std::vector<Elem> vx(n), vy(n), id(n, 0);
  for (int j = 0; j < n; ++j) {
    vx[j] = side_value(vs, g, Side::X, phi, j);
    vy[j] = side_value(vs, g, Side::Y, phi, j);
  }
  if (sum_xd != trd_closed(dd, side_geom(vs, Side::X), vx, id) ||
      sum_yd != trd_closed(dd, side_geom(vs, Side::Y), vy, id))
    throw consistency_error("sector dimensions do not add up to the fibers");
  return out;
}

struct TupleCent {
  Subgroup sub;
  CharacterTable table;
};

TupleCent tuple_centralizer(const FiniteGroup& g,
                            const std::vector<Elem>& phi) {
  TupleCent tc;
  tc.sub = make_subgroup(g, centralizer_of_tuple(g, phi));
  tc.table = character_table(tc.sub.induced);
  return tc;
}

void check_commuting(const FiniteGroup& g, const std::vector<Elem>& phi) {
  for (size_t i = 0; i < phi.size(); ++i)
    for (size_t j = i + 1; j < phi.size(); ++j)
      if (g.mul(phi[i], phi[j]) != g.mul(phi[j], phi[i]))
        throw validation_error("slab label entries must commute");
}

// Slab cut index 1: both sides retract to the same torus, the fiber is the
// joint centralizer as a bimodule, so exactly the conjugate-paired sectors
// (beta, beta-bar) survive, once each.
std::vector<GaugeSector> slab1_multiplicities(const FiniteGroup& g,
                                              const std::vector<Elem>& phi) {
  TupleCent tc = tuple_centralizer(g, phi);
  std::vector<GaugeSector> out;
  for (int b = 0; b < tc.table.num_irreps; ++b) {
    int bd = conjugate_irrep(tc.table, b);
    GaugeSector s;
    s.alphas = {b, bd};
    s.d = static_cast<long long>(tc.table.dims[b]) * tc.table.dims[bd];
    s.x = s.y = 1;
    out.push_back(std::move(s));
  }
  return out;
}

// Slab cut index >= 2: the thin side is a single point (trivial sector
// only); the thick side carries the permutation action of C_phi on its
// commuting k-tuples, decomposed by character inner products.
std::vector<GaugeSector> slabk_multiplicities(const FiniteGroup& g,
                                              const std::vector<Elem>& phi,
                                              int k) {
  TupleCent tc = tuple_centralizer(g, phi);
  const auto& ce = tc.sub.elems;
  std::vector<long long> fix(ce.size());
  for (size_t m = 0; m < ce.size(); ++m) {
    std::vector<Elem> within;
    for (Elem e : ce)
      if (g.mul(e, ce[m]) == g.mul(ce[m], e)) within.push_back(e);
    fix[m] = commuting_tuples(g, k, &within, 0).count;
  }
  std::vector<GaugeSector> out;
  long long sum_yd = 0;
  for (int b = 0; b < tc.table.num_irreps; ++b) {
    cplx acc = 0;
    for (size_t m = 0; m < ce.size(); ++m)
      acc += std::conj(tc.table.chi(b, static_cast<Elem>(m))) * double(fix[m]);
    long long y =
        round_count(acc / double(ce.size()), "sector multiplicity");
    sum_yd += y * tc.table.dims[b];
    long long x = b == 0 ? 1 : 0;
    if (x > 0 || y > 0) {
      GaugeSector s;
      s.alphas = {b};
      s.d = tc.table.dims[b];
      s.x = x;
      s.y = y;
      out.push_back(std::move(s));
    }
  }
  if (sum_yd != commuting_tuples(g, k, &ce, 0).count)
    throw consistency_error("sector dimensions do not add up to the fiber");
  return out;
}

}  // namespace

StabOrbit stabilizer_and_orbit(const ValidatedSpec& vs, const FiniteGroup& g,
                               const std::vector<Elem>& phi) {
  check_range(g, phi);
  const auto& s = vs.spec;
  StabOrbit so;
  if (is_surface_pair(s)) {
    if (static_cast<int>(phi.size()) != s.n)
      throw validation_error("boundary label must have one entry per circle");
    for (int j = 0; j < s.n; ++j) {
      so.factors.push_back(centralizer_of_tuple(g, {phi[j]}));
      long long c = static_cast<long long>(so.factors.back().size());
      so.orbit_size *= g.order() / c;
      so.stab_order *= c;
    }
    return so;
  }
  if (s.kind == CutKind::TorusSlab) {
    if (static_cast<int>(phi.size()) != s.n - s.slab_k)
      throw validation_error("slab label length must be n - k");
    check_commuting(g, phi);
    auto c = centralizer_of_tuple(g, phi);
    long long csz = static_cast<long long>(c.size());
    int copies = s.slab_k == 1 ? 2 : 1;
    for (int i = 0; i < copies; ++i) {
      so.factors.push_back(c);
      so.orbit_size *= g.order() / csz;
      so.stab_order *= csz;
    }
    return so;
  }
  if (s.kind == CutKind::Lens) {
    if (phi.size() != 1)
      throw validation_error("lens boundary label is a single element");
    if (g.pow(phi[0], s.q) != 0)
      throw validation_error("lens label must satisfy g^q = 1");
    so.factors.push_back(centralizer_of_tuple(g, {phi[0]}));
    long long c = static_cast<long long>(so.factors.back().size());
    so.orbit_size = g.order() / c;
    so.stab_order = c;
    return so;
  }
  throw validation_error(
      "stabilizer analysis is not defined for generic cuts");
}

long long perm_trace(const ValidatedSpec& vs, const DoubleData& dd, Side side,
                     const std::vector<Elem>& phi,
                     const std::vector<Elem>& gphi, long long cap) {
  const FiniteGroup& g = dd.group;
  if (!is_surface_pair(vs.spec))
    throw validation_error("permutation traces need a surface pair cut");
  int n = vs.spec.n;
  if (static_cast<int>(phi.size()) != n ||
      static_cast<int>(gphi.size()) != n)
    throw validation_error(
        "boundary and stabilizer tuples must have one entry per circle");
  check_range(g, phi);
  check_range(g, gphi);
  for (int j = 0; j < n; ++j)
    if (g.mul(gphi[j], phi[j]) != g.mul(phi[j], gphi[j]))
      throw validation_error(
          "stabilizer entry does not centralize the holonomy");
  SideGeom geo = side_geom(vs, side);
  std::vector<Elem> vals(n);
  for (int j = 0; j < n; ++j) vals[j] = side_value(vs, g, side, phi, j);

  SideFibers sf = enumerate_side(g, geo, n, cap);
  long long fixed = 0;
  auto it = sf.by_boundary.find(vals);
  if (it != sf.by_boundary.end())
    for (const auto& a : it->second)
      if (act_assignment(g, sf.body, n, gphi, a) == a) ++fixed;

  long long closed = trd_closed(dd, geo, vals, gphi);
  if (fixed != closed)
    throw consistency_error("permutation trace mismatch: enumeration gives " +
                            std::to_string(fixed) + ", closed form gives " +
                            std::to_string(closed));
  return fixed;
}

std::vector<GaugeSector> multiplicities(const ValidatedSpec& vs,
                                        const DoubleData& dd,
                                        const std::vector<Elem>& phi,
                                        long long cap) {
  const FiniteGroup& g = dd.group;
  const auto& s = vs.spec;
  check_range(g, phi);
  if (is_surface_pair(s)) return surface_multiplicities(vs, dd, phi, cap);
  if (s.kind == CutKind::TorusSlab) {
    if (static_cast<int>(phi.size()) != s.n - s.slab_k)
      throw validation_error("slab label length must be n - k");
    check_commuting(g, phi);
    return s.slab_k == 1 ? slab1_multiplicities(g, phi)
                         : slabk_multiplicities(g, phi, s.slab_k);
  }
  if (s.kind == CutKind::Lens) {
    if (phi.size() != 1)
      throw validation_error("lens boundary label is a single element");
    if (g.pow(phi[0], s.q) != 0)
      throw validation_error("lens label must satisfy g^q = 1");
    GaugeSector sec;
    sec.alphas = {0};
    sec.d = 1;
    sec.x = sec.y = 1;
    return {sec};
  }
  throw validation_error(
      "gauge sector analysis is not defined for generic cuts");
}

GaugeBlockStructure gauge_blocks(const ValidatedSpec& vs, const DoubleData& dd,
                                 long long cap) {
  if (vs.spec.kind == CutKind::Generic)
    throw validation_error(
        "gauge sector analysis is not defined for generic cuts");
  BlockStructure bs = blocks(vs, dd.cent_tables[0], cap);
  GaugeBlockStructure out;
  out.base_points = vs.manifold.base_points;
  for (const Block& b : bs.blocks) {
    StabOrbit so = stabilizer_and_orbit(vs, dd.group, b.label);
    GaugeOrbit orb;
    orb.rep = b.label;
    orb.orbit_size = so.orbit_size;
    orb.stab_order = so.stab_order;
    orb.sectors = multiplicities(vs, dd, b.label, cap);
    out.orbits.push_back(std::move(orb));
  }
  return out;
}

long long fiber_orbit_count(const ValidatedSpec& vs, const DoubleData& dd,
                            const std::vector<Elem>& phi) {
  if (is_surface_pair(vs.spec)) {
    LabelTraces lt = surface_label_traces(vs, dd, phi, 10000000);
    long long acc = 0;
    for (const auto& [key, ta] : lt.agg) acc += ta.sxy;
    if (acc % lt.stab_order != 0)
      throw consistency_error("fiber orbit count is not an integer");
    return acc / lt.stab_order;
  }
  long long t = 0;
  for (const auto& s : multiplicities(vs, dd, phi)) t += s.x * s.y;
  return t;
}

long long multiplicity_smatrix(const DoubleData& dd, const SMatrix& sm,
                               bool orientable, int genus_or_k,
                               const std::vector<int>& anyons) {
  int n = static_cast<int>(anyons.size());
  if (n < 1) throw validation_error("at least one boundary anyon is needed");
  if (orientable && genus_or_k < 0)
    throw validation_error("genus must be nonnegative");
  if (!orientable && genus_or_k < 1)
    throw validation_error("crosscap count must be at least 1");
  for (int a : anyons)
    if (a < 0 || a >= dd.num_anyons())
      throw validation_error("anyon index out of range");
  int e = orientable ? 2 - 2 * genus_or_k - n : 2 - genus_or_k - n;
  cplx total = 0;
  for (int x = 0; x < dd.num_anyons(); ++x) {
    double eps = orientable ? 1.0 : iota_pow(anyon_fs(dd, x), genus_or_k);
    if (eps == 0.0) continue;
    cplx term = eps * std::pow(sm.entries(x, 0).real(), double(e));
    for (int a : anyons) term *= sm.entries(x, a);
    total += term;
  }
  return round_count(total, "anyon multiplicity");
}

std::vector<int> sector_anyons(const ValidatedSpec& vs, const DoubleData& dd,
                               Side side, const std::vector<Elem>& phi,
                               const std::vector<int>& alphas) {
  if (phi.size() != alphas.size())
    throw validation_error("one sector irrep per boundary holonomy is needed");
  std::vector<int> out(phi.size());
  for (size_t j = 0; j < phi.size(); ++j) {
    int cl = dd.conj.class_of[phi[j]];
    if (alphas[j] < 0 || alphas[j] >= dd.cent_tables[cl].num_irreps)
      throw validation_error("sector irrep index out of range");
    int sign = 1;
    if (side == Side::Y && vs.spec.kind == CutKind::OrientPair)
      sign = vs.spec.signs[j];
    if (sign >= 0) {
      out[j] = dd.anyon_index[cl][alphas[j]];
    } else {
      int cbar = conjugate_irrep(dd.cent_tables[cl], alphas[j]);
      out[j] = dual_anyon(dd, dd.anyon_index[cl][cbar]);
    }
  }
  return out;
}

double tee_minimal(const ValidatedSpec& vs, const DoubleData& dd,
                   const std::vector<Elem>& phi,
                   const std::vector<int>& alphas) {
  const FiniteGroup& g = dd.group;
  StabOrbit so = stabilizer_and_orbit(vs, g, phi);
  for (const auto& s : multiplicities(vs, dd, phi)) {
    if (s.alphas != alphas) continue;
    if (s.x <= 0 || s.y <= 0)
      throw validation_error("sector is not reachable from both sides");
    return vs.manifold.base_points * std::log(double(g.order())) -
           std::log(double(so.orbit_size * s.d));
  }
  throw validation_error("sector is not present over this boundary label");
}

double entropy_general(const ValidatedSpec& vs, const DoubleData& dd,
                       const std::vector<SectorAmplitudes>& amps) {
  if (amps.empty()) throw validation_error("state has no amplitudes");
  GaugeBlockStructure gb = gauge_blocks(vs, dd);
  std::map<std::vector<Elem>, size_t> orbit_of;
  for (size_t i = 0; i < gb.orbits.size(); ++i)
    orbit_of[gb.orbits[i].rep] = i;
  std::set<std::pair<std::vector<Elem>, std::vector<int>>> seen;
  struct Term {
    double weight;
    std::vector<double> v2;
  };
  std::vector<Term> terms;
  double norm = 0;
  for (const auto& a : amps) {
    auto it = orbit_of.find(a.orbit);
    if (it == orbit_of.end())
      throw validation_error(
          "unknown orbit label (pass the canonical representative)");
    const GaugeOrbit& orb = gb.orbits[it->second];
    const GaugeSector* sec = nullptr;
    for (const auto& s : orb.sectors)
      if (s.alphas == a.sector) {
        sec = &s;
        break;
      }
    if (!sec || sec->x <= 0 || sec->y <= 0)
      throw validation_error("sector is not reachable from both sides");
    if (!seen.insert({a.orbit, a.sector}).second)
      throw validation_error("duplicate sector amplitude");
    if (a.values.empty())
      throw validation_error("sector amplitude has no values");
    if (static_cast<long long>(a.values.size()) > std::min(sec->x, sec->y))
      throw validation_error(
          "more singular values than the sector multiplicity admits");
    Term t;
    t.weight = double(orb.orbit_size) * double(sec->d);
    for (double v : a.values) {
      if (v < 0)
        throw validation_error("singular values must be nonnegative");
      t.v2.push_back(v * v);
      norm += t.weight * v * v;
    }
    terms.push_back(std::move(t));
  }
  if (!(norm > 0)) throw validation_error("state has zero norm");
  double s = (vs.spec.lattice.vboundary - vs.manifold.base_points) *
             std::log(double(dd.group.order()));
  for (const auto& t : terms)
    for (double v2 : t.v2) {
      double p = v2 / norm;
      if (p > 0) s -= t.weight * p * std::log(p);
    }
  return s;
}

long long gsd(const DoubleData& dd, bool orientable, int genus_or_k) {
  if (orientable && genus_or_k < 0)
    throw validation_error("genus must be nonnegative");
  if (!orientable && genus_or_k < 1)
    throw validation_error("crosscap count must be at least 1");
  int e = orientable ? 2 * genus_or_k - 2 : genus_or_k - 2;
  cplx total = 0;
  for (int cl = 0; cl < dd.conj.num_classes(); ++cl) {
    const CharacterTable& ct = dd.cent_tables[cl];
    FSData fs;
    if (!orientable) fs = fs_indicators(ct);
    for (int b = 0; b < ct.num_irreps; ++b) {
      double eps = orientable ? 1.0 : iota_pow(fs.iota[b], genus_or_k);
      if (eps == 0.0) continue;
      total += eps * std::pow(double(ct.order()) / ct.dims[b], double(e));
    }
  }
  return round_count(total, "ground state count");
}

long long burnside_orbit_count(const ValidatedSpec& vs, const DoubleData& dd,
                               long long cap) {
  const FiniteGroup& g = dd.group;
  if (!is_surface_pair(vs.spec))
    throw validation_error("orbit counting needs a surface pair cut");
  int n = vs.spec.n;
  SideGeom geoX = side_geom(vs, Side::X), geoY = side_geom(vs, Side::Y);
  SideFibers fx = enumerate_side(g, geoX, n, cap);
  SideFibers fy = enumerate_side(g, geoY, n, cap);
  std::vector<int> idx(n, 0), sizes(n, dd.conj.num_classes());
  long long total = 0;
  while (true) {
    std::vector<Elem> phi(n), vx(n), vy(n);
    for (int j = 0; j < n; ++j) phi[j] = dd.conj.class_rep[idx[j]];
    for (int j = 0; j < n; ++j) {
      vx[j] = side_value(vs, g, Side::X, phi, j);
      vy[j] = side_value(vs, g, Side::Y, phi, j);
    }
    auto bx = fx.by_boundary.find(vx);
    auto by = fy.by_boundary.find(vy);
    if (bx != fx.by_boundary.end() && by != fy.by_boundary.end()) {
      std::vector<std::vector<Elem>> facs(n);
      std::vector<int> gi(n, 0), gs(n);
      long long stab = 1;
      for (int j = 0; j < n; ++j) {
        facs[j] = centralizer_of_tuple(g, {phi[j]});
        gs[j] = static_cast<int>(facs[j].size());
        stab *= gs[j];
      }
      long long acc = 0;
      std::vector<Elem> gphi(n);
      while (true) {
        for (int j = 0; j < n; ++j) gphi[j] = facs[j][gi[j]];
        long long cx = 0, cy = 0;
        for (const auto& a : bx->second)
          if (act_assignment(g, fx.body, n, gphi, a) == a) ++cx;
        for (const auto& a : by->second)
          if (act_assignment(g, fy.body, n, gphi, a) == a) ++cy;
        acc += cx * cy;
        if (!next_index_tuple(gi, gs)) break;
      }
      if (acc % stab != 0)
        throw consistency_error("orbit count is not an integer");
      total += acc / stab;
    }
    if (!next_index_tuple(idx, sizes)) break;
  }
  return total;
}

}  // namespace loopblocks
