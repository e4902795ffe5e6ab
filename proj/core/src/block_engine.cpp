#include "loopblocks/block_engine.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <map>

#include "loopblocks/errors.hpp"

namespace loopblocks {

namespace {

void sort_blocks(BlockStructure& bs) {
  std::sort(bs.blocks.begin(), bs.blocks.end(),
            [](const Block& a, const Block& b) {
              if (a.label != b.label) return a.label < b.label;
              if (a.rows.coeff != b.rows.coeff)
                return a.rows.coeff < b.rows.coeff;
              return a.cols.coeff < b.cols.coeff;
            });
  for (const Block& blk : bs.blocks)
    bs.total_dof += blk.mult.coeff * blk.rows.coeff * blk.cols.coeff;
}

BlockStructure surface_blocks(const ValidatedSpec& vs,
                              const CharacterTable& ct, long long cap) {
  const BipartitionSpec& s = vs.spec;
  const FiniteGroup& g = ct.group;
  const int k = ct.conj.num_classes();
  const int n = s.n;

  double label_count = std::pow(static_cast<double>(k), n);
  if (label_count > static_cast<double>(cap))
    throw cap_exceeded("blocks: class-tuple space exceeds cap");

  auto row_count = [&](const std::vector<Elem>& z) {
    return s.kind == CutKind::NonorientPair ? K_count(ct, s.kx, n, z)
                                            : R_count(ct, s.gx, n, z);
  };
  auto col_count = [&](const std::vector<Elem>& z) {
    if (s.kind == CutKind::OrientPair) {
      std::vector<Elem> zs(z.size());
      for (int j = 0; j < n; ++j) zs[j] = g.pow(z[j], s.signs[j]);
      return R_count(ct, s.gy, n, zs);
    }
    return K_count(ct, s.ky, n, z);
  };

  BlockStructure bs;
  bs.group_order = g.order();
  bs.lattice = s.lattice;
  long long mult_gpow = s.lattice.vboundary - n;

  std::vector<int> tuple(n, 0);
  while (true) {
    std::vector<Elem> z(n);
    long long tuples = 1;
    for (int j = 0; j < n; ++j) {
      z[j] = ct.conj.class_rep[tuple[j]];
      tuples *= ct.class_sizes[tuple[j]];
    }
    long long r = row_count(z), c = col_count(z);
    if (r > 0 && c > 0) {
      Block blk;
      blk.label = z;
      blk.label_tuples = tuples;
      blk.mult = {tuples, mult_gpow};
      blk.rows = {r, s.lattice.vx};
      blk.cols = {c, s.lattice.vy};
      bs.blocks.push_back(std::move(blk));
    } else {
      bs.dropped.push_back({z, r, c});
    }
    int j = n - 1;
    while (j >= 0 && ++tuple[j] == k) tuple[j--] = 0;
    if (j < 0) break;
  }
  sort_blocks(bs);
  return bs;
}

// Orbits of listed tuples under simultaneous conjugation; tuples are listed
// in lexicographic order, so the first unvisited member is the orbit's
// canonical representative.
struct TupleOrbit {
  std::vector<Elem> rep;
  long long size;
};

std::vector<TupleOrbit> conj_orbits(const FiniteGroup& g,
                                    const std::vector<std::vector<Elem>>& list) {
  std::map<std::vector<Elem>, int> index;
  for (int i = 0; i < static_cast<int>(list.size()); ++i) index[list[i]] = i;
  std::vector<char> seen(list.size(), 0);
  std::vector<TupleOrbit> orbits;
  for (size_t i = 0; i < list.size(); ++i) {
    if (seen[i]) continue;
    long long size = 0;
    for (Elem h = 0; h < g.order(); ++h) {
      std::vector<Elem> img(list[i].size());
      for (size_t j = 0; j < img.size(); ++j) img[j] = g.conj(h, list[i][j]);
      int at = index.at(img);
      if (!seen[at]) {
        seen[at] = 1;
        ++size;
      }
    }
    orbits.push_back({list[i], size});
  }
  return orbits;
}

BlockStructure slab_blocks(const ValidatedSpec& vs, const CharacterTable& ct,
                           long long cap) {
  const BipartitionSpec& s = vs.spec;
  const FiniteGroup& g = ct.group;
  const int m = s.n - s.slab_k;

  CommutingTuples comm = commuting_tuples(g, m, nullptr, cap);
  if (!comm.listed)
    throw cap_exceeded("blocks: commuting-tuple label space exceeds cap");

  BlockStructure bs;
  bs.group_order = g.order();
  bs.lattice = s.lattice;

  for (const TupleOrbit& orb : conj_orbits(g, comm.list)) {
    std::vector<Elem> cent = centralizer_of_tuple(g, orb.rep);
    Block blk;
    blk.label = orb.rep;
    blk.label_tuples = orb.size;
    if (s.slab_k == 1) {
      long long c = static_cast<long long>(cent.size());
      blk.mult = {orb.size * orb.size, s.lattice.vboundary - 2};
      blk.rows = {c, s.lattice.vx};
      blk.cols = {c, s.lattice.vy};
    } else {
      blk.mult = {orb.size, s.lattice.vboundary - 1};
      blk.rows = {1, s.lattice.vx};
      blk.cols = {commuting_tuples(g, s.slab_k, &cent, 0).count,
                  s.lattice.vy};
    }
    bs.blocks.push_back(std::move(blk));
  }
  sort_blocks(bs);
  return bs;
}

BlockStructure lens_blocks(const ValidatedSpec& vs, const CharacterTable& ct) {
  const BipartitionSpec& s = vs.spec;
  const FiniteGroup& g = ct.group;
  BlockStructure bs;
  bs.group_order = g.order();
  bs.lattice = s.lattice;
  for (int cl = 0; cl < ct.conj.num_classes(); ++cl) {
    Elem rep = ct.conj.class_rep[cl];
    if (g.pow(rep, s.q) != 0) continue;
    Block blk;
    blk.label = {rep};
    blk.label_tuples = ct.class_sizes[cl];
    blk.mult = {ct.class_sizes[cl], s.lattice.vboundary - 1};
    blk.rows = {1, s.lattice.vx};
    blk.cols = {1, s.lattice.vy};
    bs.blocks.push_back(std::move(blk));
  }
  sort_blocks(bs);
  return bs;
}

BlockStructure generic_blocks(const ValidatedSpec& vs,
                              const CharacterTable& ct, long long cap) {
  const BipartitionSpec& s = vs.spec;
  const GenericCut& gc = s.generic;
  const FiniteGroup& g = ct.group;
  const size_t nb = gc.pres_x.boundary_words.size();

  auto histogram = [&](const GroupPresentation& pres, bool transform) {
    std::map<std::vector<Elem>, long long> h;
    for (const std::vector<Elem>& hom : enumerate_homs(g, pres, {}, cap)) {
      std::vector<Elem> key(nb);
      for (size_t j = 0; j < nb; ++j) {
        Elem v = evaluate_word(g, pres.boundary_words[j], hom);
        key[j] = v;
      }
      if (transform) {
        // Re-key Y values to the X circle order and gluing orientation.
        std::vector<Elem> xkey(nb);
        for (size_t j = 0; j < nb; ++j)
          xkey[j] = g.pow(key[gc.pairing[j]], gc.signs[j]);
        key = std::move(xkey);
      }
      ++h[key];
    }
    return h;
  };

  auto hx = histogram(gc.pres_x, false);
  auto hy = histogram(gc.pres_y, true);

  // Group boundary values by (class tuple, fiber sizes).
  std::map<std::pair<std::vector<Elem>, std::pair<long long, long long>>,
           long long>
      grouped, grouped_dropped;
  auto class_label = [&](const std::vector<Elem>& key) {
    std::vector<Elem> lab(nb);
    for (size_t j = 0; j < nb; ++j)
      lab[j] = ct.conj.class_rep[ct.conj.class_of[key[j]]];
    return lab;
  };
  for (auto& [key, rx] : hx) {
    auto it = hy.find(key);
    long long ry = it == hy.end() ? 0 : it->second;
    auto& target = ry > 0 ? grouped : grouped_dropped;
    ++target[{class_label(key), {rx, ry}}];
  }
  for (auto& [key, ry] : hy)
    if (!hx.count(key)) ++grouped_dropped[{class_label(key), {0, ry}}];

  BlockStructure bs;
  bs.group_order = g.order();
  bs.lattice = s.lattice;
  for (auto& [lab, count] : grouped) {
    Block blk;
    blk.label = lab.first;
    blk.label_tuples = count;
    blk.mult = {count, s.lattice.vboundary - gc.base_points};
    blk.rows = {lab.second.first, s.lattice.vx};
    blk.cols = {lab.second.second, s.lattice.vy};
    bs.blocks.push_back(std::move(blk));
  }
  for (auto& [lab, count] : grouped_dropped) {
    (void)count;
    bs.dropped.push_back({lab.first, lab.second.first, lab.second.second});
  }
  sort_blocks(bs);
  return bs;
}

}  // namespace

BlockStructure blocks(const ValidatedSpec& vs, const CharacterTable& ct,
                      long long cap) {
  switch (vs.spec.kind) {
    case CutKind::OrientPair:
    case CutKind::NonorientPair:
    case CutKind::Mixed:
      return surface_blocks(vs, ct, cap);
    case CutKind::TorusSlab:
      return slab_blocks(vs, ct, cap);
    case CutKind::Lens:
      return lens_blocks(vs, ct);
    case CutKind::Generic:
      return generic_blocks(vs, ct, cap);
  }
  throw validation_error("blocks: unknown cut kind");
}

long long total_dof(const BlockStructure& bs) { return bs.total_dof; }

namespace {

Word inv_word(const Word& w) {
  Word r(w.rbegin(), w.rend());
  for (int& t : r) t = -t;
  return r;
}

long long generic_expected_dof(const GenericCut& gc, const FiniteGroup& g,
                               long long cap) {
  // Glue the two side presentations along the paired boundary words; the
  // resulting one-object presentation counts Hom(pi1(M,A),G).
  GroupPresentation glued;
  int nx = gc.pres_x.num_generators;
  glued.num_generators = nx + gc.pres_y.num_generators;
  glued.relators = gc.pres_x.relators;
  auto shift = [&](Word w) {
    for (int& t : w) t += t > 0 ? nx : -nx;
    return w;
  };
  for (const Word& r : gc.pres_y.relators) glued.relators.push_back(shift(r));
  for (size_t j = 0; j < gc.pairing.size(); ++j) {
    Word wy = shift(gc.pres_y.boundary_words[gc.pairing[j]]);
    if (gc.signs[j] == -1) wy = inv_word(wy);
    Word rel = gc.pres_x.boundary_words[j];
    Word wyi = inv_word(wy);
    rel.insert(rel.end(), wyi.begin(), wyi.end());
    glued.relators.push_back(std::move(rel));
  }
  return count_homs(g, glued, {}, cap);
}

}  // namespace

long long expected_total_dof(const ValidatedSpec& vs, const CharacterTable& ct,
                             long long cap) {
  const BipartitionSpec& s = vs.spec;
  const ManifoldDescriptor& m = vs.manifold;
  switch (s.kind) {
    case CutKind::OrientPair:
    case CutKind::NonorientPair:
    case CutKind::Mixed:
      return m.orientable ? glued_dof_orient(ct, m.genus, s.n)
                          : glued_dof_nonorient(ct, m.crosscaps, s.n);
    case CutKind::TorusSlab: {
      long long homs = commuting_tuples(ct.group, s.n, nullptr, 0).count;
      return homs * ipow(ct.order(), m.base_points - 1);
    }
    case CutKind::Lens: {
      long long count = 0;
      for (Elem x = 0; x < ct.order(); ++x)
        if (ct.group.pow(x, s.q) == 0) ++count;
      return count;
    }
    case CutKind::Generic:
      return generic_expected_dof(s.generic, ct.group, cap);
  }
  throw validation_error("expected_total_dof: unknown cut kind");
}

SpectrumResult spectrum_from_amplitudes(
    const BlockStructure& bs, const std::map<size_t, Eigen::MatrixXcd>& mats) {
  SpectrumResult res;
  for (auto& [idx, mat] : mats) {
    if (idx >= bs.blocks.size())
      throw validation_error("spectrum: block index out of range");
    const Block& blk = bs.blocks[idx];
    if (mat.rows() != blk.rows.coeff || mat.cols() != blk.cols.coeff)
      throw validation_error("spectrum: matrix shape does not match the "
                             "topological block dimensions");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(mat);
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
      double sv = svd.singularValues()[i];
      if (sv > 1e-14)
        res.lines.push_back({idx, sv, blk.mult.coeff, blk.mult.gpow});
    }
  }
  const double G = bs.group_order;
  double norm = 0.0;
  for (const SpectrumLine& l : res.lines)
    norm += l.deg_coeff * std::pow(G, static_cast<double>(l.deg_gpow)) *
            l.sigma * l.sigma;
  if (norm <= 0.0)
    throw validation_error("spectrum: state has no nonzero amplitude");
  for (const SpectrumLine& l : res.lines) {
    double p = l.sigma * l.sigma / norm;
    res.entropy -= l.deg_coeff * std::pow(G, static_cast<double>(l.deg_gpow)) *
                   p * std::log(p);
  }
  return res;
}

}  // namespace loopblocks
