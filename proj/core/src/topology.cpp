#include "loopblocks/topology.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "loopblocks/errors.hpp"

namespace loopblocks {

std::pair<long long, long long> lens_canonical(long long q, long long p) {
  if (q < 0) throw validation_error("lens: q must be >= 0");
  if (q == 0) {
    if (p != 1 && p != -1)
      throw validation_error("lens: q=0 requires p = +-1 (S^1 x S^2)");
    return {0, 1};
  }
  long long pm = ((p % q) + q) % q;
  if (std::gcd(q, pm) != 1)
    throw validation_error("lens: gcd(p, q) must be 1");
  if (q == 1) return {1, 0};
  return {q, pm};
}

namespace {

int surface_base_points(const BipartitionSpec& s) {
  switch (s.kind) {
    case CutKind::OrientPair:
    case CutKind::NonorientPair:
    case CutKind::Mixed:
      return s.n;
    case CutKind::TorusSlab:
      return s.slab_k == 1 ? 2 : 1;
    case CutKind::Lens:
      return 1;
    case CutKind::Generic:
      return s.generic.base_points;
  }
  return 1;
}

}  // namespace

ValidatedSpec validate(const BipartitionSpec& in) {
  ValidatedSpec out;
  out.spec = in;
  BipartitionSpec& s = out.spec;
  ManifoldDescriptor& m = out.manifold;

  auto warn_signs = [&](const char* variant) {
    if (!s.signs.empty()) {
      out.warnings.push_back(std::string(variant) +
                             ": gluing signs make no difference on a "
                             "non-orientable side; ignored");
      s.signs.clear();
    }
  };

  switch (s.kind) {
    case CutKind::OrientPair: {
      if (s.gx < 0 || s.gy < 0 || s.n < 1)
        throw validation_error("orient pair: need gx,gy >= 0 and n >= 1");
      if (s.signs.empty()) s.signs.assign(s.n, +1);
      if (static_cast<int>(s.signs.size()) != s.n)
        throw validation_error("orient pair: sign vector length != n");
      for (int v : s.signs)
        if (v != 1 && v != -1)
          throw validation_error("orient pair: signs must be +-1");
      bool all_equal =
          std::all_of(s.signs.begin(), s.signs.end(),
                      [&](int v) { return v == s.signs[0]; });
      if (all_equal) {
        m.orientable = true;
        m.genus = s.gx + s.gy + s.n - 1;
        m.name = "Sigma_" + std::to_string(m.genus);
      } else {
        m.orientable = false;
        m.crosscaps = 2 * s.gx + 2 * s.gy + 2 * s.n - 2;
        m.name = "N_" + std::to_string(m.crosscaps);
      }
      break;
    }
    case CutKind::NonorientPair: {
      if (s.kx < 1 || s.ky < 1 || s.n < 1)
        throw validation_error("nonorient pair: need kx,ky >= 1 and n >= 1");
      warn_signs("nonorient pair");
      m.orientable = false;
      m.crosscaps = s.kx + s.ky + 2 * s.n - 2;
      m.name = "N_" + std::to_string(m.crosscaps);
      break;
    }
    case CutKind::Mixed: {
      if (s.gx < 0 || s.ky < 1 || s.n < 1)
        throw validation_error("mixed pair: need gx >= 0, ky >= 1, n >= 1");
      warn_signs("mixed pair");
      m.orientable = false;
      m.crosscaps = 2 * s.gx + s.ky + 2 * s.n - 2;
      m.name = "N_" + std::to_string(m.crosscaps);
      break;
    }
    case CutKind::TorusSlab: {
      if (s.n < 2 || s.slab_k < 1 || s.slab_k > s.n)
        throw validation_error("torus-slab: need n >= 2 and 1 <= k <= n");
      m.dimension = s.n;
      m.orientable = true;
      if (s.n == 2) m.genus = 1;
      m.name = "T^" + std::to_string(s.n);
      break;
    }
    case CutKind::Lens: {
      auto [q, p] = lens_canonical(s.q, s.p);
      s.q = q;
      s.p = p;
      m.dimension = 3;
      m.orientable = true;
      m.name = q == 0   ? "S^1 x S^2"
               : q == 1 ? "S^3"
                        : "L(" + std::to_string(q) + ";" + std::to_string(p) + ")";
      break;
    }
    case CutKind::Generic: {
      validate_presentation(s.generic.pres_x);
      validate_presentation(s.generic.pres_y);
      size_t nb = s.generic.pres_x.boundary_words.size();
      if (s.generic.pres_y.boundary_words.size() != nb)
        throw validation_error("generic cut: sides declare different numbers "
                               "of boundary circles");
      if (s.generic.pairing.size() != nb || s.generic.signs.size() != nb)
        throw validation_error("generic cut: pairing/signs length mismatch");
      std::vector<char> seen(nb, 0);
      for (size_t j = 0; j < nb; ++j) {
        int t = s.generic.pairing[j];
        if (t < 0 || t >= static_cast<int>(nb) || seen[t])
          throw validation_error("generic cut: pairing is not a permutation");
        seen[t] = 1;
        if (s.generic.signs[j] != 1 && s.generic.signs[j] != -1)
          throw validation_error("generic cut: signs must be +-1");
      }
      if (s.generic.base_points < 1)
        throw validation_error("generic cut: declare base_points >= 1");
      m.dimension = 0;  // unknown
      m.name = "generic";
      break;
    }
  }

  m.base_points = surface_base_points(s);
  if (s.lattice.base_points != 0 && s.lattice.base_points != m.base_points)
    throw validation_error("lattice: base point count must be " +
                           std::to_string(m.base_points) +
                           " for this cut (one per boundary component)");
  s.lattice.base_points = m.base_points;
  if (s.lattice.vboundary == 0) s.lattice.vboundary = m.base_points;
  if (s.lattice.vx < 0 || s.lattice.vy < 0)
    throw validation_error("lattice: negative vertex counts");
  if (s.lattice.vboundary < m.base_points)
    throw validation_error("lattice: vboundary < number of base points");
  return out;
}

LabelSpace boundary_label_space(const ValidatedSpec& vs) {
  const BipartitionSpec& s = vs.spec;
  LabelSpace ls;
  switch (s.kind) {
    case CutKind::OrientPair:
    case CutKind::NonorientPair:
    case CutKind::Mixed:
      ls.kind = LabelSpace::Kind::ElementTuples;
      ls.tuple_len = s.n;
      ls.signs = s.kind == CutKind::OrientPair ? s.signs
                                               : std::vector<int>(s.n, +1);
      break;
    case CutKind::TorusSlab:
      ls.kind = LabelSpace::Kind::CommutingTuples;
      ls.tuple_len = s.n - s.slab_k;
      break;
    case CutKind::Lens:
      ls.kind = LabelSpace::Kind::TorsionElements;
      ls.tuple_len = 1;
      ls.torsion_q = s.q;
      break;
    case CutKind::Generic:
      ls.kind = LabelSpace::Kind::ElementTuples;
      ls.tuple_len = static_cast<int>(s.generic.pres_x.boundary_words.size());
      ls.signs = s.generic.signs;
      break;
  }
  return ls;
}

namespace {

Word inv_word(const Word& w) {
  Word r(w.rbegin(), w.rend());
  for (int& t : r) t = -t;
  return r;
}

// Shared tail of both side presentations: free x_1..x_{n-1}, transports
// t_2..t_n, boundary words x_1, t_j x_j t_j^-1, t_n Z t_n^-1 where Z closes
// the polygon relation of the base surface.
GroupPresentation side_presentation(int n, int body_gens, Word body_word) {
  GroupPresentation pres;
  pres.num_generators = body_gens + 2 * (n - 1);
  auto xgen = [&](int j) { return body_gens + j; };          // 1-based token
  auto tgen = [&](int j) { return body_gens + n - 1 + j - 1; };  // j in 2..n

  Word z = body_word;
  for (int j = 1; j <= n - 1; ++j) z.push_back(xgen(j));
  z = inv_word(z);

  for (int j = 1; j <= n; ++j) {
    Word w;
    if (j == 1 && n == 1) {
      w = z;
    } else if (j == 1) {
      w = {xgen(1)};
    } else {
      const Word& core = (j == n) ? z : Word{xgen(j)};
      w.push_back(tgen(j));
      w.insert(w.end(), core.begin(), core.end());
      w.push_back(-tgen(j));
    }
    pres.boundary_words.push_back(std::move(w));
  }
  return pres;
}

}  // namespace

GroupPresentation orient_side_presentation(int gamma, int n) {
  if (gamma < 0 || n < 1)
    throw validation_error("surface presentation: need gamma >= 0, n >= 1");
  Word body;
  for (int i = 0; i < gamma; ++i) {
    int a = 2 * i + 1, b = 2 * i + 2;
    body.insert(body.end(), {a, b, -a, -b});
  }
  return side_presentation(n, 2 * gamma, std::move(body));
}

GroupPresentation nonorient_side_presentation(int k, int n) {
  if (k < 1 || n < 1)
    throw validation_error("surface presentation: need k >= 1, n >= 1");
  Word body;
  for (int i = 1; i <= k; ++i) body.insert(body.end(), {i, i});
  return side_presentation(n, k, std::move(body));
}

GenericCut generic_from_surface(const BipartitionSpec& spec) {
  GenericCut gc;
  switch (spec.kind) {
    case CutKind::OrientPair:
      gc.pres_x = orient_side_presentation(spec.gx, spec.n);
      gc.pres_y = orient_side_presentation(spec.gy, spec.n);
      break;
    case CutKind::NonorientPair:
      gc.pres_x = nonorient_side_presentation(spec.kx, spec.n);
      gc.pres_y = nonorient_side_presentation(spec.ky, spec.n);
      break;
    case CutKind::Mixed:
      gc.pres_x = orient_side_presentation(spec.gx, spec.n);
      gc.pres_y = nonorient_side_presentation(spec.ky, spec.n);
      break;
    default:
      throw validation_error("generic_from_surface: surface-pair specs only");
  }
  gc.pairing.resize(spec.n);
  for (int j = 0; j < spec.n; ++j) gc.pairing[j] = j;
  gc.signs = spec.kind == CutKind::OrientPair && !spec.signs.empty()
                 ? spec.signs
                 : std::vector<int>(spec.n, +1);
  gc.base_points = spec.n;
  return gc;
}

namespace {

std::vector<std::pair<std::string, std::string>> split_kv(
    const std::string& text) {
  std::vector<std::pair<std::string, std::string>> kv;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw validation_error("cut/lattice: expected key=value, got '" + item +
                             "'");
    kv.emplace_back(item.substr(0, eq), item.substr(eq + 1));
  }
  return kv;
}

long long parse_ll(const std::string& v, const std::string& key) {
  try {
    size_t pos = 0;
    long long r = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return r;
  } catch (const std::exception&) {
    throw validation_error("cut/lattice: bad integer for " + key + ": '" + v +
                           "'");
  }
}

}  // namespace

BipartitionSpec parse_cut(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw validation_error("cut: expected '<variant>:<params>'");
  std::string head = text.substr(0, colon);
  std::string rest = text.substr(colon + 1);

  BipartitionSpec s;
  if (head == "orient")
    s.kind = CutKind::OrientPair;
  else if (head == "nonorient")
    s.kind = CutKind::NonorientPair;
  else if (head == "mixed")
    s.kind = CutKind::Mixed;
  else if (head == "torus-slab")
    s.kind = CutKind::TorusSlab;
  else if (head == "lens")
    s.kind = CutKind::Lens;
  else
    throw validation_error("cut: unknown variant '" + head + "'");

  for (auto& [key, val] : split_kv(rest)) {
    if (key == "gx")
      s.gx = static_cast<int>(parse_ll(val, key));
    else if (key == "gy")
      s.gy = static_cast<int>(parse_ll(val, key));
    else if (key == "kx")
      s.kx = static_cast<int>(parse_ll(val, key));
    else if (key == "ky")
      s.ky = static_cast<int>(parse_ll(val, key));
    else if (key == "n")
      s.n = static_cast<int>(parse_ll(val, key));
    else if (key == "k")
      s.slab_k = static_cast<int>(parse_ll(val, key));
    else if (key == "q")
      s.q = parse_ll(val, key);
    else if (key == "p")
      s.p = parse_ll(val, key);
    else if (key == "s") {
      s.signs.clear();
      for (char ch : val) {
        if (ch == '+')
          s.signs.push_back(+1);
        else if (ch == '-')
          s.signs.push_back(-1);
        else
          throw validation_error("cut: sign string must use only + and -");
      }
    } else {
      throw validation_error("cut: unknown key '" + key + "' for variant '" +
                             head + "'");
    }
  }
  return s;
}

void apply_lattice_flags(BipartitionSpec& spec, const std::string& text) {
  for (auto& [key, val] : split_kv(text)) {
    if (key == "vx")
      spec.lattice.vx = parse_ll(val, key);
    else if (key == "vy")
      spec.lattice.vy = parse_ll(val, key);
    else if (key == "vb")
      spec.lattice.vboundary = parse_ll(val, key);
    else
      throw validation_error("lattice: unknown key '" + key + "'");
  }
}

}  // namespace loopblocks
