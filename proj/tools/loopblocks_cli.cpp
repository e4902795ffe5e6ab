// Command line front end: block structure, gauge sectors, entanglement data
// and the self-check suites, over any built-in or file-loaded finite group.
//
// Exit codes: 0 success, 1 validation error (bad input, cap hit), 2 internal
// consistency failure (two independent computations disagreed), 64 usage.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "loopblocks/block_engine.hpp"
#include "loopblocks/double_mtc.hpp"
#include "loopblocks/errors.hpp"
#include "loopblocks/gauge.hpp"
#include "loopblocks/group.hpp"
#include "loopblocks/json_io.hpp"
#include "loopblocks/lattice.hpp"
#include "loopblocks/rep.hpp"
#include "loopblocks/topology.hpp"

namespace lb = loopblocks;
using nlohmann::json;

namespace {

struct Options {
  std::string group = "D6";
  std::string cut;
  std::string lattice;
  std::string out;
  bool as_json = false;
  std::uint64_t seed = 2026;
  long long cap = 0;  // 0 = env / built-in default
  int threads = 1;
  double tol = 0.0;  // 0 = per-check defaults
  // subcommand specific
  std::string anyon, orbit, sector, state, surface, convention = "conjugated";
  std::string lattice_name, a, b, c;
  std::vector<std::string> checks;
  int max_surface = 4;
  bool check_flag = false;
};

long long env_cap() {
  const char* s = std::getenv("LOOPBLOCKS_CAP");
  if (!s) return 0;
  char* end = nullptr;
  long long v = std::strtoll(s, &end, 10);
  if (end == s || *end != '\0' || v <= 0)
    throw lb::validation_error("LOOPBLOCKS_CAP must be a positive integer");
  return v;
}

long long resolve_cap(const Options& o, long long fallback) {
  if (o.cap != 0) {
    if (o.cap < 0) throw lb::validation_error("--cap must be positive");
    return o.cap;
  }
  long long e = env_cap();
  return e > 0 ? e : fallback;
}

double resolve_tol(const Options& o, double fallback) {
  if (o.tol == 0.0) return fallback;
  if (!(o.tol > 0.0 && o.tol <= 1e-3))
    throw lb::validation_error("--tolerance must lie in (0, 1e-3]");
  return o.tol;
}

void check_threads(const Options& o) {
  if (o.threads < 1) throw lb::validation_error("--threads must be >= 1");
  if (o.threads > 1)
    std::cerr << "note: computations are deterministic and run on one thread;"
                 " --threads accepted for interface stability\n";
}

void emit(const std::string& text, const Options& o) {
  if (o.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream f(o.out);
    if (!f) throw lb::validation_error("cannot open for writing: " + o.out);
    f << text;
    if (!text.empty() && text.back() != '\n') f << '\n';
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

lb::BipartitionSpec cut_from_text(const std::string& text) {
  if (text.empty()) throw lb::validation_error("--cut is required here");
  if (text.rfind("pres:", 0) == 0) {
    lb::BipartitionSpec spec;
    spec.kind = lb::CutKind::Generic;
    spec.generic = lb::load_generic_cut_json(text.substr(5));
    return spec;
  }
  return lb::parse_cut(text);
}

lb::ValidatedSpec make_spec(const Options& o) {
  lb::BipartitionSpec spec = cut_from_text(o.cut);
  if (!o.lattice.empty()) lb::apply_lattice_flags(spec, o.lattice);
  return lb::validate(spec);
}

lb::Elem parse_elem(const lb::FiniteGroup& g, std::string tok) {
  if (tok.size() >= 2 && tok.front() == '[' && tok.back() == ']')
    tok = tok.substr(1, tok.size() - 2);
  if (tok.empty()) throw lb::validation_error("empty group element token");
  for (lb::Elem e = 0; e < g.order(); ++e)
    if (g.elem_name(e) == tok) return e;
  bool digits = tok.find_first_not_of("0123456789") == std::string::npos;
  if (digits) {
    long v = std::strtol(tok.c_str(), nullptr, 10);
    if (v >= 0 && v < g.order()) return static_cast<lb::Elem>(v);
  }
  throw lb::validation_error("unknown group element: " + tok);
}

std::vector<lb::Elem> parse_elems(const lb::FiniteGroup& g,
                                  const std::string& text) {
  std::vector<lb::Elem> out;
  for (const auto& tok : split(text, ','))
    out.push_back(parse_elem(g, tok));
  return out;
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  for (const auto& tok : split(text, ',')) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw lb::validation_error("expected a comma list of indices, got: " +
                                 text);
    out.push_back(static_cast<int>(std::strtol(tok.c_str(), nullptr, 10)));
  }
  return out;
}

// "x:k" (class of element x, k-th centralizer irrep) or "#i" (anyon index).
int parse_anyon(const lb::DoubleData& dd, const std::string& tok) {
  if (!tok.empty() && tok[0] == '#') {
    int i = static_cast<int>(std::strtol(tok.c_str() + 1, nullptr, 10));
    if (i < 0 || i >= dd.num_anyons())
      throw lb::validation_error("anyon index out of range: " + tok);
    return i;
  }
  auto pos = tok.rfind(':');
  if (pos == std::string::npos)
    throw lb::validation_error("anyon must be <element>:<irrep> or #<index>");
  lb::Elem e = parse_elem(dd.group, tok.substr(0, pos));
  int cl = dd.conj.class_of[e];
  int alpha = static_cast<int>(std::strtol(tok.c_str() + pos + 1, nullptr, 10));
  if (alpha < 0 || alpha >= dd.cent_tables[cl].num_irreps)
    throw lb::validation_error("centralizer irrep index out of range: " + tok);
  return dd.anyon_index[cl][alpha];
}

std::string fmt_cplx(lb::cplx z) {
  auto snap = [](double v) {
    double r = std::round(v);
    return (std::abs(v - r) < 1e-9 ? r : v) + 0.0;
  };
  double re = snap(z.real()), im = snap(z.imag());
  std::ostringstream os;
  os << std::setprecision(6);
  if (im == 0.0) {
    os << re;
  } else if (re == 0.0) {
    os << im << "i";
  } else {
    os << re << (im > 0 ? "+" : "") << im << "i";
  }
  return os.str();
}

std::string fmt_dim(const lb::SymbolicDim& d, int order) {
  std::ostringstream os;
  os << d.coeff;
  if (d.gpow > 0) os << "*" << order << "^" << d.gpow;
  return os.str();
}

long long eval_dim(const lb::SymbolicDim& d, int order) {
  return d.coeff * lb::ipow(order, static_cast<int>(d.gpow));
}

std::string tuple_str(const lb::FiniteGroup& g, const std::vector<lb::Elem>& t) {
  std::string s = "(";
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += g.elem_name(t[i]);
  }
  return s + ")";
}

std::string anyon_str(const lb::DoubleData& dd, int a) {
  const auto& l = dd.anyons[a];
  std::ostringstream os;
  os << "([" << dd.group.elem_name(l.class_rep) << "]," << l.irrep << ")";
  return os.str();
}

struct Geom {
  bool orientable = true;
  int gk = 0;
};

Geom side_geom(const lb::ValidatedSpec& vs, lb::Side s) {
  const auto& sp = vs.spec;
  switch (sp.kind) {
    case lb::CutKind::OrientPair:
      return {true, s == lb::Side::X ? sp.gx : sp.gy};
    case lb::CutKind::NonorientPair:
      return {false, s == lb::Side::X ? sp.kx : sp.ky};
    case lb::CutKind::Mixed:
      return s == lb::Side::X ? Geom{true, sp.gx} : Geom{false, sp.ky};
    default:
      throw lb::validation_error("side geometry needs a surface-pair cut");
  }
}

// Anyon labels a side's fiber carries over boundary label phi with sector
// alphas. An orientation-reversed gluing hands Y the inverse holonomy, which
// relabels the sector by transported conjugation.
std::vector<int> side_anyons(const lb::DoubleData& dd,
                             const lb::ValidatedSpec& vs, lb::Side side,
                             const std::vector<lb::Elem>& phi,
                             const std::vector<int>& alphas) {
  return lb::sector_anyons(vs, dd, side, phi, alphas);
}

std::pair<bool, int> closed_surface(const lb::ManifoldDescriptor& m) {
  if (m.dimension != 2)
    throw lb::validation_error("glued manifold is not a closed surface");
  return {m.orientable, m.orientable ? m.genus : m.crosscaps};
}

// ---------------------------------------------------------------------------
// chartable

void run_chartable(const Options& o) {
  lb::FiniteGroup g = lb::parse_group(o.group);
  lb::CharacterTable ct = lb::character_table(g, o.seed);
  if (o.as_json) {
    emit(lb::character_table_to_json(ct), o);
    return;
  }
  std::ostringstream os;
  os << "group " << g.name() << " order " << g.order() << ", "
     << ct.num_irreps << " irreps / " << ct.conj.num_classes() << " classes\n";
  os << "classes:";
  for (int c = 0; c < ct.conj.num_classes(); ++c)
    os << "  [" << g.elem_name(ct.conj.class_rep[c]) << "]x"
       << ct.class_sizes[c];
  os << "\n";
  for (int a = 0; a < ct.num_irreps; ++a) {
    os << "chi_" << a << " (dim " << ct.dims[a] << "):";
    for (int c = 0; c < ct.conj.num_classes(); ++c)
      os << "  " << fmt_cplx(ct.chars[a][c]);
    os << "\n";
  }
  emit(os.str(), o);
}

// ---------------------------------------------------------------------------
// blocks

void run_blocks(const Options& o) {
  lb::FiniteGroup g = lb::parse_group(o.group);
  lb::CharacterTable ct = lb::character_table(g, o.seed);
  lb::ValidatedSpec vs = make_spec(o);
  long long cap = resolve_cap(o, 1000000);
  lb::BlockStructure bs = lb::blocks(vs, ct, cap);

  long long expected = -1;
  try {
    expected = lb::expected_total_dof(vs, ct, std::max(cap, 100000000LL));
  } catch (const lb::cap_exceeded&) {
    // keep the table; the cross-check is skipped below
  }
  if (expected >= 0 && expected != bs.total_dof)
    throw lb::consistency_error(
        "block dimension bookkeeping disagrees with the glued solution count");

  if (o.as_json) {
    emit(lb::block_structure_to_json(bs), o);
    return;
  }
  std::ostringstream os;
  os << "group " << g.name() << " order " << g.order() << ", manifold "
     << vs.manifold.name << "\n";
  for (const auto& w : vs.warnings) os << "warning: " << w << "\n";
  os << "blocks (label, copies, rows x cols):\n";
  for (const auto& b : bs.blocks) {
    os << "  " << tuple_str(g, b.label) << "  " << fmt_dim(b.mult, g.order())
       << "  " << fmt_dim(b.rows, g.order()) << " x "
       << fmt_dim(b.cols, g.order());
    if (b.label_tuples > 1) os << "  (" << b.label_tuples << " tuples)";
    os << "\n";
  }
  for (const auto& d : bs.dropped)
    os << "  dropped " << tuple_str(g, d.label) << " rows=" << d.row_coeff
       << " cols=" << d.col_coeff << "\n";
  os << "total dof " << bs.total_dof;
  if (expected >= 0)
    os << " (matches the glued manifold solution count)";
  else
    os << " (independent count skipped: cap)";
  os << "\n";
  emit(os.str(), o);
}

// ---------------------------------------------------------------------------
// gauge-blocks

void run_gauge_blocks(const Options& o) {
  lb::FiniteGroup g = lb::parse_group(o.group);
  lb::DoubleData dd = lb::double_data(g, o.seed);
  lb::ValidatedSpec vs = make_spec(o);
  long long cap = resolve_cap(o, 1000000);
  lb::GaugeBlockStructure gb = lb::gauge_blocks(vs, dd, cap);
  if (o.as_json) {
    emit(lb::gauge_blocks_to_json(gb), o);
    return;
  }
  std::ostringstream os;
  os << "group " << g.name() << " order " << g.order() << ", manifold "
     << vs.manifold.name << ", base points " << gb.base_points << "\n";
  for (const auto& orb : gb.orbits) {
    os << "orbit " << tuple_str(g, orb.rep) << " size " << orb.orbit_size
       << " stabilizer " << orb.stab_order << "\n";
    for (const auto& s : orb.sectors) {
      os << "  sector (";
      for (size_t i = 0; i < s.alphas.size(); ++i)
        os << (i ? "," : "") << s.alphas[i];
      os << ") d=" << s.d << " x=" << s.x << " y=" << s.y << "\n";
    }
  }
  emit(os.str(), o);
}

// ---------------------------------------------------------------------------
// tee

void run_tee(const Options& o) {
  lb::FiniteGroup g = lb::parse_group(o.group);
  lb::DoubleData dd = lb::double_data(g, o.seed);
  Options oo = o;
  if (oo.cut.empty()) oo.cut = "torus-slab:n=2,k=1";
  lb::ValidatedSpec vs = make_spec(oo);

  std::vector<lb::Elem> phi;
  std::vector<int> alphas;
  std::string anyon = o.anyon;
  if (anyon.empty() && o.orbit.empty()) anyon = "[1]:0";  // default: vacuum
  if (!anyon.empty()) {
    auto pos = anyon.rfind(':');
    if (pos == std::string::npos)
      throw lb::validation_error("--anyon must be <element>:<irrep>");
    lb::Elem e = parse_elem(g, anyon.substr(0, pos));
    int cl = dd.conj.class_of[e];
    int alpha =
        static_cast<int>(std::strtol(anyon.c_str() + pos + 1, nullptr, 10));
    const lb::CharacterTable& cent = dd.cent_tables[cl];
    if (alpha < 0 || alpha >= cent.num_irreps)
      throw lb::validation_error("centralizer irrep index out of range");
    if (lb::boundary_label_space(vs).tuple_len != 1)
      throw lb::validation_error(
          "--anyon applies to cuts with a single-holonomy label; "
          "use --orbit/--sector otherwise");
    phi = {dd.conj.class_rep[cl]};
    alphas = {alpha, lb::conjugate_irrep(cent, alpha)};
  } else if (!o.orbit.empty() && !o.sector.empty()) {
    phi = parse_elems(g, o.orbit);
    alphas = parse_ints(o.sector);
  } else {
    throw lb::validation_error("give --anyon c:alpha or --orbit and --sector");
  }

  double gamma = lb::tee_minimal(vs, dd, phi, alphas);
  lb::StabOrbit so = lb::stabilizer_and_orbit(vs, g, phi);
  long long d = -1;
  for (const auto& s : lb::multiplicities(vs, dd, phi))
    if (s.alphas == alphas) d = s.d;

  if (o.as_json) {
    json j;
    j["tee"] = gamma;
    j["orbit"] = phi;
    j["sector"] = alphas;
    j["orbit_size"] = so.orbit_size;
    j["sector_dim"] = d;
    j["base_points"] = vs.manifold.base_points;
    emit(j.dump(2), o);
    return;
  }
  std::ostringstream os;
  os << std::setprecision(15);
  os << "orbit " << tuple_str(g, phi) << " size " << so.orbit_size
     << ", sector dim " << d << "\n";
  os << "tee = " << gamma << "  (= " << vs.manifold.base_points << "*ln"
     << g.order() << " - ln(" << so.orbit_size * d << "))\n";
  emit(os.str(), o);
}

// ---------------------------------------------------------------------------
// entropy

void run_entropy(const Options& o) {
  lb::FiniteGroup g = lb::parse_group(o.group);
  lb::DoubleData dd = lb::double_data(g, o.seed);
  lb::ValidatedSpec vs = make_spec(o);
  if (o.state.empty()) throw lb::validation_error("--state <file> is required");
  std::vector<lb::SectorAmplitudes> amps = lb::load_state_json(o.state);
  double s = lb::entropy_general(vs, dd, amps);
  long long vb = vs.spec.lattice.vboundary;
  double area = vb * std::log(double(g.order()));
  if (o.as_json) {
    json j;
    j["entropy"] = s;
    j["boundary_vertices"] = vb;
    j["area_term"] = area;
    j["correction"] = area - s;
    emit(j.dump(2), o);
    return;
  }
  std::ostringstream os;
  os << std::setprecision(15);
  os << "entropy = " << s << " nats\n";
  os << "area term " << vb << "*ln" << g.order() << " = " << area
     << ", correction (area - S) = " << area - s << "\n";
  emit(os.str(), o);
}

// ---------------------------------------------------------------------------
// gsd

std::pair<bool, int> parse_surface(const std::string& text) {
  auto parts = split(text, ':');
  if (parts.size() == 2 && parts[0] == "genus") {
    int v = static_cast<int>(std::strtol(parts[1].c_str(), nullptr, 10));
    if (v < 0) throw lb::validation_error("genus must be >= 0");
    return {true, v};
  }
  if (parts.size() == 2 && parts[0] == "crosscap") {
    int v = static_cast<int>(std::strtol(parts[1].c_str(), nullptr, 10));
    if (v < 1) throw lb::validation_error("crosscap count must be >= 1");
    return {false, v};
  }
  throw lb::validation_error("--surface must be genus:<g> or crosscap:<k>");
}

void run_gsd(const Options& o) {
  lb::FiniteGroup g = lb::parse_group(o.group);
  lb::DoubleData dd = lb::double_data(g, o.seed);
  auto [orient, gk] = parse_surface(o.surface);
  long long v1 = lb::gsd(dd, orient, gk);
  lb::SMatrix sm = lb::s_matrix(dd);
  long long v2 = lb::gsd_from_smatrix(dd, sm, orient, gk);
  if (v1 != v2)
    throw lb::consistency_error(
        "character and S-matrix ground-state counts disagree");
  if (o.as_json) {
    json j;
    j["gsd"] = v1;
    j["orientable"] = orient;
    j[orient ? "genus" : "crosscaps"] = gk;
    emit(j.dump(2), o);
    return;
  }
  std::ostringstream os;
  os << "gsd = " << v1 << " (" << (orient ? "genus " : "crosscaps ") << gk
     << ", character and S-matrix routes agree)\n";
  emit(os.str(), o);
}

// ---------------------------------------------------------------------------
// smatrix

struct SDeviation {
  double symmetric = 0, unitary = 0, vacuum = 0, square = 0, twisted = 0;
};

SDeviation smatrix_deviations(const lb::DoubleData& dd, const lb::SMatrix& sm) {
  const int n = dd.num_anyons();
  const auto& S = sm.entries;
  SDeviation dev;
  dev.symmetric = (S - S.transpose()).cwiseAbs().maxCoeff();
  Eigen::MatrixXcd u = S * S.adjoint();
  u -= Eigen::MatrixXcd::Identity(n, n);
  dev.unitary = u.cwiseAbs().maxCoeff();
  for (int a = 0; a < n; ++a) {
    double expect = double(lb::quantum_dim(dd, a)) / dd.group.order();
    dev.vacuum = std::max(dev.vacuum, std::abs(S(a, 0) - expect));
  }
  Eigen::MatrixXcd sq = S * S;
  for (int a = 0; a < n; ++a) {
    int ad = lb::dual_anyon(dd, a);
    for (int b = 0; b < n; ++b) {
      double expect = b == ad ? 1.0 : 0.0;
      dev.square = std::max(dev.square, std::abs(sq(a, b) - expect));
    }
  }
  // sum_x S_{a,x} conj(S_{b, x-with-inverted-class}): nonzero exactly when b
  // is a's partner with the same class and conjugated centralizer irrep (for
  // self-conjugate irreps that is a itself, value iota^2 = 1)
  for (int a = 0; a < n; ++a) {
    int acl = dd.class_of_anyon(a);
    int partner = lb::conjugate_irrep(dd.cent_tables[acl], dd.anyons[a].irrep);
    for (int b = 0; b < n; ++b) {
      lb::cplx acc = 0;
      for (int x = 0; x < n; ++x) {
        int cl = dd.class_of_anyon(x);
        lb::Elem cinv = dd.group.inv(dd.conj.class_rep[cl]);
        acc += S(a, x) * std::conj(lb::s_entry(dd, b, cinv, cl,
                                               dd.anyons[x].irrep,
                                               sm.convention));
      }
      double expect =
          dd.class_of_anyon(b) == acl && dd.anyons[b].irrep == partner ? 1.0
                                                                       : 0.0;
      dev.twisted = std::max(dev.twisted, std::abs(acc - expect));
    }
  }
  return dev;
}

void check_smatrix_or_throw(const lb::DoubleData& dd, const lb::SMatrix& sm,
                            double tol9, double tol8) {
  SDeviation dev = smatrix_deviations(dd, sm);
  std::ostringstream os;
  os << std::scientific << std::setprecision(2);
  if (dev.symmetric > tol9) os << " symmetric=" << dev.symmetric;
  if (dev.unitary > tol9) os << " unitary=" << dev.unitary;
  if (dev.vacuum > tol9) os << " vacuum=" << dev.vacuum;
  if (dev.square > tol9) os << " square=" << dev.square;
  if (dev.twisted > tol8) os << " twisted=" << dev.twisted;
  if (!os.str().empty())
    throw lb::consistency_error("S-matrix invariants violated:" + os.str());
}

void run_smatrix(const Options& o) {
  lb::FiniteGroup g = lb::parse_group(o.group);
  lb::DoubleData dd = lb::double_data(g, o.seed);
  lb::SConvention conv;
  if (o.convention == "conjugated")
    conv = lb::SConvention::Conjugated;
  else if (o.convention == "plain")
    conv = lb::SConvention::Plain;
  else
    throw lb::validation_error("--convention must be conjugated or plain");
  lb::SMatrix sm = lb::s_matrix(dd, conv);
  if (o.check_flag)
    check_smatrix_or_throw(dd, sm, resolve_tol(o, 1e-9),
                           resolve_tol(o, 1e-8));
  if (o.as_json) {
    json j;
    j["convention"] = o.convention;
    json names = json::array(), rows = json::array();
    for (int a = 0; a < dd.num_anyons(); ++a) {
      names.push_back(anyon_str(dd, a));
      json row = json::array();
      for (int b = 0; b < dd.num_anyons(); ++b)
        row.push_back({sm.entries(a, b).real(), sm.entries(a, b).imag()});
      rows.push_back(row);
    }
    j["anyons"] = names;
    j["entries"] = rows;
    emit(j.dump(2), o);
    return;
  }
  std::ostringstream os;
  os << "anyons (" << dd.num_anyons() << "):";
  for (int a = 0; a < dd.num_anyons(); ++a) os << " " << anyon_str(dd, a);
  os << "\n";
  for (int a = 0; a < dd.num_anyons(); ++a) {
    for (int b = 0; b < dd.num_anyons(); ++b)
      os << (b ? "  " : "") << fmt_cplx(sm.entries(a, b));
    os << "\n";
  }
  if (o.check_flag) os << "invariants: ok\n";
  emit(os.str(), o);
}

// ---------------------------------------------------------------------------
// fusion

void run_fusion(const Options& o) {
  lb::FiniteGroup g = lb::parse_group(o.group);
  lb::DoubleData dd = lb::double_data(g, o.seed);
  lb::SMatrix sm = lb::s_matrix(dd);
  if (o.a.empty() || o.b.empty())
    throw lb::validation_error("--a and --b anyons are required");
  int a = parse_anyon(dd, o.a), b = parse_anyon(dd, o.b);
  std::vector<std::pair<int, long long>> channels;
  if (!o.c.empty()) {
    int c = parse_anyon(dd, o.c);
    channels.emplace_back(c, lb::fusion(dd, sm, a, b, c));
  } else {
    for (int c = 0; c < dd.num_anyons(); ++c) {
      long long n = lb::fusion(dd, sm, a, b, c);
      if (n > 0) channels.emplace_back(c, n);
    }
  }
  if (o.as_json) {
    json j;
    j["a"] = anyon_str(dd, a);
    j["b"] = anyon_str(dd, b);
    json ch = json::array();
    for (auto& [c, n] : channels)
      ch.push_back({{"c", anyon_str(dd, c)}, {"n", n}});
    j["channels"] = ch;
    emit(j.dump(2), o);
    return;
  }
  std::ostringstream os;
  os << anyon_str(dd, a) << " x " << anyon_str(dd, b) << " =";
  bool first = true;
  for (auto& [c, n] : channels) {
    os << (first ? " " : " + ");
    if (n != 1) os << n << "*";
    os << anyon_str(dd, c);
    first = false;
  }
  if (channels.empty()) os << " (no channels requested)";
  os << "\n";
  emit(os.str(), o);
}

// ---------------------------------------------------------------------------
// oracle (lattice enumeration vs closed forms)

struct Shape {
  long long rows = 0, cols = 0, copies = 0;
};

std::vector<Shape> aggregate_shapes(std::vector<std::pair<long long, long long>> v) {
  std::sort(v.begin(), v.end());
  std::vector<Shape> out;
  for (auto& [r, c] : v) {
    if (!out.empty() && out.back().rows == r && out.back().cols == c)
      ++out.back().copies;
    else
      out.push_back({r, c, 1});
  }
  return out;
}

std::vector<Shape> engine_shapes(const lb::BlockStructure& bs, bool transpose) {
  std::vector<std::pair<long long, long long>> v;
  for (const auto& b : bs.blocks) {
    long long copies = eval_dim(b.mult, bs.group_order);
    long long r = eval_dim(b.rows, bs.group_order);
    long long c = eval_dim(b.cols, bs.group_order);
    if (transpose) std::swap(r, c);
    for (long long i = 0; i < copies; ++i) v.emplace_back(r, c);
  }
  return aggregate_shapes(std::move(v));
}

std::vector<Shape> empirical_shapes(const lb::EmpiricalBlocks& eb) {
  std::vector<std::pair<long long, long long>> v;
  for (const auto& b : eb.blocks) v.emplace_back(b.rows, b.cols);
  return aggregate_shapes(std::move(v));
}

std::string shapes_str(const std::vector<Shape>& s) {
  std::ostringstream os;
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) os << " + ";
    if (s[i].copies != 1) os << s[i].copies << "x";
    os << "(" << s[i].rows << "x" << s[i].cols << ")";
  }
  return os.str();
}

struct LatticeTarget {
  lb::Lattice lat;
  lb::ValidatedSpec vs;
  bool transpose = false;
};

LatticeTarget make_lattice_target(const std::string& name_size) {
  auto parts = split(name_size, ':');
  std::string name = parts[0];
  int size = 0;
  if (parts.size() == 2)
    size = static_cast<int>(std::strtol(parts[1].c_str(), nullptr, 10));
  else if (parts.size() > 2)
    throw lb::validation_error("lattice must be <name> or <name>:<size>");
  LatticeTarget t;
  t.lat = lb::builtin_lattice(name, size);
  lb::ReferenceCut rc = lb::lattice_reference(name);
  t.transpose = rc.transpose;
  lb::LatticeCounts c = lb::derive_counts(t.lat);
  lb::BipartitionSpec spec = rc.spec;
  spec.lattice.vx = t.transpose ? c.vy : c.vx;
  spec.lattice.vy = t.transpose ? c.vx : c.vy;
  spec.lattice.vboundary = c.vboundary;
  t.vs = lb::validate(spec);
  if (t.vs.spec.lattice.base_points != c.base_points)
    throw lb::consistency_error(
        "lattice base point count disagrees with the cut variant");
  return t;
}

void oracle_flatcount(const lb::FiniteGroup& g, const lb::CharacterTable& ct,
                      const LatticeTarget& t, long long cap,
                      std::ostream& os) {
  long long flat = lb::flat_config_count(g, t.lat, cap);
  long long hom = lb::expected_total_dof(t.vs, ct, cap);
  int free_vertices =
      t.lat.num_vertices - static_cast<int>(t.lat.base_points.size());
  long long expect = hom * lb::ipow(g.order(), free_vertices);
  if (flat != expect)
    throw lb::consistency_error("flat configuration count mismatch");
  os << "  flatcount: " << flat << " == " << hom << "*" << g.order() << "^"
     << free_vertices << "\n";
}

void oracle_blocks(const lb::FiniteGroup& g, const lb::CharacterTable& ct,
                   const LatticeTarget& t, long long cap, std::ostream& os) {
  lb::EmpiricalBlocks eb = lb::empirical_blocks(g, t.lat, cap);
  lb::BlockStructure bs = lb::blocks(t.vs, ct, cap);
  auto se = engine_shapes(bs, t.transpose);
  auto sm = empirical_shapes(eb);
  if (se.size() != sm.size() ||
      !std::equal(se.begin(), se.end(), sm.begin(), [](auto& a, auto& b) {
        return a.rows == b.rows && a.cols == b.cols && a.copies == b.copies;
      }))
    throw lb::consistency_error(
        "enumerated block shapes disagree with the closed form: engine " +
        shapes_str(se) + " vs enumerated " + shapes_str(sm));
  os << "  blocks: " << shapes_str(sm) << " (total " << eb.total << ")\n";
}

void oracle_gaugedof(const lb::FiniteGroup& g, const lb::DoubleData& dd,
                     const LatticeTarget& t, long long cap, std::ostream& os) {
  long long emp = lb::empirical_gauge_dof(g, t.lat, cap);
  auto [orient, gk] = closed_surface(t.vs.manifold);
  long long expect = lb::gsd(dd, orient, gk);
  if (emp != expect)
    throw lb::consistency_error("gauge orbit count mismatch: enumerated " +
                                std::to_string(emp) + ", closed form " +
                                std::to_string(expect));
  os << "  gaugedof: " << emp << " == gsd(" << t.vs.manifold.name << ")\n";
}

void run_oracle(const Options& o) {
  lb::FiniteGroup g = lb::parse_group(o.group);
  lb::CharacterTable ct = lb::character_table(g, o.seed);
  lb::DoubleData dd = lb::double_data(g, o.seed);
  if (o.lattice_name.empty())
    throw lb::validation_error("--lattice <name[:size]> is required");
  LatticeTarget t = make_lattice_target(o.lattice_name);
  long long cap = resolve_cap(o, 20000000);

  std::set<std::string> which(o.checks.begin(), o.checks.end());
  if (which.empty() || which.count("all"))
    which = {"flatcount", "blocks", "gaugedof"};
  for (const auto& w : which)
    if (w != "flatcount" && w != "blocks" && w != "gaugedof" && w != "all")
      throw lb::validation_error("unknown check: " + w);
  if (t.lat.name == "rp2-bigon" && which.count("blocks")) {
    // one side of the bigon carries no edges, so there is no block matrix
    which.erase("blocks");
    which.insert("flatcount");
  }

  std::ostringstream os;
  os << "lattice " << t.lat.name << " (" << t.lat.num_vertices << " vertices, "
     << t.lat.edges.size() << " edges), group " << g.name() << "\n";
  if (which.count("flatcount")) oracle_flatcount(g, ct, t, cap, os);
  if (which.count("blocks")) oracle_blocks(g, ct, t, cap, os);
  if (which.count("gaugedof")) oracle_gaugedof(g, dd, t, cap, os);
  os << "oracle: ok\n";
  emit(os.str(), o);
}

// ---------------------------------------------------------------------------
// verify

struct Tally {
  int passed = 0, failed = 0, skipped = 0;
  std::ostringstream log;

  void run(const std::string& name, const std::function<void()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    std::string verdict;
    try {
      fn();
      ++passed;
      verdict = "ok";
    } catch (const lb::cap_exceeded& e) {
      ++skipped;
      verdict = std::string("skipped (") + e.what() + ")";
    } catch (const std::exception& e) {
      ++failed;
      verdict = std::string("FAIL (") + e.what() + ")";
    }
    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    log << "check " << name << ": " << verdict;
    if (sec >= 0.1)
      log << " [" << std::fixed << std::setprecision(1) << sec << "s]";
    log << "\n";
  }
};

void require(bool cond, const std::string& msg) {
  if (!cond) throw lb::consistency_error(msg);
}

// sum over element tuples, factored through classes, of fx(c)*fy(c)
long long class_tuple_sum(
    const lb::CharacterTable& ct, int n,
    const std::function<long long(const std::vector<lb::Elem>&)>& fx,
    const std::function<long long(const std::vector<lb::Elem>&)>& fy) {
  int ncl = ct.conj.num_classes();
  std::vector<int> idx(n, 0);
  long long total = 0;
  while (true) {
    std::vector<lb::Elem> c(n);
    long long w = 1;
    for (int j = 0; j < n; ++j) {
      c[j] = ct.conj.class_rep[idx[j]];
      w *= ct.class_sizes[idx[j]];
    }
    total += w * fx(c) * fy(c);
    int j = 0;
    while (j < n && ++idx[j] == ncl) idx[j++] = 0;
    if (j == n) break;
  }
  return total;
}

lb::GroupPresentation closed_orient_presentation(int gamma) {
  lb::GroupPresentation p;
  p.num_generators = 2 * gamma;
  lb::Word rel;
  for (int m = 0; m < gamma; ++m) {
    int a = 2 * m + 1, b = 2 * m + 2;
    for (int tok : {a, b, -a, -b}) rel.push_back(tok);
  }
  if (!rel.empty()) p.relators.push_back(rel);
  return p;
}

lb::GroupPresentation closed_nonorient_presentation(int k) {
  lb::GroupPresentation p;
  p.num_generators = k;
  lb::Word rel;
  for (int m = 1; m <= k; ++m) {
    rel.push_back(m);
    rel.push_back(m);
  }
  p.relators.push_back(rel);
  return p;
}

// brute-force boundary-pinned solution counts of one free side presentation
std::map<std::vector<lb::Elem>, long long> side_histogram(
    const lb::FiniteGroup& g, const lb::GroupPresentation& pres,
    long long cap) {
  std::map<std::vector<lb::Elem>, long long> hist;
  for (const auto& a : lb::enumerate_homs(g, pres, {}, cap)) {
    std::vector<lb::Elem> c(pres.boundary_words.size());
    for (size_t j = 0; j < c.size(); ++j)
      c[j] = lb::evaluate_word(g, pres.boundary_words[j], a);
    ++hist[c];
  }
  return hist;
}

std::vector<lb::BipartitionSpec> surface_pair_specs(int max_surface) {
  std::vector<lb::BipartitionSpec> out;
  for (int n = 1; n <= 2; ++n) {
    for (int gx = 0; 2 * gx + n <= max_surface; ++gx)
      for (int gy = 0; 2 * gy + n <= max_surface; ++gy) {
        lb::BipartitionSpec s;
        s.kind = lb::CutKind::OrientPair;
        s.gx = gx;
        s.gy = gy;
        s.n = n;
        out.push_back(s);
        if (n == 2) {
          s.signs = {1, -1};
          out.push_back(s);
        }
      }
    for (int kx = 1; kx + n <= max_surface; ++kx)
      for (int ky = 1; ky + n <= max_surface; ++ky) {
        lb::BipartitionSpec s;
        s.kind = lb::CutKind::NonorientPair;
        s.kx = kx;
        s.ky = ky;
        s.n = n;
        out.push_back(s);
      }
    for (int gx = 0; 2 * gx + n <= max_surface; ++gx)
      for (int ky = 1; ky + n <= max_surface; ++ky) {
        lb::BipartitionSpec s;
        s.kind = lb::CutKind::Mixed;
        s.gx = gx;
        s.ky = ky;
        s.n = n;
        out.push_back(s);
      }
  }
  return out;
}

std::string spec_str(const lb::BipartitionSpec& s) {
  std::ostringstream os;
  switch (s.kind) {
    case lb::CutKind::OrientPair:
      os << "orient:gx=" << s.gx << ",gy=" << s.gy << ",n=" << s.n;
      if (!s.signs.empty()) {
        os << ",s=";
        for (int v : s.signs) os << (v > 0 ? '+' : '-');
      }
      break;
    case lb::CutKind::NonorientPair:
      os << "nonorient:kx=" << s.kx << ",ky=" << s.ky << ",n=" << s.n;
      break;
    case lb::CutKind::Mixed:
      os << "mixed:gx=" << s.gx << ",ky=" << s.ky << ",n=" << s.n;
      break;
    case lb::CutKind::TorusSlab:
      os << "torus-slab:n=" << s.n << ",k=" << s.slab_k;
      break;
    case lb::CutKind::Lens:
      os << "lens:q=" << s.q << ",p=" << s.p;
      break;
    default:
      os << "generic";
  }
  return os.str();
}

void verify_group(const Options& o, Tally& t) {
  lb::FiniteGroup g = lb::parse_group(o.group);
  lb::CharacterTable ct = lb::character_table(g, o.seed);
  lb::DoubleData dd = lb::double_data(g, o.seed);
  lb::SMatrix sm = lb::s_matrix(dd);
  const int N = g.order();
  const int M = o.max_surface;
  if (M < 1 || M > 8)
    throw lb::validation_error("--max-surface must lie in 1..8");

  t.run("character-orthogonality", [&] {
    int ncl = ct.conj.num_classes();
    for (int a = 0; a < ct.num_irreps; ++a)
      for (int b = 0; b < ct.num_irreps; ++b) {
        lb::cplx acc = 0;
        for (int c = 0; c < ncl; ++c)
          acc += double(ct.class_sizes[c]) * ct.chars[a][c] *
                 std::conj(ct.chars[b][c]);
        acc /= double(N);
        require(std::abs(acc - (a == b ? 1.0 : 0.0)) < 1e-9,
                "row orthogonality violated");
      }
    long long dimsq = 0;
    for (int a = 0; a < ct.num_irreps; ++a)
      dimsq += 1LL * ct.dims[a] * ct.dims[a];
    require(dimsq == N, "squared dimensions do not add to the order");
    for (lb::Elem x = 0; x < N; ++x)
      require(lb::regular_delta(ct, x) == (x == 0 ? 1 : 0),
              "regular character is not the delta at the identity");
  });

  t.run("power-indicators", [&] {
    lb::FSData fs = lb::fs_indicators(ct);
    require(fs.iota[0] == 1, "trivial irrep must have indicator 1");
    for (long long q = 1; q <= 6; ++q) {
      long long roots = 0;
      for (lb::Elem x = 0; x < N; ++x)
        if (g.pow(x, q) == 0) ++roots;
      double acc = 0;
      for (int a = 0; a < ct.num_irreps; ++a)
        acc += ct.dims[a] * lb::higher_fs(ct, q, a);
      require(std::llround(acc) == roots && std::abs(acc - roots) < 1e-6,
              "power indicator count mismatch at q=" + std::to_string(q));
      if (q == 1)
        for (int a = 0; a < ct.num_irreps; ++a)
          require(std::llround(lb::higher_fs(ct, 1, a)) == (a == 0 ? 1 : 0),
                  "first indicator must select the trivial irrep");
      if (q == 2)
        for (int a = 0; a < ct.num_irreps; ++a)
          require(std::llround(lb::higher_fs(ct, 2, a)) == fs.iota[a],
                  "second indicator must match the FS indicator");
    }
  });

  t.run("gluing-identities", [&] {
    for (int n = 1; n <= 2; ++n) {
      auto rr = [&](int gamma) {
        return std::function<long long(const std::vector<lb::Elem>&)>(
            [&, gamma](const std::vector<lb::Elem>& c) {
              return lb::R_count(ct, gamma, n, c);
            });
      };
      auto kk = [&](int k) {
        return std::function<long long(const std::vector<lb::Elem>&)>(
            [&, k](const std::vector<lb::Elem>& c) {
              return lb::K_count(ct, k, n, c);
            });
      };
      for (int gx = 0; 2 * gx + n <= M; ++gx)
        for (int gy = 0; 2 * gy + n <= M; ++gy)
          require(lb::glued_dof_orient(ct, gx + gy + n - 1, n) ==
                      class_tuple_sum(ct, n, rr(gx), rr(gy)),
                  "orientable-orientable gluing identity failed");
      for (int kx = 1; kx + n <= M; ++kx)
        for (int ky = 1; ky + n <= M; ++ky)
          require(lb::glued_dof_nonorient(ct, kx + ky + 2 * (n - 1), n) ==
                      class_tuple_sum(ct, n, kk(kx), kk(ky)),
                  "nonorientable-nonorientable gluing identity failed");
      for (int gx = 0; 2 * gx + n <= M; ++gx)
        for (int ky = 1; ky + n <= M; ++ky)
          require(lb::glued_dof_nonorient(ct, 2 * gx + ky + 2 * (n - 1), n) ==
                      class_tuple_sum(ct, n, rr(gx), kk(ky)),
                  "mixed gluing identity failed");
    }
  });

  t.run("solution-counts-vs-enumeration", [&] {
    if (N > 12) throw lb::cap_exceeded("group too large for brute force");
    long long cap = resolve_cap(o, 100000000);
    for (int n = 1; n <= 2; ++n) {
      for (int gamma = 0; 2 * gamma + 2 * n - 2 <= 4 && 2 * gamma + n <= M;
           ++gamma) {
        if (2 * gamma + n < 1) continue;
        auto hist = side_histogram(g, lb::orient_side_presentation(gamma, n),
                                   cap);
        std::vector<int> idx(n, 0);
        std::vector<lb::Elem> c(n);
        while (true) {
          for (int j = 0; j < n; ++j) c[j] = idx[j];
          auto it = hist.find(c);
          long long brute = it == hist.end() ? 0 : it->second;
          require(lb::R_count(ct, gamma, n, c) == brute,
                  "orientable pinned count disagrees with enumeration");
          int j = 0;
          while (j < n && ++idx[j] == N) idx[j++] = 0;
          if (j == n) break;
        }
      }
      for (int k = 1; k + 2 * n - 2 <= 4 && k + n <= M; ++k) {
        auto hist = side_histogram(g, lb::nonorient_side_presentation(k, n),
                                   cap);
        std::vector<int> idx(n, 0);
        std::vector<lb::Elem> c(n);
        while (true) {
          for (int j = 0; j < n; ++j) c[j] = idx[j];
          auto it = hist.find(c);
          long long brute = it == hist.end() ? 0 : it->second;
          require(lb::K_count(ct, k, n, c) == brute,
                  "nonorientable pinned count disagrees with enumeration");
          int j = 0;
          while (j < n && ++idx[j] == N) idx[j++] = 0;
          if (j == n) break;
        }
      }
    }
    for (int gamma = 1; 2 * gamma <= 4; ++gamma)
      require(lb::count_homs(g, closed_orient_presentation(gamma), {}, cap) ==
                  lb::glued_dof_orient(ct, gamma, 1),
              "closed orientable solution count mismatch");
    for (int k = 1; k <= 4; ++k)
      require(lb::count_homs(g, closed_nonorient_presentation(k), {}, cap) ==
                  lb::glued_dof_nonorient(ct, k, 1),
              "closed nonorientable solution count mismatch");
  });

  t.run("block-totals", [&] {
    long long cap = resolve_cap(o, 1000000);
    std::vector<lb::BipartitionSpec> specs = surface_pair_specs(M);
    {
      lb::BipartitionSpec s;
      s.kind = lb::CutKind::TorusSlab;
      s.n = 2;
      s.slab_k = 1;
      specs.push_back(s);
      s.n = 3;
      specs.push_back(s);
      s.slab_k = 2;
      specs.push_back(s);
    }
    for (long long q = 0; q <= 6; ++q)
      for (long long p = 1; p <= std::max(1LL, q - 1); ++p) {
        if (q > 1 && std::gcd(p, q) != 1) continue;
        lb::BipartitionSpec s;
        s.kind = lb::CutKind::Lens;
        s.q = q;
        s.p = q == 1 ? 0 : p;
        specs.push_back(s);
        if (q <= 1) break;
      }
    for (const auto& s : specs) {
      lb::ValidatedSpec vs = lb::validate(s);
      lb::BlockStructure bs = lb::blocks(vs, ct, cap);
      require(bs.total_dof == lb::expected_total_dof(vs, ct),
              "block total disagrees with the glued count for " + spec_str(s));
    }
  });

  t.run("generic-presentation-path", [&] {
    if (N > 12) throw lb::cap_exceeded("group too large for generic homs");
    long long cap = resolve_cap(o, 100000000);
    for (const auto& s : surface_pair_specs(std::min(M, 3))) {
      lb::ValidatedSpec vs = lb::validate(s);
      lb::BipartitionSpec gen;
      gen.kind = lb::CutKind::Generic;
      gen.generic = lb::generic_from_surface(vs.spec);
      lb::ValidatedSpec vg = lb::validate(gen);
      lb::BlockStructure a = lb::blocks(vs, ct, cap);
      lb::BlockStructure b = lb::blocks(vg, ct, cap);
      require(a.total_dof == b.total_dof,
              "generic path total mismatch for " + spec_str(s));
      auto key = [](const lb::BlockStructure& bs) {
        std::vector<std::vector<long long>> v;
        for (const auto& blk : bs.blocks)
          v.push_back({blk.mult.coeff, blk.rows.coeff, blk.cols.coeff,
                       blk.label_tuples});
        std::sort(v.begin(), v.end());
        return v;
      };
      require(key(a) == key(b),
              "generic path block shapes mismatch for " + spec_str(s));
    }
  });

  t.run("smatrix-invariants", [&] {
    check_smatrix_or_throw(dd, sm, resolve_tol(o, 1e-9), resolve_tol(o, 1e-8));
    lb::SMatrix plain = lb::s_matrix(dd, lb::SConvention::Plain);
    double dev = (plain.entries - sm.entries.conjugate()).cwiseAbs().maxCoeff();
    require(dev < 1e-12, "conventions are not elementwise conjugate");
  });

  t.run("sector-multiplicities-two-path", [&] {
    long long cap = resolve_cap(o, 10000000);
    for (const auto& s : surface_pair_specs(std::min(M, 4))) {
      lb::ValidatedSpec vs = lb::validate(s);
      lb::GaugeBlockStructure gb = lb::gauge_blocks(vs, dd, cap);
      Geom gx = side_geom(vs, lb::Side::X), gy = side_geom(vs, lb::Side::Y);
      long long orbit_total = 0;
      for (const auto& orb : gb.orbits) {
        for (const auto& sec : orb.sectors) {
          long long x2 = lb::multiplicity_smatrix(
              dd, sm, gx.orientable, gx.gk,
              side_anyons(dd, vs, lb::Side::X, orb.rep, sec.alphas));
          long long y2 = lb::multiplicity_smatrix(
              dd, sm, gy.orientable, gy.gk,
              side_anyons(dd, vs, lb::Side::Y, orb.rep, sec.alphas));
          require(sec.x == x2 && sec.y == y2,
                  "S-matrix multiplicity disagrees for " + spec_str(s));
        }
        orbit_total += lb::fiber_orbit_count(vs, dd, orb.rep);
      }
      auto [orient, gk] = closed_surface(vs.manifold);
      require(orbit_total == lb::gsd(dd, orient, gk),
              "sector sums do not reproduce the glued ground-state count (" +
                  spec_str(s) + ")");
      try {
        require(lb::burnside_orbit_count(vs, dd, 2000000) == orbit_total,
                "direct orbit enumeration disagrees (" + spec_str(s) + ")");
      } catch (const lb::cap_exceeded&) {
        // enumeration too large for this cut; the closed forms were checked
      }
    }
  });

  t.run("slab-and-lens-orbit-counts", [&] {
    long long cap = resolve_cap(o, 10000000);
    for (int n = 2; n <= 3; ++n) {
      for (int k = 1; k < n; ++k) {
        lb::BipartitionSpec s;
        s.kind = lb::CutKind::TorusSlab;
        s.n = n;
        s.slab_k = k;
        lb::ValidatedSpec vs = lb::validate(s);
        lb::GaugeBlockStructure gb = lb::gauge_blocks(vs, dd, cap);
        long long total = 0;
        for (const auto& orb : gb.orbits)
          total += lb::fiber_orbit_count(vs, dd, orb.rep);
        // Burnside count of conjugation orbits on commuting n-tuples
        long long burn = 0;
        for (lb::Elem e = 0; e < N; ++e) {
          std::vector<lb::Elem> cent = lb::centralizer_of_tuple(g, {e});
          burn += lb::commuting_tuples(g, n, &cent, 0).count;
        }
        require(burn % N == 0, "Burnside sum not divisible by the order");
        require(total == burn / N,
                "slab orbit count disagrees with Burnside (" + spec_str(s) +
                    ")");
      }
    }
    for (long long q = 1; q <= 6; ++q) {
      lb::BipartitionSpec s;
      s.kind = lb::CutKind::Lens;
      s.q = q;
      s.p = 1;
      lb::ValidatedSpec vs = lb::validate(s);
      lb::GaugeBlockStructure gb = lb::gauge_blocks(vs, dd, cap);
      long long total = 0;
      for (const auto& orb : gb.orbits)
        total += lb::fiber_orbit_count(vs, dd, orb.rep);
      std::set<int> torsion_classes;
      for (lb::Elem e = 0; e < N; ++e)
        if (g.pow(e, q) == 0) torsion_classes.insert(dd.conj.class_of[e]);
      require(total == static_cast<long long>(torsion_classes.size()),
              "lens orbit count disagrees with the torsion class count");
    }
  });

  t.run("verlinde", [&] {
    int A = dd.num_anyons();
    int lim = std::min(A, 6);
    for (int a = 0; a < A; ++a)
      for (int b = 0; b < A; ++b)
        for (int c = 0; c < A; ++c) {
          if (a >= lim && b >= lim && c >= lim) continue;
          long long n3 = lb::multiplicity_smatrix(dd, sm, true, 0, {a, b, c});
          require(n3 == lb::fusion(dd, sm, a, b, lb::dual_anyon(dd, c)),
                  "three-puncture sphere multiplicity is not the fusion rule");
        }
    for (int a = 0; a < lim; ++a)
      for (int b = 0; b < lim; ++b)
        for (int c = 0; c < lim; ++c)
          for (int e = 0; e < lim; ++e) {
            long long n4 =
                lb::multiplicity_smatrix(dd, sm, true, 0, {a, b, c, e});
            long long channels = 0;
            for (int h = 0; h < A; ++h)
              channels += lb::fusion(dd, sm, a, b, lb::dual_anyon(dd, h)) *
                          lb::fusion(dd, sm, c, e, h);
            require(n4 == channels,
                    "four-puncture multiplicity is not the channel sum");
          }
  });

  t.run("tee-values", [&] {
    lb::BipartitionSpec s;
    s.kind = lb::CutKind::TorusSlab;
    s.n = 2;
    s.slab_k = 1;
    lb::ValidatedSpec vs = lb::validate(s);
    auto sectors = lb::multiplicities(vs, dd, {0});
    require(!sectors.empty(), "vacuum orbit has no sectors");
    double vac = lb::tee_minimal(vs, dd, {0}, sectors[0].alphas);
    require(sectors[0].d == 1 &&
                std::abs(vac - 2.0 * std::log(double(N))) < 1e-12,
            "vacuum tee must be 2 ln|G|");
    // single-amplitude general entropy == area term minus tee
    for (const auto& sec : sectors) {
      lb::SectorAmplitudes amp;
      amp.orbit = {0};
      amp.sector = sec.alphas;
      amp.values = {0.37};
      double se = lb::entropy_general(vs, dd, {amp});
      double gamma = lb::tee_minimal(vs, dd, {0}, sec.alphas);
      require(std::abs(se - (2.0 * std::log(double(N)) - gamma)) < 1e-12,
              "single-sector entropy must be area minus tee");
    }
    // equal weights on m one-dimensional sectors add ln m
    std::vector<lb::SectorAmplitudes> amps;
    for (const auto& sec : sectors)
      if (sec.d == 1) {
        lb::SectorAmplitudes amp;
        amp.orbit = {0};
        amp.sector = sec.alphas;
        amp.values = {1.0};
        amps.push_back(amp);
      }
    if (amps.size() >= 2) {
      double s0 = lb::entropy_general(vs, dd, {amps[0]});
      double sm_all = lb::entropy_general(vs, dd, amps);
      require(std::abs(sm_all - (s0 + std::log(double(amps.size())))) < 1e-12,
              "equal-weight sectors must add ln(count)");
    }
  });

  t.run("lens-torsion-counts", [&] {
    long long cap = resolve_cap(o, 1000000);
    for (long long q = 1; q <= 6; ++q) {
      long long roots = 0;
      for (lb::Elem e = 0; e < N; ++e)
        if (g.pow(e, q) == 0) ++roots;
      double nu_sum = 0;
      for (int a = 0; a < ct.num_irreps; ++a)
        nu_sum += ct.dims[a] * lb::higher_fs(ct, q, a);
      require(std::llround(nu_sum) == roots, "indicator sum mismatch");
      std::vector<std::vector<std::vector<long long>>> per_p;
      for (long long p = 1; p <= std::max(1LL, q - 1); ++p) {
        if (q > 1 && std::gcd(p, q) != 1) continue;
        lb::BipartitionSpec s;
        s.kind = lb::CutKind::Lens;
        s.q = q;
        s.p = q > 1 ? p : 0;
        lb::BlockStructure bs = lb::blocks(lb::validate(s), ct, cap);
        long long labels = 0;
        std::vector<std::vector<long long>> shape;
        for (const auto& b : bs.blocks) {
          labels += b.mult.coeff;
          shape.push_back({b.mult.coeff, b.rows.coeff, b.cols.coeff});
        }
        require(labels == roots,
                "lens image size must count q-torsion elements");
        per_p.push_back(shape);
        if (q <= 1) break;
      }
      for (size_t i = 1; i < per_p.size(); ++i)
        require(per_p[i] == per_p[0],
                "lens blocks must not depend on the twist parameter");
    }
  });

  t.run("gsd-routes", [&] {
    for (int gamma = 0; gamma <= 3; ++gamma)
      require(lb::gsd(dd, true, gamma) ==
                  lb::gsd_from_smatrix(dd, sm, true, gamma),
              "orientable gsd routes disagree");
    for (int k = 1; k <= 4; ++k)
      require(lb::gsd(dd, false, k) == lb::gsd_from_smatrix(dd, sm, false, k),
              "nonorientable gsd routes disagree");
    require(lb::gsd(dd, true, 0) == 1, "sphere must have a unique state");
    require(lb::gsd(dd, true, 1) == dd.num_anyons(),
            "torus count must equal the number of anyons");
  });

  t.run("blocks-json-roundtrip", [&] {
    lb::BipartitionSpec s;
    s.kind = lb::CutKind::OrientPair;
    s.gx = 0;
    s.gy = 0;
    s.n = 2;
    lb::ValidatedSpec vs = lb::validate(s);
    lb::BlockStructure bs = lb::blocks(vs, ct, resolve_cap(o, 1000000));
    lb::BlocksRoundTrip rt =
        lb::reparse_blocks_json(lb::block_structure_to_json(bs));
    require(rt.consistent && rt.total_dof == bs.total_dof &&
                rt.recomputed == bs.total_dof,
            "serialized blocks do not round-trip");
  });

  t.run("lattice-enumeration", [&] {
    if (N > 6) throw lb::cap_exceeded("group too large for lattice sweeps");
    long long cap = resolve_cap(o, 20000000);
    std::ostringstream sink;
    std::vector<std::string> names = {"torus:2", "klein:2", "sigma2-octagon",
                                      "rp2-fan:2", "klein-mobius:2"};
    // the smallest valid disk mesh has 9 vertices, so only small N fit
    if (N <= 4) names.push_back("torus-disk:3");
    for (const std::string& name : names) {
      LatticeTarget lt = make_lattice_target(name);
      oracle_flatcount(g, ct, lt, cap, sink);
      oracle_blocks(g, ct, lt, cap, sink);
      oracle_gaugedof(g, dd, lt, cap, sink);
    }
  });
}

void run_verify(const Options& o) {
  check_threads(o);
  Tally t;
  verify_group(o, t);
  std::ostringstream os;
  os << t.log.str();
  os << "verify: " << t.passed << " passed, " << t.failed << " failed, "
     << t.skipped << " skipped\n";
  emit(os.str(), o);
  if (t.failed > 0)
    throw lb::consistency_error(std::to_string(t.failed) +
                                " verification checks failed");
}

void add_common(CLI::App* sub, Options& o, bool with_cut) {
  sub->add_option("--group", o.group,
                  "group spec: D6, Z4, S3, Q8, Z2xZ4, file:<cayley.json>")
      ->capture_default_str();
  if (with_cut) {
    sub->add_option(
        "--cut", o.cut,
        "cut spec: orient:gx=..,gy=..,n=..[,s=+-] | nonorient:kx=..,ky=..,n=.. "
        "| mixed:gx=..,ky=..,n=.. | torus-slab:n=..,k=.. | lens:q=..,p=.. | "
        "pres:<file.json>");
    sub->add_option("--lattice", o.lattice,
                    "interior/boundary vertex counts, e.g. vx=0,vy=2,vb=4");
  }
  sub->add_flag("--json", o.as_json, "emit JSON instead of text");
  sub->add_option("--out", o.out, "write output to a file");
  sub->add_option("--seed", o.seed, "seed for the character-table solver")
      ->capture_default_str();
  sub->add_option("--cap", o.cap,
                  "enumeration cap (overrides LOOPBLOCKS_CAP and defaults)");
  sub->add_option("--threads", o.threads, "accepted for compatibility; all "
                                          "computations are single-threaded");
  sub->add_option("--tolerance", o.tol,
                  "numeric tolerance override, in (0, 1e-3]");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "loopblocks: exact entanglement block structure, sector data and "
      "self-checks for finite-group loop models on bipartite manifolds"};
  app.require_subcommand(1);
  Options o;

  auto* c_chartable =
      app.add_subcommand("chartable", "character table of the group");
  add_common(c_chartable, o, false);
  c_chartable->callback([&] { check_threads(o); run_chartable(o); });

  auto* c_blocks =
      app.add_subcommand("blocks", "amplitude block decomposition of a cut");
  add_common(c_blocks, o, true);
  c_blocks->callback([&] { check_threads(o); run_blocks(o); });

  auto* c_gauge = app.add_subcommand(
      "gauge-blocks", "gauge orbits and sector multiplicities of a cut");
  add_common(c_gauge, o, true);
  c_gauge->callback([&] { check_threads(o); run_gauge_blocks(o); });

  auto* c_tee = app.add_subcommand(
      "tee", "topological entanglement entropy of a minimal sector state");
  add_common(c_tee, o, true);
  c_tee->add_option("--anyon", o.anyon,
                    "element:irrep label, e.g. \"[r]:1\" (torus cuts)");
  c_tee->add_option("--orbit", o.orbit, "boundary holonomy, e.g. \"r,r2\"");
  c_tee->add_option("--sector", o.sector, "irrep index per factor, e.g. 1,1");
  c_tee->callback([&] { check_threads(o); run_tee(o); });

  auto* c_entropy = app.add_subcommand(
      "entropy", "entanglement entropy of a state given per-sector values");
  add_common(c_entropy, o, true);
  c_entropy->add_option("--state", o.state,
                        "JSON file with per-sector singular values");
  c_entropy->callback([&] { check_threads(o); run_entropy(o); });

  auto* c_gsd =
      app.add_subcommand("gsd", "ground-state count on a closed surface");
  add_common(c_gsd, o, false);
  c_gsd->add_option("--surface", o.surface, "genus:<g> or crosscap:<k>")
      ->required();
  c_gsd->callback([&] { check_threads(o); run_gsd(o); });

  auto* c_smatrix =
      app.add_subcommand("smatrix", "modular S matrix of the double");
  add_common(c_smatrix, o, false);
  c_smatrix->add_option("--convention", o.convention, "conjugated | plain")
      ->capture_default_str();
  c_smatrix->add_flag("--check", o.check_flag, "verify S-matrix invariants");
  c_smatrix->callback([&] { check_threads(o); run_smatrix(o); });

  auto* c_fusion = app.add_subcommand("fusion", "fusion coefficients");
  add_common(c_fusion, o, false);
  c_fusion->add_option("--a", o.a, "first anyon, <element>:<irrep> or #i");
  c_fusion->add_option("--b", o.b, "second anyon");
  c_fusion->add_option("--c", o.c, "optional channel; all channels otherwise");
  c_fusion->callback([&] { check_threads(o); run_fusion(o); });

  auto* c_oracle = app.add_subcommand(
      "oracle", "compare lattice enumeration against the closed forms");
  add_common(c_oracle, o, false);
  c_oracle->add_option("--lattice", o.lattice_name,
                       "torus:<m> | torus-disk:<m> | klein:<m> | "
                       "sigma2-octagon | rp2-bigon | rp2-fan:<m> | "
                       "klein-mobius:<m>");
  c_oracle->add_option("--check", o.checks,
                       "flatcount | blocks | gaugedof | all");
  c_oracle->callback([&] { check_threads(o); run_oracle(o); });

  auto* c_verify = app.add_subcommand(
      "verify", "run every cross-module consistency suite for a group");
  add_common(c_verify, o, false);
  c_verify->add_option("--max-surface", o.max_surface,
                       "bound on per-side 2*genus+n and crosscaps+n")
      ->capture_default_str();
  c_verify->callback([&] { run_verify(o); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 64;
  } catch (const lb::consistency_error& e) {
    std::cerr << "consistency failure: " << e.what() << "\n";
    return 2;
  } catch (const lb::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
