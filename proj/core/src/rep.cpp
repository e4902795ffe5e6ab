#include "loopblocks/rep.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <string>

#include "loopblocks/errors.hpp"

namespace loopblocks {

long long round_integer(cplx z, const char* what, double tol) {
  // Tolerance scales with magnitude so the check stays above double noise
  // for large counts without loosening it for O(1) values.
  double eff = std::max(tol, std::abs(z.real()) * 1e-9);
  double r = std::round(z.real());
  if (std::abs(z.imag()) > eff || std::abs(z.real() - r) > eff)
    throw consistency_error(std::string(what) + ": value " +
                            std::to_string(z.real()) + "+" +
                            std::to_string(z.imag()) +
                            "i does not round to an integer");
  if (std::abs(r) > 4.5e15)
    throw consistency_error(std::string(what) +
                            ": value too large for exact integer arithmetic");
  return static_cast<long long>(r);
}

namespace {

struct DixonAttempt {
  std::vector<std::vector<cplx>> chars;
  std::vector<int> dims;
  bool ok = false;
  std::string why;
};

DixonAttempt dixon_once(const FiniteGroup& g, const ConjugacyData& conj,
                        std::uint64_t seed) {
  DixonAttempt out;
  const int n = g.order();
  const int k = conj.num_classes();

  // Structure constants via M_i(l, j) = #{x in K_i : x^-1 z_l in K_j}.
  std::vector<Eigen::MatrixXd> M(k, Eigen::MatrixXd::Zero(k, k));
  for (int i = 0; i < k; ++i) {
    for (Elem x : conj.classes[i]) {
      Elem xi = g.inv(x);
      for (int l = 0; l < k; ++l) {
        int j = conj.class_of[g.mul(xi, conj.class_rep[l])];
        M[i](l, j) += 1.0;
      }
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < k; ++i) A += uni(rng) * M[i];

  Eigen::EigenSolver<Eigen::MatrixXd> es(A);
  if (es.info() != Eigen::Success) {
    out.why = "eigensolver failed";
    return out;
  }
  Eigen::VectorXcd lam = es.eigenvalues();
  double scale = 1.0;
  for (int a = 0; a < k; ++a) scale = std::max(scale, std::abs(lam[a]));
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (std::abs(lam[a] - lam[b]) < 1e-6 * scale) {
        out.why = "degenerate eigenvalues";
        return out;
      }

  Eigen::MatrixXcd V = es.eigenvectors();
  out.chars.assign(k, std::vector<cplx>(k));
  out.dims.assign(k, 0);
  for (int a = 0; a < k; ++a) {
    Eigen::VectorXcd v = V.col(a);
    int p = 0;
    for (int l = 1; l < k; ++l)
      if (std::abs(v[l]) > std::abs(v[p])) p = l;
    // Shared eigenvector of every M_i; eigenvalue omega_i = |K_i| chi_i / d.
    std::vector<cplx> omega(k);
    double s = 0.0;
    for (int i = 0; i < k; ++i) {
      omega[i] = (M[i] * v)[p] / v[p];
      s += std::norm(omega[i]) / conj.classes[i].size();
    }
    double d = std::sqrt(static_cast<double>(n) / s);
    double dr = std::round(d);
    if (std::abs(d - dr) > 1e-6 || dr < 1.0) {
      out.why = "non-integer irrep dimension";
      return out;
    }
    out.dims[a] = static_cast<int>(dr);
    for (int i = 0; i < k; ++i)
      out.chars[a][i] = dr * omega[i] / static_cast<double>(conj.classes[i].size());
  }

  // Row orthonormality gates numeric quality of the recovered table.
  for (int a = 0; a < k; ++a)
    for (int b = a; b < k; ++b) {
      cplx ip = 0.0;
      for (int l = 0; l < k; ++l)
        ip += static_cast<double>(conj.classes[l].size()) * out.chars[a][l] *
              std::conj(out.chars[b][l]);
      ip /= static_cast<double>(n);
      double want = (a == b) ? 1.0 : 0.0;
      if (std::abs(ip - want) > 1e-9) {
        out.why = "orthogonality residual too large";
        return out;
      }
    }
  out.ok = true;
  return out;
}

bool lex_less(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    long long ar = llround(a[i].real() * 1e6), br = llround(b[i].real() * 1e6);
    if (ar != br) return ar < br;
    long long ai = llround(a[i].imag() * 1e6), bi = llround(b[i].imag() * 1e6);
    if (ai != bi) return ai < bi;
  }
  return false;
}

}  // namespace

CharacterTable character_table(const FiniteGroup& g, std::uint64_t seed,
                               int order_cap) {
  if (g.order() > order_cap)
    throw cap_exceeded("character_table: group order " +
                       std::to_string(g.order()) + " exceeds cap " +
                       std::to_string(order_cap));
  CharacterTable ct;
  ct.group = g;
  ct.conj = conjugacy(g);
  const int k = ct.conj.num_classes();

  DixonAttempt att;
  for (int t = 0; t < 16; ++t) {
    att = dixon_once(g, ct.conj, seed + 0x9e3779b97f4a7c15ULL * t);
    if (att.ok) break;
  }
  if (!att.ok)
    throw consistency_error("character_table: " + att.why +
                            " after 16 seeded attempts");

  // Trivial irrep first, the rest by (dimension, lexicographic characters).
  std::vector<int> idx(k);
  for (int a = 0; a < k; ++a) idx[a] = a;
  auto is_trivial = [&](int a) {
    for (int l = 0; l < k; ++l)
      if (std::abs(att.chars[a][l] - 1.0) > 1e-6) return false;
    return true;
  };
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    bool ta = is_trivial(a), tb = is_trivial(b);
    if (ta != tb) return ta;
    if (att.dims[a] != att.dims[b]) return att.dims[a] < att.dims[b];
    return lex_less(att.chars[a], att.chars[b]);
  });

  ct.num_irreps = k;
  ct.chars.resize(k);
  ct.dims.resize(k);
  ct.class_sizes.resize(k);
  long long dimsq = 0;
  for (int a = 0; a < k; ++a) {
    ct.chars[a] = att.chars[idx[a]];
    ct.dims[a] = att.dims[idx[a]];
    dimsq += static_cast<long long>(ct.dims[a]) * ct.dims[a];
  }
  for (int l = 0; l < k; ++l)
    ct.class_sizes[l] = static_cast<int>(ct.conj.classes[l].size());
  if (dimsq != g.order())
    throw consistency_error("character_table: sum of squared dims " +
                            std::to_string(dimsq) + " != group order");
  return ct;
}

FSData fs_indicators(const CharacterTable& ct) {
  const int n = ct.order();
  FSData fs;
  fs.iota.resize(ct.num_irreps);
  for (int a = 0; a < ct.num_irreps; ++a) {
    cplx s = 0.0;
    for (Elem x = 0; x < n; ++x) s += ct.chi(a, ct.group.mul(x, x));
    long long v = round_integer(s / static_cast<double>(n), "fs_indicator");
    if (v < -1 || v > 1)
      throw consistency_error("fs_indicator outside {-1,0,1}");
    fs.iota[a] = static_cast<int>(v);
  }
  return fs;
}

int conjugate_irrep(const CharacterTable& ct, int alpha) {
  int ncl = ct.conj.num_classes();
  for (int b = 0; b < ct.num_irreps; ++b) {
    bool ok = true;
    for (int c = 0; c < ncl && ok; ++c)
      if (std::abs(ct.chars[b][c] - std::conj(ct.chars[alpha][c])) > 1e-6)
        ok = false;
    if (ok) return b;
  }
  throw consistency_error("conjugate irrep not found in the table");
}

double higher_fs(const CharacterTable& ct, long long q, int alpha) {
  const int n = ct.order();
  cplx s = 0.0;
  for (Elem x = 0; x < n; ++x) s += ct.chi(alpha, ct.group.pow(x, q));
  s /= static_cast<double>(n);
  if (std::abs(s.imag()) > 1e-6)
    throw consistency_error("higher_fs: non-real indicator");
  return s.real();
}

namespace {

long long class_function_sum(const CharacterTable& ct, int expo,
                             const std::vector<Elem>& c, const int* iota,
                             int iota_pow, const char* what) {
  const double n = ct.order();
  cplx total = 0.0;
  for (int a = 0; a < ct.num_irreps; ++a) {
    double sign = 1.0;
    if (iota) {
      int io = iota[a];
      if (io == 0) continue;
      if (io < 0 && (iota_pow & 1)) sign = -1.0;
    }
    cplx term = sign * std::pow(n / ct.dims[a], expo);
    for (Elem cj : c) term *= ct.chi(a, cj);
    total += term;
  }
  return round_integer(total, what);
}

}  // namespace

long long R_count(const CharacterTable& ct, int gamma, int n,
                  const std::vector<Elem>& c) {
  if (gamma < 0 || n < 0 || 2 * gamma + n < 1)
    throw validation_error("R_count: need gamma,n >= 0 and 2*gamma+n >= 1");
  if (static_cast<int>(c.size()) != n)
    throw validation_error("R_count: boundary tuple size != n");
  return class_function_sum(ct, 2 * gamma + n - 2, c, nullptr, 0, "R_count");
}

long long K_count(const CharacterTable& ct, int k, int n,
                  const std::vector<Elem>& c) {
  if (k < 1 || n < 0)
    throw validation_error("K_count: need k >= 1 and n >= 0");
  if (static_cast<int>(c.size()) != n)
    throw validation_error("K_count: boundary tuple size != n");
  FSData fs = fs_indicators(ct);
  return class_function_sum(ct, k + n - 2, c, fs.iota.data(), k, "K_count");
}

long long glued_dof_orient(const CharacterTable& ct, int gamma, int n) {
  if (gamma < 0 || n < 0)
    throw validation_error("glued_dof_orient: need gamma,n >= 0");
  const double G = ct.order();
  cplx total = 0.0;
  for (int a = 0; a < ct.num_irreps; ++a)
    total += std::pow(G, n) * std::pow(G / ct.dims[a], 2 * gamma - 2);
  return round_integer(total, "glued_dof_orient");
}

long long glued_dof_nonorient(const CharacterTable& ct, int k, int n) {
  if (k < 1 || n < 0)
    throw validation_error("glued_dof_nonorient: need k >= 1 and n >= 0");
  const double G = ct.order();
  FSData fs = fs_indicators(ct);
  cplx total = 0.0;
  for (int a = 0; a < ct.num_irreps; ++a) {
    if (fs.iota[a] == 0) continue;
    double sign = (fs.iota[a] < 0 && (k & 1)) ? -1.0 : 1.0;
    total += sign * std::pow(G, n) * std::pow(G / ct.dims[a], k - 2);
  }
  return round_integer(total, "glued_dof_nonorient");
}

int regular_delta(const CharacterTable& ct, Elem x) {
  cplx s = 0.0;
  for (int a = 0; a < ct.num_irreps; ++a)
    s += static_cast<double>(ct.dims[a]) * ct.chi(a, x);
  long long v =
      round_integer(s / static_cast<double>(ct.order()), "regular_delta");
  if (v != 0 && v != 1)
    throw consistency_error("regular_delta outside {0,1}");
  return static_cast<int>(v);
}

}  // namespace loopblocks
