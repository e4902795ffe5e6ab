#include <cmath>
#include <map>
#include <vector>

#include "doctest.h"
#include "loopblocks/double_mtc.hpp"

using namespace loopblocks;

TEST_CASE("double of Z2: four abelian anyons with the exact sign S matrix") {
  DoubleData dd = double_data(parse_group("Z2"));
  REQUIRE(dd.num_anyons() == 4);
  CHECK(dd.anyons[0] == AnyonLabel{0, 0});  // vacuum first
  CHECK(dd.anyons[1] == AnyonLabel{0, 1});
  CHECK(dd.anyons[2] == AnyonLabel{1, 0});
  CHECK(dd.anyons[3] == AnyonLabel{1, 1});
  CHECK(dd.anyon_index[0][0] == 0);
  CHECK(dd.find(AnyonLabel{1, 1}) == 3);

  SMatrix sm = s_matrix(dd);
  double expect[4][4] = {{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1},
                         {1, -1, -1, 1}};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      CHECK(sm.entries(a, b).real() ==
            doctest::Approx(expect[a][b] / 2).epsilon(1e-12));
      CHECK(sm.entries(a, b).imag() == doctest::Approx(0.0).epsilon(1e-12));
    }

  for (int a = 0; a < 4; ++a) {
    CHECK(quantum_dim(dd, a) == 1);
    CHECK(anyon_fs(dd, a) == 1);
    CHECK(dual_anyon(dd, a) == a);  // everything is self-dual here
  }
  CHECK(total_dim(dd) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("the two S conventions are elementwise conjugates") {
  DoubleData dd = double_data(parse_group("Z4"));
  SMatrix c = s_matrix(dd, SConvention::Conjugated);
  SMatrix p = s_matrix(dd, SConvention::Plain);
  CHECK(c.convention == SConvention::Conjugated);
  CHECK(p.convention == SConvention::Plain);
  CHECK((c.entries - p.entries.conjugate()).cwiseAbs().maxCoeff() < 1e-12);
  // Z4 has complex anyons, so the conventions genuinely differ
  CHECK((c.entries - p.entries).cwiseAbs().maxCoeff() > 0.1);
}

TEST_CASE("double of S3: dimensions, unitarity, duality") {
  DoubleData dd = double_data(parse_group("S3"));
  REQUIRE(dd.num_anyons() == 8);
  long long dims[8] = {1, 1, 2, 3, 3, 2, 2, 2};
  long long sq = 0;
  for (int a = 0; a < 8; ++a) {
    CHECK(quantum_dim(dd, a) == dims[a]);
    sq += dims[a] * dims[a];
  }
  CHECK(sq == 36);
  CHECK(total_dim(dd) == doctest::Approx(6.0).epsilon(1e-12));

  SMatrix sm = s_matrix(dd);
  Eigen::MatrixXcd S = sm.entries;
  CHECK((S - S.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((S * S.adjoint() - Eigen::MatrixXcd::Identity(8, 8))
            .cwiseAbs()
            .maxCoeff() < 1e-12);

  // vacuum column carries the quantum dimensions
  for (int a = 0; a < 8; ++a)
    CHECK(std::abs(S(a, 0) - cplx(dims[a] / 6.0, 0.0)) < 1e-12);

  // S^2 is the charge-conjugation permutation
  Eigen::MatrixXcd S2 = S * S;
  for (int a = 0; a < 8; ++a) {
    int ad = dual_anyon(dd, a);
    CHECK(dual_anyon(dd, ad) == a);
    for (int b = 0; b < 8; ++b) {
      double expect = b == ad ? 1.0 : 0.0;
      CHECK(std::abs(S2(a, b) - expect) < 1e-12);
    }
  }
  CHECK(dual_anyon(dd, 0) == 0);
}

TEST_CASE("raw S entries at conjugate column parts") {
  DoubleData dd = double_data(parse_group("S3"));
  SMatrix sm = s_matrix(dd);
  const FiniteGroup& g = dd.group;
  // at the canonical representative the raw entry is the matrix entry
  for (int a = 0; a < dd.num_anyons(); ++a)
    for (int cl = 0; cl < static_cast<int>(dd.conj.classes.size()); ++cl) {
      Elem rep = dd.conj.class_rep[cl];
      for (int alpha = 0; alpha < dd.cent_tables[cl].num_irreps; ++alpha) {
        cplx raw = s_entry(dd, a, rep, cl, alpha, sm.convention);
        CHECK(std::abs(raw - sm.entries(a, dd.anyon_index[cl][alpha])) <
              1e-12);
        // the inverse representative has the same centralizer
        CHECK_NOTHROW(s_entry(dd, a, g.inv(rep), cl, alpha, sm.convention));
      }
    }
  // an element with a different centralizer is rejected
  int cl3 = dd.conj.class_of[3];  // a transposition's class
  CHECK_THROWS(s_entry(dd, 0, 0, cl3, 0, sm.convention));
}

TEST_CASE("Verlinde fusion rules") {
  DoubleData z2 = double_data(parse_group("Z2"));
  SMatrix sz2 = s_matrix(z2);
  // abelian double: fusion is the group law of Z2 x Z2
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      int expect = a ^ b;  // labels happen to compose like bit pairs
      for (int c = 0; c < 4; ++c)
        CHECK(fusion(z2, sz2, a, b, c) == (c == expect ? 1 : 0));
    }

  DoubleData s3 = double_data(parse_group("S3"));
  SMatrix ss3 = s_matrix(s3);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      long long lhs = 0;
      for (int c = 0; c < 8; ++c) {
        long long n = fusion(s3, ss3, a, b, c);
        CHECK(n >= 0);
        CHECK(n == fusion(s3, ss3, b, a, c));  // commutative
        lhs += n * quantum_dim(s3, c);
      }
      CHECK(lhs == quantum_dim(s3, a) * quantum_dim(s3, b));
      // vacuum fuses trivially
      CHECK(fusion(s3, ss3, a, 0, b) == (a == b ? 1 : 0));
      // N_{a,dual(a)}^vac = 1
      CHECK(fusion(s3, ss3, a, dual_anyon(s3, a), 0) == 1);
    }
}

TEST_CASE("Frobenius-Schur indicators of quaternion double anyons") {
  DoubleData dd = double_data(parse_group("Q8"));
  REQUIRE(dd.num_anyons() == 22);
  std::map<int, int> histogram;
  for (int a = 0; a < 22; ++a) ++histogram[anyon_fs(dd, a)];
  CHECK(histogram[1] == 14);   // real
  CHECK(histogram[0] == 6);    // complex (order-4 centralizer characters)
  CHECK(histogram[-1] == 2);   // quaternionic (the 2-dim irrep, twice)
  CHECK(anyon_fs(dd, 0) == 1);
}

TEST_CASE("ground-state counts from the S matrix") {
  DoubleData s3 = double_data(parse_group("S3"));
  SMatrix ss3 = s_matrix(s3);
  CHECK(gsd_from_smatrix(s3, ss3, true, 0) == 1);   // sphere
  CHECK(gsd_from_smatrix(s3, ss3, true, 1) == 8);   // torus: one per anyon
  CHECK(gsd_from_smatrix(s3, ss3, true, 2) == 116);

  DoubleData z2 = double_data(parse_group("Z2"));
  SMatrix sz2 = s_matrix(z2);
  CHECK(gsd_from_smatrix(z2, sz2, true, 1) == 4);
  CHECK(gsd_from_smatrix(z2, sz2, false, 1) == 2);  // projective plane
  CHECK(gsd_from_smatrix(z2, sz2, false, 2) == 4);  // Klein bottle
}
