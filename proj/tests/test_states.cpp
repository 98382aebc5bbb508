#include <doctest.h>

#include "oracles.hpp"
#include "qcorr/random.hpp"
#include "qcorr/states.hpp"

using namespace qcorr;

namespace {

double min_eig(const CMatrix& m) { return eigvalsh(m).minCoeff(); }

}  // namespace

TEST_CASE("make_state enforces the density matrix invariants") {
  CHECK_THROWS_AS(make_state(identity(4), Cut(2, 2), "x"), InvalidArgument);  // trace 4
  CMatrix neg = identity(4) / 4.0;
  neg(0, 0) = -0.25;
  neg(1, 1) = 0.75;
  CHECK_THROWS_AS(make_state(neg, Cut(2, 2), "x"), InvalidArgument);
  CMatrix nonherm = identity(4) / 4.0;
  nonherm(0, 1) = 0.1;
  CHECK_THROWS_AS(make_state(nonherm, Cut(2, 2), "x"), InvalidArgument);
  CHECK_THROWS_AS(make_state(identity(4) / 4.0, Cut(2, 3), "x"), InvalidArgument);
  CHECK_NOTHROW(make_state(identity(6) / 6.0, Cut(2, 3), "x"));
}

TEST_CASE("max_entangled is a pure maximally entangled state") {
  for (int d : {2, 3, 4}) {
    const BipartiteState st = max_entangled(d);
    CHECK((st.rho * st.rho - st.rho).norm() < 1e-14);
    const CMatrix red = oracle::trace_b(st.rho, d, d);
    CHECK((red - CMatrix::Identity(d, d) / double(d)).norm() < 1e-14);
  }
}

TEST_CASE("werner: Tr(F rho) = k and NPT exactly for k < 0") {
  for (int d : {2, 3, 5}) {
    for (double k : {-1.0, -0.3, 0.0, 0.4, 1.0}) {
      const BipartiteState st = werner(d, k);
      CHECK((flip_operator(d) * st.rho).trace().real() == doctest::Approx(k).epsilon(1e-12));
      const double lam = min_eig(oracle::transpose_a(st.rho, d, d));
      if (k < 0) {
        CHECK(lam < -1e-12);
      } else {
        CHECK(lam > -1e-12);
      }
    }
  }
  CHECK_THROWS_AS(werner(3, 1.5), InvalidArgument);
  CHECK_THROWS_AS(werner(1, 0.0), InvalidArgument);
}

TEST_CASE("horodecki 3x3 family is PPT") {
  for (double k : {0.0, 0.1, 0.5, 0.9, 1.0}) {
    const BipartiteState st = horodecki_3x3(k);
    CHECK(st.rho.trace().real() == doctest::Approx(1.0));
    CHECK(min_eig(st.rho) > -1e-12);
    CHECK(min_eig(oracle::transpose_a(st.rho, 3, 3)) > -1e-12);
  }
  CHECK_THROWS_AS(horodecki_3x3(-0.1), InvalidArgument);
}

TEST_CASE("UPB tiles: nine orthonormal product vectors, PPT rank-7 state") {
  const auto v = upb_tiles_vectors();
  REQUIRE(v.size() == 9);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      CHECK(std::abs(v[i].dot(v[j]) - (i == j ? 1.0 : 0.0)) < 1e-14);
  // each vector has Schmidt rank one
  for (const auto& x : v) {
    const Eigen::Map<const CMatrix> m(x.data(), 4, 4);
    Eigen::JacobiSVD<CMatrix> svd(m);
    CHECK(svd.singularValues()(1) < 1e-14);
  }
  const BipartiteState st = upb_tiles_4x4();
  const RVector ev = eigvalsh(st.rho);
  CHECK((ev.array() > 1e-9).count() == 7);
  CHECK(min_eig(oracle::transpose_a(st.rho, 4, 4)) > -1e-12);
}

TEST_CASE("mix_with_noise and rebipartition") {
  const BipartiteState bell = max_entangled(2);
  const BipartiteState half = mix_with_noise(bell, 0.5);
  CHECK((half.rho - (0.5 * bell.rho + identity(4) / 8.0)).norm() < 1e-15);
  CHECK_THROWS_AS(mix_with_noise(bell, 1.2), InvalidArgument);

  const BipartiteState w = werner(8, -1.0);
  const BipartiteState r = rebipartition(w, Cut(2, 32));
  CHECK(r.rho == w.rho);
  CHECK(r.cut == Cut(2, 32));
  CHECK_THROWS_AS(rebipartition(w, Cut(3, 20)), InvalidArgument);
}

TEST_CASE("classical states are block diagonal in their product basis") {
  Rng rng(11);
  const CMatrix ua = haar_unitary(2, rng), ub = haar_unitary(3, rng);
  Eigen::MatrixXd p(2, 3);
  p << 0.1, 0.2, 0.05, 0.15, 0.3, 0.2;
  const BipartiteState cc = classical_classical(p, ua, ub);
  const CMatrix u = oracle::kron(ua, ub);
  const CMatrix diag = u.adjoint() * cc.rho * u;
  CHECK((diag - CMatrix(diag.diagonal().asDiagonal())).norm() < 1e-14);
  CHECK_THROWS_AS(classical_classical(p * 2.0, ua, ub), InvalidArgument);

  const BipartiteState qc =
      quantum_classical({0.3, 0.7}, {random_density(2, rng), random_density(2, rng)}, ub);
  CHECK((oracle::dephase_b(qc.rho, 2, ub) - qc.rho).norm() < 1e-14);
}
