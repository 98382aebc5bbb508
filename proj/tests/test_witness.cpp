#include <doctest.h>

#include "oracles.hpp"
#include "qcorr/random.hpp"
#include "qcorr/witness.hpp"

using namespace qcorr;

TEST_CASE("negativity of Bell and PPT states") {
  const auto r = negativity(max_entangled(2));
  CHECK(r.value == doctest::Approx(0.5));
  CHECK(r.expectation == doctest::Approx(-0.5));
  CHECK(r.n_minus == 1);
  CHECK(r.tr_w2 == doctest::Approx(1.0));
  CHECK(r.sup_norm == doctest::Approx(0.5));

  const auto ppt = negativity(horodecki_3x3(0.4));
  CHECK(ppt.value == 0.0);
  CHECK(ppt.n_minus == 0);
  CHECK_THROWS_AS(negativity_witness(werner(3, 0.5)), InvalidArgument);
}

TEST_CASE("negativity equals (|rho^TA|_1 - 1)/2 and the witness attains it") {
  Rng rng(21);
  for (int t = 0; t < 30; ++t) {
    const int dA = 2 + t % 2, dB = 2 + (t / 2) % 3;
    const BipartiteState st = make_state(random_density(dA * dB, rng, 1 + t % 3), Cut(dA, dB), "r");
    const CMatrix pt = oracle::transpose_a(st.rho, dA, dB);
    const double ref = (oracle::schatten(pt, 1.0) - 1.0) / 2.0;
    const auto r = negativity(st);
    CHECK(r.value == doctest::Approx(ref).epsilon(1e-10));
    if (r.value > 0) {
      // W^TA is a projector, so 0 <= W^TA <= I
      const CMatrix wt = oracle::transpose_a(r.witness.W, dA, dB);
      CHECK((wt * wt - wt).norm() < 1e-10);
      CHECK((st.rho * r.witness.W).trace().real() == doctest::Approx(-r.value).epsilon(1e-10));
    }
  }
}

TEST_CASE("decomposable random robustness on Werner states") {
  // n_- = 1 for Werner states: the witness is the flipped eigenprojector, Tr W = 1,
  // and -Tr(W rho) = |lambda_min(rho^TA)| = N.
  for (double k : {-1.0, -0.6, -0.2}) {
    const BipartiteState st = werner(5, k);
    const auto n = negativity(st);
    const auto r = random_robustness_decomposable(st);
    CHECK(r.witness.W.trace().real() == doctest::Approx(1.0));
    CHECK(r.expectation == doctest::Approx(n.expectation).epsilon(1e-10));
  }
  // the max entangled 4x4 state has a 6-fold negative eigenspace
  const auto r4 = random_robustness_decomposable(max_entangled(4));
  CHECK(r4.expectation == doctest::Approx(-0.25));
  CHECK(r4.tr_w2 == doctest::Approx(1.0 / 6.0));
  CHECK(r4.sup_norm == doctest::Approx(0.25));
}

TEST_CASE("seesaw finds the product minimum of simple operators") {
  SeesawConfig cfg;
  cfg.restarts = 20;
  // <ab|F|ab> = |<a|b>|^2, minimum 0
  CHECK(seesaw_min_product(flip_operator(3), Cut(3, 3), cfg).value == doctest::Approx(0.0).epsilon(1e-9));
  // a product operator attains the product of local minima
  Rng rng(22);
  RVector ea(2), eb(3);
  ea << 0.2, 1.0;
  eb << 0.5, 2.0, 3.0;
  const CMatrix ua = haar_unitary(2, rng), ub = haar_unitary(3, rng);
  const CMatrix a = ua * ea.cast<cplx>().asDiagonal() * ua.adjoint();
  const CMatrix b = ub * eb.cast<cplx>().asDiagonal() * ub.adjoint();
  const auto r = seesaw_min_product(tensor(a, b), Cut(2, 3), cfg);
  CHECK(r.value == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(r.restarts == 20);
  // local minima come sorted
  for (std::size_t i = 1; i < r.local_minima.size(); ++i)
    CHECK(r.local_minima[i - 1].first <= r.local_minima[i].first);
}

TEST_CASE("certified random robustness is zero on separable states") {
  Rng rng(23);
  const CMatrix prod = tensor(random_density(3, rng), random_density(3, rng));
  const auto r = random_robustness_cutting_plane(make_state(prod, Cut(3, 3), "product"));
  CHECK(r.value <= 1e-6);
  const auto sep = random_robustness_cutting_plane(werner(3, 0.5));
  CHECK(sep.value <= 1e-6);
}

TEST_CASE("certified witness detects Horodecki bound entanglement and is block positive") {
  CuttingPlaneConfig cfg;
  const auto r = random_robustness_cutting_plane(horodecki_3x3(0.3), cfg);
  CHECK(r.value > 1e-3);
  CHECK(r.witness.certificate.certified);
  CHECK(r.witness.W.trace().real() == doctest::Approx(1.0));
  // fresh seesaw with an unrelated seed
  SeesawConfig check;
  check.restarts = 300;
  check.seed = 987654321;
  CHECK(seesaw_min_product(r.witness, check).value >= -1e-9);
  // same config, same witness
  const auto again = random_robustness_cutting_plane(horodecki_3x3(0.3), cfg);
  CHECK(again.value == r.value);
}

TEST_CASE("ball_lp master still runs and stays certified") {
  CuttingPlaneConfig cfg;
  cfg.master = MasterProblem::ball_lp;
  cfg.max_cuts = 40;
  const auto r = random_robustness_cutting_plane(max_entangled(2), cfg);
  CHECK(r.witness.certificate.certified);
  CHECK(r.value > 0.0);
  // never better than the decomposable optimum for an NPT two-qubit state
  CHECK(r.value <= random_robustness_decomposable(max_entangled(2)).value + 1e-6);
}

TEST_CASE("PPT-relaxed generalized robustness") {
  CHECK(generalized_robustness_ppt(horodecki_3x3(0.5)).value == doctest::Approx(0.0).epsilon(1e-5));
  const auto r = generalized_robustness_ppt(max_entangled(2));
  // two-qubit Bell state: (rho + Y)^TA >= 0 needs Tr Y = 1
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-4));
}
