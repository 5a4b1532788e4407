#include <doctest.h>

#include <cmath>

#include "modsym/lie.hpp"
#include "modsym/linalg.hpp"
#include "modsym/rng.hpp"

using namespace modsym;

namespace {

// Matrix-level invariant suite from the LieAlgebra contract.
void check_algebra_invariants(const AlgebraPtr& alg) {
  const int d = alg->dim();
  const int n = alg->ambient();
  // antisymmetry, exactly as stored
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) CHECK(alg->structure(i, j, k) == -alg->structure(j, i, k));
  // matrix brackets reproduce structure constants
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(n, n);
      for (int k = 0; k < d; ++k) expect += alg->structure(i, j, k) * alg->basis_element(k);
      const Eigen::MatrixXd br = alg->basis_element(i) * alg->basis_element(j) -
                                 alg->basis_element(j) * alg->basis_element(i);
      CHECK((br - expect).cwiseAbs().maxCoeff() <= 1e-10);
    }
  // Jacobi identity on matrices, entrywise
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = j + 1; k < d; ++k) {
        const auto& ei = alg->basis_element(i);
        const auto& ej = alg->basis_element(j);
        const auto& ek = alg->basis_element(k);
        auto br = [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
          return Eigen::MatrixXd(a * b - b * a);
        };
        const Eigen::MatrixXd jac = br(ei, br(ej, ek)) + br(ej, br(ek, ei)) + br(ek, br(ei, ej));
        CHECK(jac.cwiseAbs().maxCoeff() <= 1e-10);
      }
}

} // namespace

TEST_CASE("su(2) canonical bracket relations") {
  const AlgebraPtr su2 = builtin_algebra("su(2)");
  REQUIRE(su2->dim() == 3);
  const auto e1 = element(su2, Eigen::Vector3d(1, 0, 0));
  const auto e2 = element(su2, Eigen::Vector3d(0, 1, 0));
  const auto e3 = element(su2, Eigen::Vector3d(0, 0, 1));

  // [e1, e2] = e3 for e_k = -(i/2) sigma_k
  const auto b12 = bracket(e1, e2);
  CHECK((b12.coords - e3.coords).norm() <= 1e-12);
  CHECK((b12.matrix() - e3.matrix()).norm() <= 1e-12);
  // cyclic
  CHECK((bracket(e2, e3).coords - e1.coords).norm() <= 1e-12);
  CHECK((bracket(e3, e1).coords - e2.coords).norm() <= 1e-12);
}

TEST_CASE("bracket of an element with itself vanishes") {
  CounterRng rng(7, "bracket-self");
  const AlgebraPtr so4 = builtin_algebra("so(4)");
  for (int t = 0; t < 10; ++t) {
    const auto a = element(so4, rng.gaussian_vector(so4->dim()));
    CHECK(bracket(a, a).coords.norm() <= 1e-14);
  }
}

TEST_CASE("abelian algebras have zero bracket") {
  CounterRng rng(8, "bracket-abelian");
  const AlgebraPtr t3 = builtin_algebra("torus(3)");
  const auto a = element(t3, rng.gaussian_vector(3));
  const auto b = element(t3, rng.gaussian_vector(3));
  CHECK(bracket(a, b).coords.norm() == 0.0);
}

TEST_CASE("bracket rejects mismatched algebras") {
  const auto a = element(builtin_algebra("su(2)"), Eigen::Vector3d(1, 0, 0));
  const auto b = element(builtin_algebra("so(3)"), Eigen::Vector3d(1, 0, 0));
  CHECK_THROWS_AS(bracket(a, b), DomainError);
}

TEST_CASE("matrix_exp closed forms") {
  CHECK((matrix_exp(Eigen::MatrixXd::Zero(3, 3)) - Eigen::MatrixXd::Identity(3, 3)).norm() ==
        0.0);

  Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(2, 2);
  diag(0, 0) = 0.3;
  diag(1, 1) = -1.7;
  const Eigen::MatrixXd ed = matrix_exp(diag);
  CHECK(ed(0, 0) == doctest::Approx(std::exp(0.3)).epsilon(1e-13));
  CHECK(ed(1, 1) == doctest::Approx(std::exp(-1.7)).epsilon(1e-13));
  CHECK(std::abs(ed(0, 1)) + std::abs(ed(1, 0)) == 0.0);

  Eigen::MatrixXd rot(2, 2);
  rot << 0, -1, 1, 0;
  for (double t : {0.1, 1.0, 3.5, -2.0}) {
    const Eigen::MatrixXd e = matrix_exp(t * rot);
    CHECK(e(0, 0) == doctest::Approx(std::cos(t)).epsilon(1e-12));
    CHECK(e(1, 0) == doctest::Approx(std::sin(t)).epsilon(1e-12));
    CHECK(e(0, 1) == doctest::Approx(-std::sin(t)).epsilon(1e-12));
  }

  CHECK_THROWS_AS(matrix_exp(Eigen::MatrixXd::Zero(2, 3)), DomainError);
  CHECK_THROWS_AS(matrix_exp(Eigen::MatrixXd::Zero(2, 2), -1.0), DomainError);
}

TEST_CASE("matrix_exp group properties") {
  CounterRng rng(21, "exp-props");
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + static_cast<int>(rng.uniform() * 4);
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = rng.normal();
    a *= 5.0 / std::max(5.0, a.norm()); // ||a|| <= 5
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    CHECK((matrix_exp(a) * matrix_exp(-a) - id).norm() <= 1e-9);
    const double s = rng.uniform(-1.5, 1.5), u = rng.uniform(-1.5, 1.5);
    CHECK((matrix_exp((s + u) * a) - matrix_exp(s * a) * matrix_exp(u * a)).norm() <= 1e-9);
  }
}

TEST_CASE("adjoint basics on su(2)") {
  const AlgebraPtr su2 = builtin_algebra("su(2)");
  CounterRng rng(3, "adjoint");
  const auto a = element(su2, rng.gaussian_vector(3));
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(4, 4);
  CHECK((adjoint(id, a).coords - a.coords).norm() <= 1e-12);

  // the Cartan element is fixed by its own torus
  const auto e3 = element(su2, Eigen::Vector3d(0, 0, 1));
  const Eigen::MatrixXd g = matrix_exp(0.77 * e3.matrix());
  CHECK((adjoint(g, e3).coords - e3.coords).norm() <= 1e-10);

  // Ad_g is an automorphism
  for (int t = 0; t < 10; ++t) {
    const auto x = element(su2, rng.gaussian_vector(3));
    const auto y = element(su2, rng.gaussian_vector(3));
    const Eigen::MatrixXd h = matrix_exp(su2->matrix_of(rng.gaussian_vector(3)));
    const auto lhs = adjoint(h, bracket(x, y));
    const auto rhs = bracket(adjoint(h, x), adjoint(h, y));
    CHECK((lhs.coords - rhs.coords).norm() <= 1e-9);
  }
}

TEST_CASE("adjoint rejects non-normalizing g") {
  const AlgebraPtr t2 = builtin_algebra("torus(2)");
  const auto e1 = element(t2, Eigen::Vector2d(1, 0));
  Eigen::MatrixXd swap = Eigen::MatrixXd::Identity(4, 4);
  swap.row(0).swap(swap.row(1)); // swaps a realified row pair across blocks
  CHECK_THROWS_AS(adjoint(swap, e1), NumericalError);
}

TEST_CASE("catalog dimensions and errors") {
  CHECK(builtin_algebra("su(2)")->dim() == 3);
  CHECK(builtin_algebra("u(3)")->dim() == 9);
  CHECK(builtin_algebra("so(3)")->dim() == 3);
  CHECK(builtin_algebra("so(5)")->dim() == 10);
  CHECK(builtin_algebra("torus(4)")->dim() == 4);
  CHECK(builtin_algebra("circle")->dim() == 1);
  CHECK(builtin_algebra("circle")->name() == "torus(1)");
  CHECK(builtin_algebra("r")->dim() == 1);
  CHECK(builtin_algebra("line")->name() == "r");
  CHECK(builtin_algebra("u(1)")->ambient() == 2);

  CHECK_THROWS_AS(builtin_algebra("sp(4)"), DomainError);
  CHECK_THROWS_AS(builtin_algebra("u(9)"), DomainError);
  CHECK_THROWS_AS(builtin_algebra("torus(5)"), DomainError);
  CHECK_THROWS_AS(builtin_algebra("su(1)"), DomainError);

  CHECK(catalog_key_is_compact("u(2)"));
  CHECK(!catalog_key_is_compact("r"));
}

TEST_CASE("catalog invariant suite (small members)") {
  for (const char* key : {"su(2)", "su(3)", "u(1)", "u(2)", "u(3)", "so(3)", "so(4)", "torus(2)",
                          "r", "circle"})
    check_algebra_invariants(builtin_algebra(key));
}

TEST_CASE("coordinate round trip") {
  CounterRng rng(11, "roundtrip");
  for (const char* key : {"su(2)", "u(2)", "so(4)"}) {
    const AlgebraPtr alg = builtin_algebra(key);
    for (int t = 0; t < 10; ++t) {
      const Eigen::VectorXd c = rng.gaussian_vector(alg->dim());
      const Eigen::VectorXd back = alg->coords_of(alg->matrix_of(c));
      CHECK((back - c).norm() <= 1e-12 * std::max(1.0, c.norm()));
    }
  }
}

TEST_CASE("user-supplied algebra validation fails fast") {
  // dependent basis
  std::vector<Eigen::MatrixXd> dep = {Eigen::MatrixXd::Identity(2, 2),
                                      2.0 * Eigen::MatrixXd::Identity(2, 2)};
  CHECK_THROWS_AS(LieAlgebra("dep", dep), NumericalError);

  // wrong structure constants for a valid basis
  const AlgebraPtr su2 = builtin_algebra("su(2)");
  std::vector<Eigen::MatrixXd> basis = su2->basis();
  std::vector<Eigen::MatrixXd> bad(3, Eigen::MatrixXd::Zero(3, 3));
  CHECK_THROWS_AS(LieAlgebra("bad-su2", basis, bad, true), NumericalError);
}

TEST_CASE("spin_irrep trivial and defining cases") {
  const auto zero = spin_irrep(0);
  REQUIRE(zero.size() == 3);
  for (const auto& m : zero) {
    CHECK(m.rows() == 2); // realified 1x1
    CHECK(m.norm() == 0.0);
  }

  const auto defining = spin_irrep(1);
  const AlgebraPtr su2 = builtin_algebra("su(2)");
  for (int k = 0; k < 3; ++k) CHECK((defining[k] - su2->basis_element(k)).norm() <= 1e-12);
}

TEST_CASE("spin_irrep(2) Cartan eigenvalues are {-i, 0, i}") {
  const auto images = spin_irrep(2);
  REQUIRE(images[2].rows() == 6);
  Eigen::EigenSolver<Eigen::MatrixXd> es(images[2]);
  int n_plus = 0, n_minus = 0, n_zero = 0;
  for (int i = 0; i < 6; ++i) {
    const std::complex<double> ev = es.eigenvalues()(i);
    CHECK(std::abs(ev.real()) <= 1e-9);
    if (std::abs(ev.imag() - 1.0) <= 1e-9)
      ++n_plus;
    else if (std::abs(ev.imag() + 1.0) <= 1e-9)
      ++n_minus;
    else if (std::abs(ev.imag()) <= 1e-9)
      ++n_zero;
  }
  CHECK(n_plus == 2);
  CHECK(n_minus == 2);
  CHECK(n_zero == 2);
}

TEST_CASE("spin_irrep satisfies the representation property") {
  const AlgebraPtr su2 = builtin_algebra("su(2)");
  for (int two_j = 0; two_j <= 7; ++two_j) {
    const auto img = spin_irrep(two_j);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(img[0].rows(), img[0].cols());
        for (int k = 0; k < 3; ++k) expect += su2->structure(i, j, k) * img[k];
        const Eigen::MatrixXd br = img[i] * img[j] - img[j] * img[i];
        CHECK((br - expect).cwiseAbs().maxCoeff() <= 1e-10);
      }
    // skew-symmetry of the realified images (skew-Hermitian upstairs)
    for (const auto& m : img) CHECK((m + m.transpose()).norm() <= 1e-12);
  }
  CHECK_THROWS_AS(spin_irrep(-1), DomainError);
}
