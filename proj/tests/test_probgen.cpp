#include <catch2/catch_amalgamated.hpp>

#include "rrrkit/probgen.hpp"
#include "rrrkit/projectors.hpp"

#include <cmath>

using namespace rrrkit;

TEST_CASE("gaussian generator: dimensions, magnitudes, determinism") {
  RealInstance inst = gen_gaussian<Real>(80, 50, 7);
  CHECK(inst.m() == 80);
  CHECK(inst.n() == 50);
  CHECK(inst.kind == InstanceKind::Gaussian);
  CHECK_NOTHROW(inst.validate());
  REQUIRE(inst.x0.has_value());
  CHECK(((inst.A * *inst.x0).cwiseAbs() - inst.b).cwiseAbs().maxCoeff() <=
        1e-12 * inst.b.maxCoeff());
  CHECK(inst.b.minCoeff() >= 0.0);

  RealInstance again = gen_gaussian<Real>(80, 50, 7);
  CHECK((inst.A - again.A).cwiseAbs().maxCoeff() == 0.0);
  CHECK((inst.b - again.b).cwiseAbs().maxCoeff() == 0.0);
  CHECK((*inst.x0 - *again.x0).cwiseAbs().maxCoeff() == 0.0);

  RealInstance other = gen_gaussian<Real>(80, 50, 8);
  CHECK((inst.A - other.A).cwiseAbs().maxCoeff() > 0.0);

  SECTION("tiny instance for hand checks") {
    RealInstance tiny = gen_gaussian<Real>(2, 1, 5);
    CHECK_NOTHROW(tiny.validate());
  }
  SECTION("parameter errors") {
    CHECK_THROWS_AS(gen_gaussian<Real>(3, 5, 1), std::invalid_argument);
    CHECK_THROWS_AS(gen_gaussian<Real>(0, 0, 1), std::invalid_argument);
  }
}

TEST_CASE("gaussian generator over the complex field") {
  ComplexInstance inst = gen_gaussian<Complex>(40, 16, 9);
  CHECK_NOTHROW(inst.validate());
  // unit-variance convention: average squared magnitude of the entries ~ 1
  const double mean_sq = inst.A.cwiseAbs2().mean();
  CHECK(mean_sq > 0.7);
  CHECK(mean_sq < 1.3);

  const AnyInstance dispatched = gen_gaussian(40, 16, Field::Complex, 9);
  REQUIRE(std::holds_alternative<ComplexInstance>(dispatched));
  CHECK((std::get<ComplexInstance>(dispatched).A - inst.A).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("oversampled DFT generator has orthonormal columns") {
  ComplexInstance inst = gen_oversampled_dft(8, 2, 11);
  CHECK(inst.m() == 16);
  CHECK(inst.n() == 8);
  CHECK(inst.kind == InstanceKind::OversampledDft);
  CHECK_NOTHROW(inst.validate());
  const ComplexMat gram = inst.A.adjoint() * inst.A;
  CHECK((gram - ComplexMat::Identity(8, 8)).cwiseAbs().maxCoeff() <= 1e-12);

  SECTION("projector invariants hold for the DFT columns") {
    const ColumnSpaceProjector<Complex> pa(inst.A);
    std::mt19937_64 rng(12);
    const ComplexVec y = random_normal_vector<Complex>(16, rng);
    CHECK((pa(ComplexVec(pa(y))) - pa(y)).norm() <= 1e-12 * y.norm());
    const ComplexVec ax = inst.A * ComplexVec(random_normal_vector<Complex>(8, rng));
    CHECK((pa(ax) - ax).norm() <= 1e-12 * ax.norm());
  }
  SECTION("magnitudes kill a global phase") {
    const Complex rot = std::polar(1.0, 1.234);
    const ComplexVec rotated = rot * *inst.x0;
    CHECK(((inst.A * rotated).cwiseAbs() - inst.b).cwiseAbs().maxCoeff() <= 1e-12);
  }
  SECTION("oversample = 1 is allowed, below is not") {
    CHECK_NOTHROW(gen_oversampled_dft(4, 1, 1));
    CHECK_THROWS_AS(gen_oversampled_dft(4, 0, 1), std::invalid_argument);
  }
  SECTION("determinism") {
    ComplexInstance again = gen_oversampled_dft(8, 2, 11);
    CHECK((*inst.x0 - *again.x0).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("sparse generator plants exactly k solid atoms") {
  ComplexInstance inst = gen_sparse(16, 4, 13);
  CHECK(inst.m() == 16);
  CHECK(inst.kind == InstanceKind::Sparse);
  CHECK(inst.sparsity == 4);
  CHECK_NOTHROW(inst.validate());
  REQUIRE(inst.x0.has_value());
  Index nonzeros = 0;
  double min_atom = 1e300;
  for (Index i = 0; i < inst.x0->size(); ++i) {
    const double mag = std::abs((*inst.x0)[i]);
    if (mag > 0.0) {
      ++nonzeros;
      min_atom = std::min(min_atom, mag);
    }
  }
  CHECK(nonzeros == 4);
  CHECK(min_atom >= 0.1);

  SECTION("top-k projection leaves the planted signal unchanged") {
    const TopKProjector pa(4);
    CHECK((pa(*inst.x0) - *inst.x0).norm() == 0.0);
  }
  SECTION("k = n reduces to the dense DFT instance") {
    ComplexInstance dense = gen_sparse(8, 8, 3);
    Index nz = 0;
    for (Index i = 0; i < 8; ++i)
      if (std::abs((*dense.x0)[i]) > 0.0) ++nz;
    CHECK(nz == 8);
  }
  SECTION("parameter errors") {
    CHECK_THROWS_AS(gen_sparse(8, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(gen_sparse(8, 9, 1), std::invalid_argument);
  }
  SECTION("determinism") {
    ComplexInstance again = gen_sparse(16, 4, 13);
    CHECK((*inst.x0 - *again.x0).cwiseAbs().maxCoeff() == 0.0);
  }
}
