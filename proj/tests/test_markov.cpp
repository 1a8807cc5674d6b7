#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "trilab/catalog.hpp"
#include "trilab/markov.hpp"

#include "oracles.hpp"

#include <random>
#include <stdexcept>

using namespace trilab;

TEST_CASE("backward transitions are proper two-point laws") {
  MultiplicitySpec eu = catalog_triangle(TriangleName::Eulerian);
  DimensionTable dims = dimensions(eu, 6);

  LevelLaw law = backward_transition(eu, dims, 2, 1);
  CHECK(law.level == 1);
  REQUIRE(law.probs.size() == 2);
  CHECK(law.probs[0] == Rat(1, 2));
  CHECK(law.probs[1] == Rat(1, 2));
  CHECK(law.total() == 1);

  // Edge positions move deterministically.
  CHECK(backward_transition(eu, dims, 4, 0).probs[0] == 1);
  LevelLaw diag = backward_transition(eu, dims, 4, 4);
  CHECK(diag.probs[3] == 1);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    MultiplicitySpec tri = testutil::random_triangle(rng, 8);
    DimensionTable d = dimensions(tri, 8);
    for (int n = 1; n <= 8; ++n)
      for (int k = 0; k <= n; ++k) {
        LevelLaw row = backward_transition(tri, d, n, k);
        CHECK(row.total() == 1);
        for (int j = 0; j + 1 <= n; ++j)
          if (j != k && j != k - 1) CHECK(row.probs[j] == 0);
      }
  }

  CHECK_THROWS_AS(backward_transition(eu, dims, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(backward_transition(eu, dims, 9, 2), std::invalid_argument);
}

TEST_CASE("composed backward transitions reproduce the Martin kernel laws") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    MultiplicitySpec tri = testutil::random_triangle(rng, 10);
    const int nu = 3 + static_cast<int>(rng() % 8);  // 3..10
    const int kappa = static_cast<int>(rng() % (nu + 1));
    DimensionTable dims = dimensions(tri, nu);
    KernelArray V = martin_kernel(tri, {nu, kappa});

    // Push the point mass at (nu, kappa) down one level at a time.
    std::vector<Rat> mass(static_cast<std::size_t>(nu) + 1, Rat(0));
    mass[kappa] = 1;
    for (int n = nu; n >= 1; --n) {
      std::vector<Rat> below(static_cast<std::size_t>(n), Rat(0));
      for (int k = 0; k <= n; ++k) {
        if (mass[k] == 0) continue;
        LevelLaw step = backward_transition(tri, dims, n, k);
        for (int j = 0; j + 1 <= n; ++j) below[j] += mass[k] * step.probs[j];
      }
      mass.assign(below.begin(), below.end());
      LevelLaw expect = level_law_unchecked(dims, V, n - 1);
      for (int j = 0; j + 1 <= n; ++j) CHECK(mass[j] == expect.probs[j]);
    }
    CHECK(mass[0] == 1);  // all probability reaches the root
  }
}

TEST_CASE("marginal law of a product kernel is binomial") {
  MultiplicitySpec tri = catalog_triangle(TriangleName::Pascal);
  DimensionTable dims = dimensions(tri, 9);
  const Rat x(1, 4);
  KernelArray V = extreme_kernel(TriangleName::Pascal, {}, BoundaryPoint::pascal_x(x), 9);

  LevelLaw l3 = marginal_law(tri, dims, V, 3);
  REQUIRE(l3.probs.size() == 4);
  CHECK(l3.probs[0] == Rat(1, 64));
  CHECK(l3.probs[1] == Rat(9, 64));
  CHECK(l3.probs[2] == Rat(27, 64));
  CHECK(l3.probs[3] == Rat(27, 64));

  for (int n = 0; n <= 9; ++n) {
    LevelLaw law = marginal_law(tri, dims, V, n);
    CHECK(law.total() == 1);
    for (int k = 0; k <= n; ++k)
      CHECK(law.probs[k] == binomial(n, k) * rat_pow(Rat(1) - x, k) * rat_pow(x, n - k));
  }
}

TEST_CASE("marginal law rejects arrays that lost harmonicity") {
  MultiplicitySpec tri = catalog_triangle(TriangleName::QPascal, {{"q", Rat(1, 2)}});
  DimensionTable dims = dimensions(tri, 8);
  KernelArray V = extreme_kernel(TriangleName::QPascal, {{"q", Rat(1, 2)}},
                                 BoundaryPoint::qpascal_m(2), 8);
  for (int n = 0; n <= 8; ++n) CHECK(marginal_law(tri, dims, V, n).total() == 1);

  KernelArray W = V;
  W.rows[4][2] += Rat(1, 1000);
  CHECK_THROWS_AS(marginal_law(tri, dims, W, 6), std::invalid_argument);
  // level_law_unchecked still evaluates, but the mass is now off 1.
  CHECK(level_law_unchecked(dims, W, 4).total() != 1);
}

TEST_CASE("backward sampling is deterministic and lands on legal paths") {
  MultiplicitySpec tri = catalog_triangle(TriangleName::Pascal);
  DimensionTable dims = dimensions(tri, 30);

  Trajectory a = sample_backward_path(tri, dims, {30, 15}, 424242);
  Trajectory b = sample_backward_path(tri, dims, {30, 15}, 424242);
  CHECK(a.states == b.states);
  Trajectory c = sample_backward_path(tri, dims, {30, 15}, 424243);
  CHECK(a.states != c.states);  // astronomically unlikely to collide

  REQUIRE(a.states.size() == 31);
  CHECK(a.states.front() == 15);
  CHECK(a.states.back() == 0);
  for (std::size_t i = 1; i < a.states.size(); ++i) {
    const int drop = a.states[i - 1] - a.states[i];
    CHECK(drop >= 0);
    CHECK(drop <= 1);
  }

  // Under unit weights, P(K_1 = 1 | K_30 = 15) = 15/30; check the frequency.
  int ones = 0;
  const int trials = 2000;
  for (int s = 0; s < trials; ++s) {
    Trajectory t = sample_backward_path(tri, dims, {30, 15}, 1000 + s);
    ones += t.states[29];  // K_1 is the next-to-last recorded state
  }
  const double freq = static_cast<double>(ones) / trials;
  CHECK(freq > 0.45);
  CHECK(freq < 0.55);

  CHECK_THROWS_AS(sample_backward_path(tri, dims, {31, 0}, 1), std::invalid_argument);
}

TEST_CASE("stochastic order compares exact upper tails") {
  MultiplicitySpec tri = catalog_triangle(TriangleName::Pascal);
  DimensionTable dims = dimensions(tri, 5);
  auto law_at = [&](const Rat& x, int n) {
    return marginal_law(tri, dims,
                        extreme_kernel(TriangleName::Pascal, {}, BoundaryPoint::pascal_x(x), 5), n);
  };

  LevelLaw half = law_at(Rat(1, 2), 5);
  LevelLaw quarter = law_at(Rat(1, 4), 5);  // success rate 3/4, larger positions
  CHECK(stochastic_leq(half, quarter) == StochasticOrder::StrictlyLess);
  CHECK(stochastic_leq(quarter, half) == StochasticOrder::StrictlyGreater);
  CHECK(stochastic_leq(half, law_at(Rat(1, 2), 5)) == StochasticOrder::Equal);

  LevelLaw spread{2, {Rat(1, 2), Rat(0), Rat(1, 2)}};
  LevelLaw point{2, {Rat(0), Rat(1), Rat(0)}};
  CHECK(stochastic_leq(spread, point) == StochasticOrder::Incomparable);

  CHECK_THROWS_AS(stochastic_leq(half, law_at(Rat(1, 2), 4)), std::invalid_argument);
}

TEST_CASE("first-column kernel slices decrease along the target position") {
  MultiplicitySpec pascal = catalog_triangle(TriangleName::Pascal);
  MonotoneReport rep = check_monotone_in_kappa(pascal, 4, 1);
  CHECK(rep.ok());
  REQUIRE(rep.sequence.size() == 5);
  CHECK(rep.sequence[0] == 1);
  CHECK(rep.sequence[1] == Rat(3, 4));
  CHECK(rep.sequence[2] == Rat(1, 2));
  CHECK(rep.sequence[3] == Rat(1, 4));
  CHECK(rep.sequence[4] == 0);

  // n = 0 slices are constant 1; n = nu slices are the root indicator.
  MonotoneReport top = check_monotone_in_kappa(pascal, 6, 0);
  for (const Rat& v : top.sequence) CHECK(v == 1);
  CHECK(top.ok());
  MonotoneReport bottom = check_monotone_in_kappa(pascal, 6, 6);
  CHECK(bottom.sequence[0] == 1);
  for (int kappa = 1; kappa <= 6; ++kappa) CHECK(bottom.sequence[kappa] == 0);
  CHECK(bottom.ok());

  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    MultiplicitySpec tri = testutil::random_triangle(rng, 10);
    const int nu = 2 + static_cast<int>(rng() % 9);
    const int n = 1 + static_cast<int>(rng() % nu);
    MonotoneReport r = check_monotone_in_kappa(tri, nu, n);
    CHECK(r.ok());
    REQUIRE(r.sequence.size() == static_cast<std::size_t>(nu) + 1);
    for (int kappa = 1; kappa <= nu; ++kappa)
      CHECK(r.sequence[kappa] <= r.sequence[kappa - 1]);
  }

  CHECK_THROWS_AS(check_monotone_in_kappa(pascal, 3, 4), std::invalid_argument);
}
