#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "gpc/distributions.hpp"
#include "gpc/random.hpp"
#include "gpc/spd.hpp"
#include "gpc/weights.hpp"

using namespace gpc;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("philox stream matches reference vectors") {
  // First eight outputs of Philox4x64-10 for two keys, frozen from an
  // independent implementation (numpy.random.Philox).
  RandomStream a(0, 0);
  const std::uint64_t expected_a[8] = {
      0x02f4ba6408e4d89bull, 0x3dd62b0b9ca8c5b2ull, 0x1c8667a55d902e79ull,
      0x907d7a052fd5b4dcull, 0x809bf322883987c3ull, 0x471128b9e807f7ddull,
      0xf250ba0dbec065b7ull, 0xfc6ed66767a457bcull};
  for (auto v : expected_a) CHECK(a.next_u64() == v);

  RandomStream b(42, 7);
  const std::uint64_t expected_b[8] = {
      0xa64064f34e84b9a3ull, 0xe287959a866a08fdull, 0x8dc181f009b96c03ull,
      0xf3f6001d4fa83454ull, 0x69c633ee791df6b3ull, 0x89327f7a8f0127a4ull,
      0x1ed8260458996ff6ull, 0x4299f7433fb1683eull};
  for (auto v : expected_b) CHECK(b.next_u64() == v);
}

TEST_CASE("streams with equal keys replay; distinct ids diverge") {
  RandomStream a(123, 5), b(123, 5), c(123, 6);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 1000; ++i) {
    std::uint64_t va = a.next_u64();
    all_equal = all_equal && (va == b.next_u64());
    any_diff = any_diff || (va != c.next_u64());
  }
  CHECK(all_equal);
  CHECK(any_diff);
  CHECK(a.position() == 1000);
}

TEST_CASE("uniform doubles live in their half-open ranges") {
  RandomStream rng(7, 0);
  for (int i = 0; i < 10000; ++i) {
    double u = rng.next_double();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    double v = rng.next_open_double();
    CHECK(v > 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("logsumexp basics") {
  std::vector<double> two_zero{0.0, 0.0};
  CHECK(logsumexp(two_zero) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  std::vector<double> with_ninf{-kInf, 0.0};
  CHECK(logsumexp(with_ninf) == doctest::Approx(0.0));
  std::vector<double> large{1000.0, 1000.0};
  CHECK(logsumexp(large) ==
        doctest::Approx(1000.0 + std::log(2.0)).epsilon(1e-12));
  std::vector<double> all_ninf{-kInf, -kInf};
  CHECK(logsumexp(all_ninf) == -kInf);
  CHECK_THROWS_AS(logsumexp(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("logsumexp shift invariance") {
  RandomStream rng(11, 0);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> v(20);
    for (auto& x : v) x = 40.0 * rng.next_double() - 20.0;
    double c = 100.0 * rng.next_double() - 50.0;
    std::vector<double> shifted = v;
    for (auto& x : shifted) x += c;
    CHECK(logsumexp(shifted) ==
          doctest::Approx(logsumexp(v) + c).epsilon(1e-12));
  }
}

TEST_CASE("normalize_log_weights against the naive oracle") {
  auto r = normalize_log_weights(LogWeights({0.0, 0.0}));
  CHECK(r.weights[0] == doctest::Approx(0.5));
  CHECK(r.log_normalizer == doctest::Approx(std::log(2.0)));

  auto r2 = normalize_log_weights(LogWeights({std::log(1.0), std::log(4.0)}));
  CHECK(r2.weights[0] == doctest::Approx(0.2));
  CHECK(r2.weights[1] == doctest::Approx(0.8));

  // Brute-force exp-then-sum oracle on a random 100-vector with moderate
  // entries so the naive route cannot overflow.
  RandomStream rng(13, 0);
  std::vector<double> lw(100);
  for (auto& x : lw) x = 10.0 * rng.next_double() - 5.0;
  std::vector<double> naive(100);
  double total = 0.0;
  for (int i = 0; i < 100; ++i) total += std::exp(lw[i]);
  for (int i = 0; i < 100; ++i) naive[i] = std::exp(lw[i]) / total;
  auto got = normalize_log_weights(LogWeights(lw));
  double sum = 0.0;
  for (int i = 0; i < 100; ++i) {
    CHECK(got.weights[i] == doctest::Approx(naive[i]).epsilon(1e-12));
    sum += got.weights[i];
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(normalize_log_weights(LogWeights({-kInf, -kInf})),
                  DegenerateWeightsError);
}

TEST_CASE("ess formula and bounds") {
  std::vector<double> uniform4(4, 0.25);
  CHECK(ess(uniform4) == doctest::Approx(4.0));
  std::vector<double> degenerate{1.0, 0.0, 0.0, 0.0};
  CHECK(ess(degenerate) == doctest::Approx(1.0));
  std::vector<double> half{0.5, 0.5, 0.0, 0.0};
  CHECK(ess(half) == doctest::Approx(2.0));

  std::vector<double> unnormalized{0.5, 0.6};
  CHECK_THROWS_AS(ess(unnormalized), std::invalid_argument);

  // Permutation invariance and the [1, M] bounds on random weights.
  RandomStream rng(17, 0);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> w(32);
    double sum = 0.0;
    for (auto& x : w) {
      x = rng.next_open_double();
      sum += x;
    }
    for (auto& x : w) x /= sum;
    double e = ess(w);
    CHECK(e >= 1.0);
    CHECK(e <= 32.0);
    std::vector<double> perm = w;
    std::reverse(perm.begin(), perm.end());
    CHECK(ess(perm) == doctest::Approx(e).epsilon(1e-12));
  }
}

namespace {

// Independent cumulative-sum quantile: build the full sorted CDF, scan.
double brute_force_quantile(std::vector<double> values,
                            std::vector<double> weights, double p) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  double cum = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    cum += weights[order[i]];
    if (cum >= p) return values[order[i]];
  }
  return values[order.back()];
}

}  // namespace

TEST_CASE("weighted_quantile examples") {
  std::vector<double> v{1.0, 2.0, 3.0};
  std::vector<double> u(3, 1.0 / 3.0);
  CHECK(weighted_quantile(v, u, 0.5) == 2.0);
  CHECK(weighted_quantile(v, u, 0.0) == 1.0);
  std::vector<double> w{0.1, 0.2, 0.7};
  CHECK(weighted_quantile(v, w, 0.25) == 2.0);

  std::vector<double> with_nan{1.0, std::nan(""), 3.0};
  CHECK_THROWS_AS(weighted_quantile(with_nan, u, 0.5), std::invalid_argument);
}

TEST_CASE("weighted_quantile matches the brute-force oracle on random cases") {
  RandomStream rng(19, 0);
  for (int rep = 0; rep < 1000; ++rep) {
    int n = 1 + static_cast<int>(uniform_index(40, rng));
    std::vector<double> values(n), weights(n);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      values[i] = std::floor(20.0 * rng.next_double());  // ties on purpose
      weights[i] = rng.next_open_double();
      sum += weights[i];
    }
    for (auto& w : weights) w /= sum;
    double p = rng.next_double();
    CHECK(weighted_quantile(values, weights, p) ==
          brute_force_quantile(values, weights, p));
  }
}

TEST_CASE("weighted_quantile is monotone in p and reduces to empirical") {
  RandomStream rng(23, 0);
  std::vector<double> values(25), uniform(25, 1.0 / 25);
  for (auto& v : values) v = rng.next_double();
  double prev = -kInf;
  for (double p = 0.0; p <= 1.0; p += 0.01) {
    double q = weighted_quantile(values, uniform, p);
    CHECK(q >= prev);
    prev = q;
  }
  // Uniform weights equal the left-continuous empirical quantile.
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  for (double p : {0.04, 0.2, 0.5, 0.76, 1.0}) {
    std::size_t j = 0;
    double cum = 0.0;
    while (j < sorted.size()) {
      cum += 1.0 / 25;
      if (cum >= p) break;
      ++j;
    }
    CHECK(weighted_quantile(values, uniform, p) == sorted[std::min(j, sorted.size() - 1)]);
  }
}

TEST_CASE("distribution moments match analytic values") {
  RandomStream rng(29, 0);
  const int n = 1000000;

  SUBCASE("inverse gamma mean b/(a-1)") {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += inverse_gamma(3.0, 2.0, rng);
    CHECK(acc / n == doctest::Approx(1.0).epsilon(0.01));
  }

  SUBCASE("inverse gaussian mean and variance") {
    double acc = 0.0, acc2 = 0.0;
    for (int i = 0; i < n; ++i) {
      double x = inverse_gaussian(2.0, 5.0, rng);
      acc += x;
      acc2 += x * x;
    }
    double mean = acc / n;
    double var = acc2 / n - mean * mean;
    CHECK(mean == doctest::Approx(2.0).epsilon(0.005));
    CHECK(var == doctest::Approx(1.6).epsilon(0.03125));  // mu^3/lambda
  }

  SUBCASE("standard normal moments") {
    double acc = 0.0, acc2 = 0.0;
    for (int i = 0; i < n; ++i) {
      double z = standard_normal(rng);
      acc += z;
      acc2 += z * z;
    }
    CHECK(acc / n == doctest::Approx(0.0).epsilon(0.01));
    CHECK(acc2 / n == doctest::Approx(1.0).epsilon(0.01));
  }

  SUBCASE("exponential mean 1/rate") {
    double acc = 0.0;
    for (int i = 0; i < 200000; ++i) acc += exponential_rate(4.0, rng);
    CHECK(acc / 200000 == doctest::Approx(0.25).epsilon(0.02));
  }

  SUBCASE("mvn with identity factor has unit variances") {
    std::vector<double> eye{1.0, 0.0, 0.0, 1.0};
    CholeskyFactor ident(2, eye);
    std::vector<double> mean{0.0, 0.0};
    double acc0 = 0.0, acc1 = 0.0;
    const int draws = 500000;
    for (int i = 0; i < draws; ++i) {
      auto x = multivariate_normal(mean, ident, rng);
      acc0 += x[0] * x[0];
      acc1 += x[1] * x[1];
    }
    CHECK(acc0 / draws == doctest::Approx(1.0).epsilon(0.01));
    CHECK(acc1 / draws == doctest::Approx(1.0).epsilon(0.01));
  }

  SUBCASE("uniform_index stays in range and hits all cells") {
    std::vector<int> counts(10, 0);
    for (int i = 0; i < 100000; ++i) ++counts[uniform_index(10, rng)];
    for (int c : counts) CHECK(c > 9000);
  }
}

TEST_CASE("distribution parameter validation") {
  RandomStream rng(31, 0);
  CHECK_THROWS_AS(inverse_gamma(-1.0, 2.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(inverse_gaussian(0.0, 1.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(exponential_rate(0.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(uniform_index(0, rng), std::invalid_argument);
}

TEST_CASE("cholesky by hand and by reconstruction") {
  SUBCASE("identity") {
    std::vector<double> eye{1, 0, 0, 0, 1, 0, 0, 0, 1};
    auto l = cholesky_dense(3, eye);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(l.lower(i, j) == (i == j ? 1.0 : 0.0));
  }

  SUBCASE("2x2 hand factor") {
    std::vector<double> a{4, 2, 2, 3};
    auto l = cholesky_dense(2, a);
    CHECK(l.lower(0, 0) == doctest::Approx(2.0));
    CHECK(l.lower(1, 0) == doctest::Approx(1.0));
    CHECK(l.lower(1, 1) == doctest::Approx(std::sqrt(2.0)));
    CHECK(l.lower(0, 1) == 0.0);
  }

  SUBCASE("random 8x8 reconstructs within 1e-10") {
    RandomStream rng(37, 0);
    const int k = 8;
    std::vector<double> g(k * k);
    for (auto& v : g) v = standard_normal(rng);
    std::vector<double> a(k * k, 0.0);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        double acc = 0.0;
        for (int m = 0; m < k; ++m) acc += g[i * k + m] * g[j * k + m];
        a[i * k + j] = acc + (i == j ? 0.5 : 0.0);
      }
    SpdMatrix spd(k, a);
    const auto& l = spd.factor();
    double num = 0.0, den = 0.0;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        double acc = 0.0;
        for (int m = 0; m < k; ++m) acc += l.lower(i, m) * l.lower(j, m);
        num += (acc - a[i * k + j]) * (acc - a[i * k + j]);
        den += a[i * k + j] * a[i * k + j];
      }
    CHECK(std::sqrt(num / den) < 1e-10);

    // spd_solve residual check
    std::vector<double> b(k);
    for (auto& v : b) v = standard_normal(rng);
    auto x = spd_solve(spd, b);
    double rnorm = 0.0, bnorm = 0.0;
    for (int i = 0; i < k; ++i) {
      double acc = 0.0;
      for (int j = 0; j < k; ++j) acc += a[i * k + j] * x[j];
      rnorm += (acc - b[i]) * (acc - b[i]);
      bnorm += b[i] * b[i];
    }
    CHECK(std::sqrt(rnorm) <= 1e-8 * std::sqrt(bnorm));
  }

  SUBCASE("non-spd names the failing pivot") {
    std::vector<double> a{1, 0, 0, -2};  // pivot 1 fails
    try {
      cholesky_dense(2, a);
      FAIL("expected NotSpdError");
    } catch (const NotSpdError& e) {
      CHECK(e.pivot() == 1);
      CHECK(std::string(e.what()).find("pivot 1") != std::string::npos);
    }
    CHECK_THROWS_AS(SpdMatrix(2, std::vector<double>{1, 2, 3, 4}),
                    std::invalid_argument);  // asymmetric
  }
}

TEST_CASE("mix_seed is stable and spreads") {
  CHECK(mix_seed(1, 0) != mix_seed(1, 1));
  CHECK(mix_seed(1, 0) != mix_seed(2, 0));
  CHECK(mix_seed(99, 3) == mix_seed(99, 3));
}
