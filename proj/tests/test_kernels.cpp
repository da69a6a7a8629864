// Equivalence of the dispatched, scalar, and AVX2 kernels against naive
// term-by-term oracles.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sdutm/kernels.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace sdutm;
using namespace sdutm::kernels;

namespace {

std::mt19937 rng(99173);

std::vector<Cx> random_cx(int n, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<Cx> v(static_cast<size_t>(n));
  for (auto& z : v) z = Cx{u(rng), u(rng)};
  return v;
}

std::vector<double> random_re(int n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(static_cast<size_t>(n));
  for (auto& x : v) x = u(rng);
  return v;
}

// Naive oracles: one libm call per term, no recurrences.
std::vector<Cx> naive_sin_sum(const std::vector<Cx>& w, const std::vector<double>& theta) {
  std::vector<Cx> out(theta.size());
  for (size_t t = 0; t < theta.size(); ++t) {
    Cx acc{0.0, 0.0};
    for (size_t j = 1; j <= w.size(); ++j) acc += w[j - 1] * std::sin(double(j) * theta[t]);
    out[t] = acc;
  }
  return out;
}

std::vector<Cx> naive_cos_sum(const std::vector<Cx>& w, const std::vector<double>& theta) {
  std::vector<Cx> out(theta.size());
  for (size_t t = 0; t < theta.size(); ++t) {
    Cx acc{0.0, 0.0};
    for (size_t j = 0; j < w.size(); ++j) acc += w[j] * std::cos(double(j) * theta[t]);
    out[t] = acc;
  }
  return out;
}

std::vector<Cx> naive_corr(const std::vector<double>& w, const std::vector<Cx>& phi,
                           int nout) {
  std::vector<Cx> out(static_cast<size_t>(nout));
  for (int n = 0; n < nout; ++n) {
    Cx acc{0.0, 0.0};
    for (int m = 0; m < static_cast<int>(w.size()) && n + m < static_cast<int>(phi.size());
         ++m)
      acc += w[static_cast<size_t>(m)] * phi[static_cast<size_t>(n + m)];
    out[static_cast<size_t>(n)] = acc;
  }
  return out;
}

double max_diff(const std::vector<Cx>& a, const std::vector<Cx>& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double weight_scale(const std::vector<Cx>& w) {
  double s = 0.0;
  for (const auto& z : w) s += std::abs(z);
  return std::max(s, 1.0);
}

} // namespace

TEST_CASE("scalar trig sums match the naive oracle across resync boundaries") {
  // 700 terms crosses the 256-step resynchronization twice.
  const auto w = random_cx(700);
  const auto theta = random_re(13, -3.0, 3.0);
  std::vector<Cx> out(theta.size());

  scalar::trig_sin_sum(w.data(), 700, theta.data(), 13, out.data());
  CHECK(max_diff(out, naive_sin_sum(w, theta)) < 1e-12 * weight_scale(w));

  scalar::trig_cos_sum(w.data(), 700, theta.data(), 13, out.data());
  CHECK(max_diff(out, naive_cos_sum(w, theta)) < 1e-12 * weight_scale(w));
}

TEST_CASE("scalar corr_trunc matches the naive oracle including truncation") {
  const auto w = random_re(37, -1.0, 1.0);
  const auto phi = random_cx(50);
  for (int nout : {1, 20, 50, 60}) {
    std::vector<Cx> out(static_cast<size_t>(nout));
    scalar::corr_trunc(w.data(), 37, phi.data(), 50, out.data(), nout);
    CHECK(max_diff(out, naive_corr(std::vector<double>(w.begin(), w.end()), phi, nout)) <
          1e-13 * 37);
  }
}

TEST_CASE("dispatched kernels agree with the scalar reference") {
  const auto w = random_cx(311);
  const auto theta = random_re(9, -2.5, 2.5);
  std::vector<Cx> ref(theta.size()), got(theta.size());

  scalar::trig_sin_sum(w.data(), 311, theta.data(), 9, ref.data());
  trig_sin_sum(w.data(), 311, theta.data(), 9, got.data());
  CHECK(max_diff(ref, got) < 1e-12 * weight_scale(w));

  scalar::trig_cos_sum(w.data(), 311, theta.data(), 9, ref.data());
  trig_cos_sum(w.data(), 311, theta.data(), 9, got.data());
  CHECK(max_diff(ref, got) < 1e-12 * weight_scale(w));
}

#ifdef SDUTM_HAVE_AVX2
TEST_CASE("avx2 kernels match scalar on machines that have them") {
  if (!avx2_available()) return;
  const auto w = random_cx(523);
  const auto theta = random_re(11, -3.0, 3.0); // 8 vectorized + 3 tail lanes
  std::vector<Cx> ref(theta.size()), got(theta.size());

  scalar::trig_sin_sum(w.data(), 523, theta.data(), 11, ref.data());
  avx2::trig_sin_sum(w.data(), 523, theta.data(), 11, got.data());
  CHECK(max_diff(ref, got) < 1e-12 * weight_scale(w));

  scalar::trig_cos_sum(w.data(), 523, theta.data(), 11, ref.data());
  avx2::trig_cos_sum(w.data(), 523, theta.data(), 11, got.data());
  CHECK(max_diff(ref, got) < 1e-12 * weight_scale(w));

  const auto cw = random_re(41, -1.0, 1.0);
  const auto phi = random_cx(64);
  for (int nout : {5, 30, 64, 70}) {
    std::vector<Cx> r(static_cast<size_t>(nout)), g(static_cast<size_t>(nout));
    scalar::corr_trunc(cw.data(), 41, phi.data(), 64, r.data(), nout);
    avx2::corr_trunc(cw.data(), 41, phi.data(), 64, g.data(), nout);
    CHECK(max_diff(r, g) < 1e-12 * 41);
  }
}
#endif

TEST_CASE("force_level pins dispatch and clears again") {
  force_level(SimdLevel::Scalar);
  CHECK(active_level() == SimdLevel::Scalar);
  clear_forced_level();
  if (avx2_available()) {
    force_level(SimdLevel::Avx2);
    CHECK(active_level() == SimdLevel::Avx2);
    clear_forced_level();
  } else {
    CHECK_THROWS_AS(force_level(SimdLevel::Avx2), SolverError);
  }
}

TEST_CASE("kernels handle empty inputs") {
  std::vector<Cx> out(3, Cx{7.0, 7.0});
  const double theta[3] = {0.1, 0.2, 0.3};
  trig_sin_sum(nullptr, 0, theta, 3, out.data());
  for (const auto& z : out) CHECK(std::abs(z) == 0.0);

  const double w[2] = {1.0, 2.0};
  const Cx phi[2] = {Cx{1.0, 0.0}, Cx{2.0, 0.0}};
  std::vector<Cx> o2(4, Cx{9.0, 9.0});
  corr_trunc(w, 2, phi, 2, o2.data(), 4);
  CHECK(o2[0] == Cx{5.0, 0.0});  // 1*1 + 2*2
  CHECK(o2[1] == Cx{2.0, 0.0});  // 1*2 (truncated)
  CHECK(std::abs(o2[2]) == 0.0); // fully truncated
  CHECK(std::abs(o2[3]) == 0.0);
}
