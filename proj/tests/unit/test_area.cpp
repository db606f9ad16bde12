#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "oracles.hpp"
#include "ouarea/area.hpp"
#include "ouarea/fbm.hpp"
#include "ouarea/csv.hpp"
#include "ouarea/kernels.hpp"
#include "ouarea/seeding.hpp"
#include "ouarea/tensor.hpp"

using namespace ouarea;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

PathGrid brownian(unsigned level, std::size_t modes, std::uint64_t seed, double hurst = 0.5) {
  return sample_qfbm(CovarianceSpec::power_law(modes, 2.0), hurst, level, 1.0, seed);
}

}  // namespace

TEST_CASE("phi", "[area][kernels]") {
  CHECK(phi(0.0) == 0.5);
  CHECK_THAT(phi(1.0), WithinRel(std::exp(-1.0), 1e-15));
  CHECK_THAT(phi(1.0), WithinRel(oracle::triangle_quadrature(1.0), 1e-12));
  CHECK_THAT(phi(50.0), WithinRel(49.0 / 2500, 1e-15));
  CHECK_THROWS_AS(phi(-1e-300), std::domain_error);
  double prev = phi(0.0);
  for (double x = 1e-6; x < 200; x *= 1.07) {
    const double v = phi(x);
    CHECK(v < prev);
    CHECK(v > 0.0);
    CHECK_THAT(v, WithinRel(static_cast<double>(oracle::triangle_kernel(x)), 2e-15));
    prev = v;
  }
  for (double x : {1e-4, 0.0999999, 0.1, 0.1000001})
    CHECK_THAT(phi(x), WithinRel(static_cast<double>(oracle::triangle_kernel(x)), 4e-15));
  CHECK_THAT(half_minus_phi(1e-8), WithinRel(1e-8 / 6 - 1e-16 / 24, 1e-15));
  for (double x : {1e-3, 0.05, 0.2, 3.0}) {
    const long double ref = 0.5L - oracle::triangle_kernel(x);
    CHECK_THAT(half_minus_phi(x), WithinRel(static_cast<double>(ref), 1e-13));
  }
}

TEST_CASE("psi and chi", "[area][kernels]") {
  CHECK(psi(0.0) == 1.0);
  CHECK(chi(0.0) == 1.0);
  CHECK_THAT(psi(1.0), WithinRel(0.3995764, 1e-6));
  CHECK_THAT(psi(1.0), WithinRel(oracle::rectangle_quadrature(1.0, 1), 1e-12));
  CHECK_THROWS_AS(psi(-1.0), std::domain_error);
  CHECK_THROWS_AS(chi(-1.0), std::domain_error);
  double prev = 1.0;
  for (double x = 1e-7; x < 300; x *= 1.1) {
    CHECK(psi(x) <= 1.0);
    CHECK(psi(x) < prev);
    prev = psi(x);
  }
}

TEST_CASE("cell kernels against 2-D quadrature", "[area][kernels]") {
  CHECK(cell_triangle(2.0, 3.0, 0.0) == 3.0);
  CHECK(cell_triangle(0.0, 3.0, 1.0) == 0.0);
  CHECK_THAT(cell_triangle(1, 1, 1.0), WithinRel(std::exp(-1.0), 1e-15));
  CHECK(cell_rectangle(2.0, 3.0, 1, 0.0) == 6.0);
  CHECK_THROWS(cell_rectangle(1, 1, 0, 1.0));
  for (double x : {1e-3, 0.3, 1.0, 4.0}) {
    CHECK_THAT(cell_triangle(1, 1, x), WithinRel(oracle::triangle_quadrature(x), 1e-10));
    for (std::size_t g : {1u, 2u, 3u, 7u}) {
      CHECK_THAT(cell_rectangle(1, 1, g, x), WithinRel(oracle::rectangle_quadrature(x, g), 1e-10));
      // one more cell of separation costs one factor e^{-x}
      CHECK_THAT(cell_rectangle(1, 1, g + 1, x), WithinRel(std::exp(-x) * cell_rectangle(1, 1, g, x), 1e-14));
    }
    CHECK_THAT(cell_rectangle(1, 1, 2, x), WithinRel(std::exp(-x) * cell_rectangle(1, 1, 1, x), 1e-14));
  }
}

TEST_CASE("area component: trivial windows", "[area]") {
  const PathGrid p = brownian(6, 2, 1);
  CHECK(area_component(p, 5.0, 0, 1, make_window(p, std::size_t{10}, std::size_t{10})) == 0.0);
  CHECK(area_component(p, 5.0, 0, 1, make_window(p, 0.25, 0.25)) == 0.0);
  const double x = 5.0 * p.step();
  CHECK_THAT(area_component(p, 5.0, 0, 1, {7, 8}),
             WithinRel(cell_triangle(increment(p, 0, 8), increment(p, 1, 8), x), 1e-15));
  CHECK_THROWS(make_window(p, 0.3, 0.5));
  CHECK_THROWS(make_window(p, 0.5, 0.25));
  CHECK_THROWS(make_window(p, std::size_t{10}, std::size_t{70}));
}

TEST_CASE("O(M) recursion equals the naive double sum", "[area]") {
  std::mt19937_64 rng(42);
  for (int c = 0; c < 40; ++c) {
    const unsigned level = 3 + c % 5;
    const PathGrid p = brownian(level, 3, 100 + c, c % 2 ? 0.4 : 0.5);
    std::uniform_int_distribution<std::size_t> pick(0, p.cell_count());
    std::size_t m0 = pick(rng), m1 = pick(rng);
    if (m0 > m1) std::swap(m0, m1);
    const double lambda = std::exp(std::uniform_real_distribution<double>(-3.0, 8.0)(rng));
    const std::size_t j = c % 3, k = (c / 3) % 3;
    const double fast = area_component(p, lambda, j, k, {m0, m1});
    const double slow = oracle::naive_area(p, lambda, j, k, m0, m1);
    INFO("case " << c << " lambda " << lambda);
    CHECK_THAT(fast, WithinAbs(slow, 1e-12 * std::max(1.0, std::abs(slow))));
  }
  const PathGrid p = brownian(6, 2, 9);
  CHECK_THAT(area_component(p, 5.0, 0, 1, {0, 64}), WithinRel(oracle::naive_area(p, 5.0, 0, 1, 0, 64), 1e-12));
}

TEST_CASE("area sweep returns every prefix window", "[area]") {
  const PathGrid p = brownian(5, 2, 3);
  const auto sweep = area_sweep(p, 7.0, 1, 0, 4, 30);
  REQUIRE(sweep.size() == 27);
  CHECK(sweep[0] == 0.0);
  for (std::size_t m = 4; m <= 30; ++m) CHECK(sweep[m - 4] == area_component(p, 7.0, 1, 0, {4, m}));
}

TEST_CASE("plain area", "[area]") {
  const PathGrid p = brownian(7, 2, 5);
  const auto w = make_window(p, std::size_t{16}, std::size_t{100});
  const double inc = p.value(1, 100) - p.value(1, 16);
  CHECK_THAT(plain_area_component(p, 1, 1, w), WithinRel(0.5 * inc * inc, 1e-12));
  CHECK_THAT(plain_area_component(p, 0, 1, {3, 4}),
             WithinRel(0.5 * increment(p, 0, 4) * increment(p, 1, 4), 1e-15));
  CHECK_THAT(area_component(p, 1e-8, 0, 1, w), WithinRel(plain_area_component(p, 0, 1, w), 1e-6));
  CHECK(area_component(p, 0.0, 0, 1, w) == Catch::Approx(plain_area_component(p, 0, 1, w)).epsilon(1e-13));
}

TEST_CASE("integration by parts: area = plain - drift", "[area]") {
  for (int c = 0; c < 30; ++c) {
    const PathGrid p = brownian(4 + c % 5, 2, 300 + c, c % 2 ? 0.4 : 0.5);
    const double lambda = std::exp(0.5 * c - 4.0);
    const WindowPair w{p.cell_count() / 8, p.cell_count()};
    const double a = area_component(p, lambda, 0, 1, w);
    const double rhs = plain_area_component(p, 0, 1, w) - drift_component(p, lambda, 0, 1, w);
    INFO("lambda " << lambda);
    CHECK_THAT(a, WithinAbs(rhs, 1e-10 * (1.0 + std::abs(a))));
  }
}

TEST_CASE("drift against nested quadrature", "[area]") {
  const PathGrid p = brownian(3, 2, 77);
  const double lambda = 6.0;
  const WindowPair w{1, 7};
  const double s = p.time(1);
  const auto x = [&](double r) { return eval_linear(p, 0, r) - eval_linear(p, 0, s); };
  const auto g = [&](double xi) {
    if (xi <= s) return 0.0;
    double acc = 0.0;
    for (std::size_t m = w.m0; m < w.m1; ++m) {
      const double a = p.time(m), b = std::min(p.time(m + 1), xi);
      if (b <= a) break;
      acc += oracle::integrate([&](double r) { return lambda * std::exp(-lambda * (xi - r)) * x(r); }, a, b, 4);
    }
    return acc;
  };
  double ref = 0.0;
  for (std::size_t m = w.m0 + 1; m <= w.m1; ++m)
    ref += increment(p, 1, m) / p.step() * oracle::integrate(g, p.time(m - 1), p.time(m), 4);
  CHECK_THAT(drift_component(p, lambda, 0, 1, w), WithinRel(ref, 1e-11));

  const InnerDriftProfile prof(p, lambda, 0, w);
  for (double xi : {0.125, 0.2, 0.31, 0.5, 0.6, 0.875}) CHECK_THAT(prof(xi), WithinAbs(g(xi), 1e-13));
  for (std::size_t m = 0; m <= w.cells(); ++m) CHECK(prof(s + m * p.step()) == prof.node(m));
  CHECK_THROWS(prof(0.0));
}

TEST_CASE("convolution integrals", "[area]") {
  const PathGrid unit = PathGrid::from_rows(1.0, {{0, 1}});
  CHECK_THAT(conv_integral_left(unit, 1.0, 0, {0, 1}), WithinRel(1 - std::exp(-1.0), 1e-15));
  CHECK_THAT(conv_integral_right(unit, 1.0, 0, {0, 1}), WithinRel(1 - std::exp(-1.0), 1e-15));
  const PathGrid p = brownian(6, 2, 12);
  CHECK(conv_integral_left(p, 3.0, 0, {9, 9}) == 0.0);
  CHECK(conv_integral_right(p, 3.0, 0, {9, 9}) == 0.0);
  CHECK_THAT(conv_integral_left(p, 1e-12, 0, {9, 40}), WithinAbs(p.value(0, 40) - p.value(0, 9), 1e-11));
  CHECK_THAT(conv_integral_right(p, 1e-12, 1, {9, 40}), WithinAbs(p.value(1, 40) - p.value(1, 9), 1e-11));

  const double lambda = 9.0;
  const double s = p.time(9), t = p.time(40);
  double left = 0.0, right = 0.0;
  for (std::size_t m = 10; m <= 40; ++m) {
    const double slope_j = increment(p, 0, m) / p.step(), slope_k = increment(p, 1, m) / p.step();
    left += oracle::integrate([&](double r) { return std::exp(-lambda * (t - r)) * slope_j; }, p.time(m - 1), p.time(m), 2);
    right += oracle::integrate([&](double r) { return std::exp(-lambda * (r - s)) * slope_k; }, p.time(m - 1), p.time(m), 2);
  }
  CHECK_THAT(conv_integral_left(p, lambda, 0, {9, 40}), WithinRel(left, 1e-12));
  CHECK_THAT(conv_integral_right(p, lambda, 1, {9, 40}), WithinRel(right, 1e-12));
}

TEST_CASE("chen residual", "[area]") {
  const PathGrid p = brownian(7, 3, 21, 0.4);
  CHECK_THAT(chen_residual(p, 20.0, 0, 1, 10, 10, 90), WithinAbs(0.0, 1e-14));
  CHECK_THAT(chen_residual(p, 20.0, 0, 1, 10, 90, 90), WithinAbs(0.0, 1e-14));
  CHECK_THROWS(chen_residual(p, 20.0, 0, 1, 10, 95, 90));
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::size_t> pick(0, 128);
  for (int c = 0; c < 50; ++c) {
    std::size_t a[3] = {pick(rng), pick(rng), pick(rng)};
    std::sort(a, a + 3);
    const double lambda = std::exp(std::uniform_real_distribution<double>(-2.0, 9.0)(rng));
    const double whole = area_component(p, lambda, c % 3, (c + 1) % 3, {a[0], a[2]});
    CHECK(std::abs(chen_residual(p, lambda, c % 3, (c + 1) % 3, a[0], a[1], a[2])) <= 1e-10 * (1 + std::abs(whole)));
  }
  // classical Chen relation for plain areas
  const double jump = (p.value(0, 50) - p.value(0, 20)) * (p.value(1, 110) - p.value(1, 50));
  const double lhs = plain_area_component(p, 0, 1, {20, 110}) - plain_area_component(p, 0, 1, {50, 110}) -
                     plain_area_component(p, 0, 1, {20, 50});
  CHECK_THAT(lhs, WithinAbs(jump, 1e-13));
  CHECK_THAT(chen_residual(p, 0.0, 0, 1, 20, 50, 110), WithinAbs(0.0, 1e-13));
}

TEST_CASE("ito stratonovich correction", "[area]") {
  CHECK(ito_stratonovich_correction(0, 1, 0.0, 1.0) == 0.0);
  CHECK(ito_stratonovich_correction(2, 2, 0.0, 1.0) == 0.5);
  CHECK(ito_stratonovich_correction(2, 2, 0.3, 0.3) == 0.0);
  CHECK_THROWS(ito_stratonovich_correction(2, 2, 0.5, 0.3));
}

TEST_CASE("shift covariance is exact", "[area]") {
  const PathGrid p = brownian(8, 2, 31, 0.4);
  for (std::size_t tau : {1u, 17u, 100u, 200u}) {
    const PathGrid s = shift_cells(p, tau);
    for (std::size_t m0 : {0u, 5u, 30u})
      for (std::size_t len : {1u, 13u, 40u}) {
        if (m0 + len + tau > 256) continue;
        CHECK(area_component(s, 40.0, 0, 1, {m0, m0 + len}) == area_component(p, 40.0, 0, 1, {m0 + tau, m0 + len + tau}));
        CHECK(plain_area_component(s, 1, 0, {m0, m0 + len}) == plain_area_component(p, 1, 0, {m0 + tau, m0 + len + tau}));
      }
  }
}

TEST_CASE("dyadic window family", "[area]") {
  const auto w = dyadic_windows(6, 4);
  CHECK(w.size() == 30);
  CHECK(w.front() == WindowPair{0, 32});
  CHECK(w.back() == WindowPair{60, 64});
  CHECK_THROWS(dyadic_windows(3, 4));
}

TEST_CASE("scaled tensor and norm", "[area][tensor]") {
  const PathGrid p = brownian(6, 3, 41);
  const WindowPair w{8, 40};
  {
    const auto cfg = SpectrumConfig::explicit_list({1.0}, 0.7);
    const auto cov = CovarianceSpec::explicit_weights({1.0, 1.0, 1.0});
    const auto t = scaled_tensor(p, cfg, cov, w);
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) CHECK(t.scaled(0, j, k) == t.unscaled(0, j, k));
  }
  const auto cfg = SpectrumConfig::dirichlet_laplacian(5, 0.0);
  const auto cov = CovarianceSpec::power_law(3, 2.0);
  const auto t = scaled_tensor(p, cfg, cov, w, 3);
  double sum = 0.0;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) {
        CHECK(t.unscaled(i, j, k) == area_component(p, cfg, i, j, k, w));
        CHECK_THAT(t.scaled(i, j, k), WithinRel(cov.amplitude(j) * cov.amplitude(k) * t.unscaled(i, j, k), 1e-15));
        sum += cov.weight(j) * cov.weight(k) * t.unscaled(i, j, k) * t.unscaled(i, j, k);
      }
  CHECK_THAT(hs_norm(t), WithinRel(std::sqrt(sum), 1e-13));
  CHECK(scaled_tensor(p, cfg, cov, w, 1).unscaled_values() == t.unscaled_values());

  const auto k3 = cfg.with_kappa(0.3);
  const auto t3 = scaled_tensor(p, k3, cov, w);
  CHECK_THAT(t3.weight(2, 1, 0), WithinRel(cov.amplitude(1) * std::pow(cfg.eigenvalue(2), -0.3), 1e-15));

  const auto one = scaled_tensor(p, SpectrumConfig::explicit_list({4.0}, 0.5), CovarianceSpec::explicit_weights({0.25}), w);
  CHECK_THAT(one.scaled(0, 0, 0), WithinRel(0.25 * 0.5 * area_component(p, 4.0, 0, 0, w), 1e-15));
  CHECK_THAT(hs_norm(one), WithinRel(std::abs(one.scaled(0, 0, 0)), 1e-15));

  const auto zero = scaled_tensor(p, cfg, cov, {12, 12});
  CHECK(hs_norm(zero) == 0.0);
  CHECK_THROWS(scaled_tensor(p, cfg, CovarianceSpec::power_law(4, 2.0), w));

  std::vector<double> vals(t.unscaled_values());
  for (double& v : vals) v *= -3.0;
  const AreaTensor scaled3(w, t.s(), t.t(), 6, 0.0, {cfg.eigenvalues().begin(), cfg.eigenvalues().end()},
                           {cov.amplitude(0), cov.amplitude(1), cov.amplitude(2)}, vals);
  CHECK_THAT(hs_norm(scaled3), WithinRel(3.0 * hs_norm(t), 1e-14));
  CHECK_THAT(hs_distance(scaled3, t), WithinRel(4.0 * hs_norm(t), 1e-14));
}

TEST_CASE("batched tensors match single windows", "[area][tensor]") {
  const PathGrid p = brownian(7, 2, 51, 0.4);
  const auto cfg = SpectrumConfig::dirichlet_laplacian(4);
  const auto cov = CovarianceSpec::power_law(2, 2.0);
  const auto windows = dyadic_windows(7, 3);
  const auto batch = scaled_tensors(p, cfg, cov, windows, 2);
  for (std::size_t w = 0; w < windows.size(); ++w)
    CHECK(batch[w].unscaled_values() == scaled_tensor(p, cfg, cov, windows[w]).unscaled_values());
}

TEST_CASE("tensor csv", "[area][tensor]") {
  const PathGrid p = PathGrid::from_rows(1.0, {{0, 1, 3}});
  const auto t = scaled_tensor(p, SpectrumConfig::explicit_list({1.0}, 0.0), CovarianceSpec::explicit_weights({4.0}), {0, 2});
  std::ostringstream os;
  write_tensor_csv(t, os);
  const double a = area_component(p, 1.0, 0, 0, {0, 2});
  CHECK(os.str() == "i,j,k,s,t,unscaled,scaled\n0,0,0,0,1," + csv::format_number(a) + "," +
                        csv::format_number(4.0 * a) + "\n");
}

TEST_CASE("diagonal mean and exact second moment by Monte Carlo", "[area][mc]") {
  const auto cfg = SpectrumConfig::dirichlet_laplacian(3, 0.3);
  const auto cov = CovarianceSpec::power_law(2, 2.0);
  const unsigned level = 5;
  const FbmSampler sampler(0.5, level, 1.0);
  const WindowPair w{0, 16};
  const std::size_t n = 6000;
  std::vector<double> diag(n), off(n), norm2(n);
  for (std::size_t q = 0; q < n; ++q) {
    const PathGrid p = sample_qfbm(sampler, 2, derive_seed(77, q));
    diag[q] = area_component(p, cfg, 1, 0, 0, w);
    off[q] = area_component(p, cfg, 1, 0, 1, w);
    const double h = hs_norm(scaled_tensor(p, cfg, cov, w));
    norm2[q] = h * h;
  }
  const auto stats = [](const std::vector<double>& v) {
    double m = 0, ss = 0;
    for (double x : v) m += x;
    m /= v.size();
    for (double x : v) ss += (x - m) * (x - m);
    return std::pair{m, std::sqrt(ss / (v.size() - 1) / v.size())};
  };
  const double step = 1.0 / 32;
  const auto [md, sd] = stats(diag);
  CHECK(std::abs(md - 0.5 * phi(cfg.eigenvalue(1) * step)) <= 3 * sd);
  const auto [mo, so] = stats(off);
  CHECK(std::abs(mo) <= 3 * so);
  const auto [mn, sn] = stats(norm2);
  const double exact = oracle::expected_tensor_norm_squared({cfg.eigenvalues().begin(), cfg.eigenvalues().end()},
                                                            {1.0, 0.25}, 0.3, step, 16);
  CHECK(std::abs(mn - exact) <= 3 * sn);
}
