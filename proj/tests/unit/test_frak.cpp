#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "ouarea/area.hpp"
#include "ouarea/fbm.hpp"
#include "ouarea/frak.hpp"
#include "ouarea/seeding.hpp"
#include "ouarea/statistics.hpp"

using namespace ouarea;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

FracQuadConfig with_alpha(double a) {
  FracQuadConfig fq;
  fq.alpha = a;
  return fq;
}

// Left derivative of sum_m c_m (r - a_m)_+ from s, exact: every hinge
// contributes c_m (xi - a_m)_+^{1-alpha} / Gamma(2 - alpha).
double hinge_left(const std::vector<double>& a, const std::vector<double>& c, double xi, double alpha) {
  double sum = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m)
    if (xi > a[m]) sum += c[m] * std::pow(xi - a[m], 1.0 - alpha);
  return sum / std::tgamma(2.0 - alpha);
}

}  // namespace

TEST_CASE("config", "[frak]") {
  CHECK_THAT(FracQuadConfig::default_alpha(0.45), WithinRel(0.55 + 0.6 * 0.35, 1e-15));
  CHECK(FracQuadConfig::for_beta(0.45).alpha == FracQuadConfig::default_alpha(0.45));
  FracQuadConfig fq = with_alpha(0.3);
  CHECK_THROWS(fq.validate_for(0.6));
  CHECK_NOTHROW(fq.validate_for(0.75));
  fq.points = 7;
  CHECK_THROWS(fq.validate());
  CHECK_THROWS(with_alpha(1.0).validate());
  CHECK_THROWS(with_alpha(0.0).validate());
  const auto r = FracQuadConfig{}.refined();
  CHECK(r.level == 20);
  CHECK(r.points == 14);
  FracQuadConfig top;
  top.points = 20;
  CHECK(top.refined().points == 20);
}

TEST_CASE("left derivative: closed forms", "[frak]") {
  for (double a : {0.2, 0.5, 0.8}) {
    const auto fq = with_alpha(a);
    CHECK_THAT(frac_deriv_left([](double) { return 2.0; }, 0.0, 0.5, fq),
               WithinRel(2.0 * std::pow(0.5, -a) / std::tgamma(1 - a), 1e-13));
    for (double g : {0.6, 1.0, 2.0, 3.5}) {
      const double s = 0.25, xi = 1.1;
      const double exact = std::tgamma(g + 1) / std::tgamma(g + 1 - a) * std::pow(xi - s, g - a);
      INFO("alpha " << a << " gamma " << g);
      // non-integer g is singular at r = s, where the mesh is not graded
      CHECK_THAT(frac_deriv_left([&](double r) { return std::pow(r - s, g); }, s, xi, fq),
                 WithinRel(exact, std::floor(g) != g ? 1e-5 : 1e-8));
    }
  }
  CHECK_THAT(frac_deriv_left([](double r) { return r - 1.0; }, 1.0, 2.0, with_alpha(0.5)),
             WithinRel(2.0 / std::sqrt(std::numbers::pi), 1e-10));
  CHECK_THROWS(frac_deriv_left([](double r) { return r; }, 0.5, 0.5, with_alpha(0.5)));
  for (double a : {0.3, 0.7}) {
    const auto coarse = with_alpha(a);
    FracQuadConfig fine = coarse;
    fine.level *= 2;
    const auto f = [](double r) { return std::sin(3.0 * r) + r * r; };
    const double c = frac_deriv_left(f, 0.1, 0.9, coarse), d = frac_deriv_left(f, 0.1, 0.9, fine);
    CHECK(std::abs(c - d) < 1e-6 * std::abs(d));
    const double rc = frac_deriv_right(f, 0.9, 0.1, coarse), rd = frac_deriv_right(f, 0.9, 0.1, fine);
    CHECK(std::abs(rc - rd) < 1e-6 * std::abs(rd));
  }
}

TEST_CASE("right derivative: closed forms", "[frak]") {
  for (double a : {0.2, 0.5, 0.8}) {
    const auto fq = with_alpha(a);
    for (double L : {0.01, 0.3, 1.0}) {
      CHECK_THAT(frac_deriv_right([](double r) { return r; }, 1.0, 1.0 - L, fq),
                 WithinRel(-std::pow(L, a) / std::tgamma(a + 1), 1e-8));
      CHECK(frac_deriv_right([](double) { return 7.0; }, 1.0, 1.0 - L, fq) == 0.0);
      for (double g : {0.6, 1.5, 2.0, 3.0}) {
        const double b = 1.0 - a;
        const double exact = std::tgamma(g + 1) / std::tgamma(g + 1 - b) * std::pow(L, g - b);
        CHECK_THAT(frac_deriv_right([&](double r) { return std::pow(1.0 - r, g); }, 1.0, 1.0 - L, fq),
                   WithinRel(exact, std::floor(g) != g ? 1e-5 : 1e-8));
      }
    }
  }
  CHECK_THROWS(frac_deriv_right([](double r) { return r; }, 0.5, 0.7, with_alpha(0.5)));
}

TEST_CASE("piecewise-linear functions with node spacing", "[frak]") {
  const double s = 0.0, h = 1.0 / 16;
  std::vector<double> a, c;
  for (int m = 0; m < 16; ++m) {
    a.push_back(m * h);
    c.push_back(std::sin(3.0 * m + 1.0));
  }
  const auto f = [&](double r) {
    double v = 0.0;
    for (std::size_t m = 0; m < a.size(); ++m) v += c[m] * std::max(0.0, r - a[m]);
    return v;
  };
  for (double alpha : {0.3, 0.65}) {
    const auto fq = with_alpha(alpha);
    for (double xi : {0.03, 0.0625, 0.4, 0.71, 1.0}) {
      const double exact = hinge_left(a, c, xi, alpha);
      INFO("xi " << xi);
      CHECK_THAT(frac_deriv_left(f, s, xi, fq, h), WithinAbs(exact, 1e-10 * (1 + std::abs(exact))));
    }
  }
}

TEST_CASE("integration by parts: x dx over the unit interval", "[frak]") {
  for (double alpha : {0.4, 0.6}) {
    const auto fq = with_alpha(alpha);
    const auto outer = outer_rule(0.0, 1.0, 0.25, fq);
    double sum = 0.0;
    for (std::size_t q = 0; q < outer.nodes.size(); ++q) {
      const double xi = outer.nodes[q];
      sum += outer.weights[q] * frac_deriv_left([](double r) { return r; }, 0.0, xi, fq) *
             frac_deriv_right([](double r) { return r; }, 1.0, xi, fq);
    }
    CHECK_THAT(sum, WithinRel(-0.5, 1e-4));
  }
}

TEST_CASE("outer rule integrates singular endpoint weights", "[frak]") {
  const FracQuadConfig fq;
  const auto outer = outer_rule(0.25, 0.75, 0.125, fq);
  CHECK(outer.nodes.size() == 4 * 2 * 16 * 12);
  double len = 0.0, sing = 0.0;
  for (std::size_t q = 0; q < outer.nodes.size(); ++q) {
    len += outer.weights[q];
    sing += outer.weights[q] * std::pow(outer.nodes[q] - 0.25, -0.5) * std::pow(0.75 - outer.nodes[q], -0.3);
    CHECK(outer.nodes[q] > 0.25);
    CHECK(outer.nodes[q] < 0.75);
  }
  CHECK_THAT(len, WithinRel(0.5, 1e-14));
  CHECK_THAT(sing, WithinRel(std::beta(0.5, 0.7) * std::pow(0.5, 0.2), 1e-6));
  CHECK(outer_rule(0.5, 0.5, 0.125, fq).nodes.empty());
}

TEST_CASE("right derivative of fBm scales like L^(alpha + H - 1)", "[frak][mc]") {
  for (double hurst : {0.4, 0.5}) {
    const double alpha = 0.7;
    const auto fq = with_alpha(alpha);
    const FbmSampler sampler(hurst, 10, 1.0);
    const std::vector<int> scales = {2, 3, 4, 5, 6, 7};
    std::vector<double> sums(scales.size());
    const std::size_t n = 300;
    for (std::size_t q = 0; q < n; ++q) {
      const PathGrid p = sample_qfbm(sampler, 1, derive_seed(901, q));
      const auto g = [&](double x) { return eval_linear(p, 0, x); };
      for (std::size_t r = 0; r < scales.size(); ++r)
        sums[r] += std::abs(frac_deriv_right(g, 1.0, 1.0 - std::ldexp(1.0, -scales[r]), fq, p.step()));
    }
    std::vector<double> x, y;
    for (std::size_t r = 0; r < scales.size(); ++r) {
      x.push_back(-scales[r] * std::log(2.0));
      y.push_back(std::log(sums[r] / n));
    }
    const auto fit = linear_fit(x, y);
    INFO("H " << hurst << " slope " << fit.slope);
    CHECK_THAT(fit.slope, WithinAbs(alpha + hurst - 1.0, 0.1));
  }
}

TEST_CASE("correction integral equals the drift", "[frak]") {
  const auto cfg = SpectrumConfig::dirichlet_laplacian(3, 0.0);
  for (double hurst : {0.4, 0.5}) {
    const PathGrid p = sample_qfbm(CovarianceSpec::power_law(2, 2.0), hurst, 4, 1.0, 17);
    const auto fq = FracQuadConfig::for_beta(hurst - 0.05);
    const WindowPair w{2, 14};
    const auto all = correction_integrals(p, cfg, {0, 2}, 2, w, fq);
    REQUIRE(all.size() == 8);
    for (std::size_t ii = 0; ii < 2; ++ii)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t k = 0; k < 2; ++k) {
          const std::size_t i = ii == 0 ? 0 : 2;
          const auto& r = all[(ii * 2 + j) * 2 + k];
          const double drift = drift_component(p, cfg.eigenvalue(i), j, k, w);
          const double via_plain = plain_area_component(p, j, k, w) - area_component(p, cfg, i, j, k, w);
          INFO("H " << hurst << " i " << i << " j " << j << " k " << k);
          CHECK(r.converged);
          CHECK(r.relative_change <= fq.tolerance);
          CHECK_THAT(r.value, WithinAbs(drift, 1e-3 * std::abs(drift) + 1e-12));
          CHECK_THAT(r.value, WithinAbs(via_plain, 1e-3 * std::abs(via_plain) + 1e-12));
        }
    const auto one = correction_integral(p, cfg, 2, 1, 0, w, fq);
    CHECK(one.value == all[(1 * 2 + 1) * 2 + 0].value);
  }
}

TEST_CASE("correction integral: degenerate cases", "[frak]") {
  const PathGrid p = sample_qfbm(CovarianceSpec::power_law(2, 2.0), 0.5, 4, 1.0, 3);
  const auto fq = FracQuadConfig::for_beta(0.45);
  const auto tiny = SpectrumConfig::explicit_list({1e-9}, 0.0);
  CHECK(std::abs(correction_integral(p, tiny, 0, 0, 1, {0, 16}, fq).value) < 1e-8);
  const auto empty = correction_integral(p, tiny, 0, 0, 1, {5, 5}, fq);
  CHECK(empty.value == 0.0);
  CHECK(empty.converged);
  CHECK_THROWS(correction_integral(p, tiny, 0, 0, 2, {0, 16}, fq));
  CHECK_THROWS(correction_integral(p, tiny, 1, 0, 1, {0, 16}, fq));
}

TEST_CASE("kernel bound", "[frak]") {
  const PathGrid lin = PathGrid::from_rows(1.0, {std::vector<double>{0, 0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875, 1.0}});
  const auto rep = kernel_bound_check(lin, 10.0, 0, {0, 8}, 0.45);
  CHECK(rep.bounded);
  CHECK(!rep.identically_zero);
  CHECK(rep.levels.size() == 4);
  CHECK_THAT(rep.onset_exponent, WithinAbs(2.0, 0.05));
  CHECK(rep.onset_exponent >= 0.45);

  const PathGrid flat = PathGrid::from_rows(1.0, {std::vector<double>(9, 0.0)});
  const auto z = kernel_bound_check(flat, 10.0, 0, {0, 8}, 0.45);
  CHECK(z.identically_zero);
  CHECK(z.max_constant == 0.0);
  CHECK(z.bounded);

  for (double hurst : {0.4, 0.5}) {
    const PathGrid p = sample_qfbm(CovarianceSpec::power_law(1, 2.0), hurst, 10, 1.0, 99);
    const FbmSampler s(hurst, 10, 1.0);
    const auto r = kernel_bound_check(p, 200.0, 0, {0, 1024}, hurst - 0.05);
    CHECK(r.bounded);
    CHECK(r.max_constant > 0.0);
    CHECK(r.onset_exponent >= hurst - 0.05);
  }
  CHECK_THROWS(kernel_bound_check(lin, 10.0, 0, {0, 8}, 1.0));
}
