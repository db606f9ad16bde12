#include "ouarea/lemmas.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <functional>
#include <ostream>
#include <stdexcept>

#include "ouarea/fbm.hpp"
#include "ouarea/parallel.hpp"
#include "ouarea/seeding.hpp"
#include "ouarea/statistics.hpp"

namespace ouarea {

namespace {

using boost::multiprecision::cpp_int;

cpp_int factorial(int n) {
  cpp_int f = 1;
  for (int q = 2; q <= n; ++q) f *= q;
  return f;
}

cpp_int power(int base, int exp) {
  cpp_int r = 1;
  for (int q = 0; q < exp; ++q) r *= base;
  return r;
}

// Visits every composition (k_1, ..., k_M) of p into nonnegative parts.
void compositions(int p, int m, std::vector<int>& parts,
                  const std::function<void(const std::vector<int>&)>& visit) {
  if (static_cast<int>(parts.size()) == m - 1) {
    parts.push_back(p);
    visit(parts);
    parts.pop_back();
    return;
  }
  for (int k = 0; k <= p; ++k) {
    parts.push_back(k);
    compositions(p - k, m, parts, visit);
    parts.pop_back();
  }
}

// (2p - 1)!!
double double_factorial_odd(int p) {
  double r = 1.0;
  for (int q = 2 * p - 1; q > 1; q -= 2) r *= q;
  return r;
}

}  // namespace

std::vector<MultinomialRow> multinomial_rows(int p_max, int m_max) {
  if (p_max < 1 || m_max < 1) throw std::invalid_argument("multinomial_rows: p and M must be positive");
  std::vector<MultinomialRow> rows;
  for (int p = 1; p <= p_max; ++p) {
    const cpp_int top = factorial(2 * p);
    for (int m = 1; m <= m_max; ++m) {
      cpp_int sum = 0;
      cpp_int count = 0;
      std::vector<int> parts;
      compositions(p, m, parts, [&](const std::vector<int>& k) {
        cpp_int denom = 1;
        for (int x : k) denom *= factorial(2 * x);
        sum += top / denom;
        count += 1;
      });
      const cpp_int mp = power(m, p);
      const cpp_int bound = top * mp;
      MultinomialRow r;
      r.p = p;
      r.modes = m;
      r.sum = sum.str();
      r.bound = bound.str();
      r.compositions = count.str();
      r.sum_ok = sum <= bound;
      r.count_ok = count <= mp;
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

void write_multinomial_csv(const std::vector<MultinomialRow>& rows, std::ostream& os) {
  os << "p,M,sum,bound,pass\n";
  for (const auto& r : rows)
    os << r.p << ',' << r.modes << ',' << r.sum << ',' << r.bound << ',' << (r.pass() ? "pass" : "fail")
       << '\n';
}

StudyReport multinomial_bound_check(int p_max, int m_max) {
  if (p_max > 4 || m_max > 8) throw std::invalid_argument("multinomial_bound_check: requires p <= 4 and M <= 8");
  const auto rows = multinomial_rows(p_max, m_max);
  StudyReport rep;
  rep.kind = "multinomial";
  rep.params = {{"p_max", p_max}, {"m_max", m_max}, {"constant", "(2p)!"}};
  double failures = 0.0;
  nlohmann::json table = nlohmann::json::array();
  for (const auto& r : rows) {
    if (!r.pass()) failures += 1.0;
    table.push_back({{"p", r.p},
                     {"M", r.modes},
                     {"sum", r.sum},
                     {"bound", r.bound},
                     {"compositions", r.compositions},
                     {"pass", r.pass()}});
  }
  rep.extra["rows"] = table;
  rep.checks.push_back(make_check("failed_rows", failures, 0.0, 0.0,
                                  "sum <= (2p)! M^p and compositions <= M^p"));
  return rep;
}

StudyReport bdg_check(const BdgConfig& cfg) {
  if (cfg.p < 1) throw std::invalid_argument("bdg_check: p must be at least 1");
  if (cfg.samples < 2) throw std::invalid_argument("bdg_check: at least two samples required");
  const double T = cfg.horizon;
  const int p = cfg.p;
  const double two_p = 2.0 * p;
  const FbmSampler sampler(0.5, cfg.level, T);
  const std::size_t cells = std::size_t{1} << cfg.level;
  const double step = T / static_cast<double>(cells);

  std::vector<double> lhs(cfg.samples), integral(cfg.samples);
  parallel_for(cfg.samples, cfg.threads, [&](std::size_t q) {
    if (cfg.zero_integrand) return;
    const auto w = sampler.sample(derive_seed(cfg.seed, q)).values;
    double ito = 0.0, in = 0.0;
    for (std::size_t m = 1; m <= cells; ++m) {
      ito += w[m - 1] * (w[m] - w[m - 1]);
      in += 0.5 * step * (std::pow(std::abs(w[m - 1]), two_p) + std::pow(std::abs(w[m]), two_p));
    }
    lhs[q] = std::pow(ito, two_p);
    integral[q] = in;
  });

  const double constant = std::pow(p * (2.0 * p - 1.0), p) * std::pow(T, p - 1.0);
  const double analytic_integral =
      cfg.zero_integrand ? 0.0 : double_factorial_odd(p) * std::pow(T, p + 1.0) / (p + 1.0);
  const double rhs = constant * analytic_integral;
  const auto l = mean_estimate(lhs);
  const auto in = mean_estimate(integral);

  StudyReport rep;
  rep.kind = "bdg";
  rep.params = {{"p", p},
                {"horizon", T},
                {"samples", cfg.samples},
                {"level", cfg.level},
                {"seed", cfg.seed},
                {"zero_integrand", cfg.zero_integrand},
                {"generator", to_string(sampler.generator())}};
  rep.extra["lhs_mean"] = l.mean;
  rep.extra["lhs_se"] = l.standard_error;
  rep.extra["rhs_analytic"] = rhs;
  rep.extra["rhs_monte_carlo"] = constant * in.mean;
  rep.extra["integral_mean"] = in.mean;
  rep.extra["integral_analytic"] = analytic_integral;
  rep.checks.push_back(make_check("lhs_lower_minus_rhs", l.mean - 3.0 * l.standard_error - rhs,
                                  -unbounded, 0.0, "E(int x dw)^{2p} <= (p(2p-1))^p T^{p-1} E int |x|^{2p}"));
  return rep;
}

}  // namespace ouarea
