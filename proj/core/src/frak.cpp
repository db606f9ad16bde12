#include "ouarea/frak.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <stdexcept>

#include "ouarea/holder.hpp"
#include "ouarea/parallel.hpp"

namespace ouarea {

namespace {

struct Rule {
  std::vector<double> x;  // on [0, 1], ascending
  std::vector<double> w;
};

template <unsigned N>
Rule make_rule() {
  using G = boost::math::quadrature::gauss<double, N>;
  Rule r;
  const auto& a = G::abscissa();
  const auto& wt = G::weights();
  for (std::size_t q = 0; q < a.size(); ++q) {
    if (a[q] == 0.0) {
      r.x.push_back(0.5);
      r.w.push_back(0.5 * wt[q]);
      continue;
    }
    r.x.push_back(0.5 * (1.0 - a[q]));
    r.w.push_back(0.5 * wt[q]);
    r.x.push_back(0.5 * (1.0 + a[q]));
    r.w.push_back(0.5 * wt[q]);
  }
  std::vector<std::size_t> order(r.x.size());
  for (std::size_t q = 0; q < order.size(); ++q) order[q] = q;
  std::sort(order.begin(), order.end(), [&](std::size_t a1, std::size_t a2) { return r.x[a1] < r.x[a2]; });
  Rule sorted;
  for (std::size_t q : order) {
    sorted.x.push_back(r.x[q]);
    sorted.w.push_back(r.w[q]);
  }
  return sorted;
}

const Rule* find_rule(unsigned points) {
  static const Rule r6 = make_rule<6>(), r8 = make_rule<8>(), r10 = make_rule<10>(),
                    r12 = make_rule<12>(), r14 = make_rule<14>(), r16 = make_rule<16>(),
                    r20 = make_rule<20>();
  switch (points) {
    case 6: return &r6;
    case 8: return &r8;
    case 10: return &r10;
    case 12: return &r12;
    case 14: return &r14;
    case 16: return &r16;
    case 20: return &r20;
    default: return nullptr;
  }
}

const Rule& rule(unsigned points) {
  const Rule* r = find_rule(points);
  if (!r) throw std::invalid_argument("frak: unsupported Gauss rule size");
  return *r;
}

// Below u = depth_floor L, rounding in diff (about eps |f|) times u^{-p}
// outweighs what the panel adds; grading stops there and extra levels only
// make the ratio milder.
constexpr double depth_floor = 1e-9;

// int_0^L diff(u) u^{-p} du for 1 < p < 2, where diff(u) = O(u) as u -> 0.
// Panels: geometric points L ratio^k and kinks at u = L - m spacing. The
// innermost panel [0, h] uses the secant diff(h) u / h.
template <class Diff>
double compensated_integral(const Diff& diff, double L, double p, const FracQuadConfig& fq,
                            double spacing) {
  std::vector<double> cuts;
  cuts.reserve(fq.level + 64);
  const double ratio = std::max(fq.ratio, std::pow(depth_floor, 1.0 / fq.level));
  double u = L;
  for (unsigned k = 0; k <= fq.level; ++k) {
    cuts.push_back(u);
    u *= ratio;
  }
  const double h = cuts.back();
  if (spacing > 0.0) {
    for (double m = 1.0;; m += 1.0) {
      const double node = L - m * spacing;
      if (node <= h) break;
      cuts.push_back(node);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [L](double a, double b) { return b - a <= 1e-14 * L; }),
             cuts.end());

  const Rule& r = rule(fq.points);
  double sum = diff(h) * std::pow(h, 1.0 - p) / (2.0 - p);
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double a = cuts[c];
    const double len = cuts[c + 1] - a;
    double panel = 0.0;
    for (std::size_t q = 0; q < r.x.size(); ++q) {
      const double v = a + len * r.x[q];
      panel += r.w[q] * diff(v) * std::pow(v, -p);
    }
    sum += len * panel;
  }
  return sum;
}

bool close_enough(double now, double before, double tol) {
  const double change = std::abs(now - before);
  return change == 0.0 || change <= tol * std::abs(now);
}

double relative_change(double now, double before) {
  const double change = std::abs(now - before);
  if (change == 0.0) return 0.0;
  return change / std::abs(now);
}

}  // namespace

double FracQuadConfig::default_alpha(double beta, double gamma) {
  return (1.0 - beta) + 0.6 * (gamma - (1.0 - beta));
}

FracQuadConfig FracQuadConfig::for_beta(double beta, double gamma) {
  FracQuadConfig fq;
  fq.alpha = default_alpha(beta, gamma);
  fq.validate_for(beta);
  return fq;
}

void FracQuadConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("frak: alpha must lie in (0, 1)");
  if (level < 1) throw std::invalid_argument("frak: quadrature level must be positive");
  if (!(ratio > 0.0 && ratio < 1.0)) throw std::invalid_argument("frak: grading ratio must lie in (0, 1)");
  if (!find_rule(points)) throw std::invalid_argument("frak: unsupported Gauss rule size");
  if (!(tolerance > 0.0)) throw std::invalid_argument("frak: tolerance must be positive");
}

void FracQuadConfig::validate_for(double beta) const {
  validate();
  if (!(alpha + beta > 1.0)) throw std::invalid_argument("frak: alpha + beta must exceed 1");
}

FracQuadConfig FracQuadConfig::refined() const {
  FracQuadConfig next = *this;
  next.level += 4;
  next.points = find_rule(points + 2) ? points + 2 : points;
  return next;
}

double frac_deriv_left(const RealFunction& f, double s, double xi, const FracQuadConfig& fq,
                       double node_spacing) {
  fq.validate();
  if (!(xi > s)) throw std::invalid_argument("frac_deriv_left: requires xi > s");
  const double a = fq.alpha;
  const double L = xi - s;
  const double fx = f(xi);
  const auto diff = [&](double u) { return fx - f(xi - u); };
  const double integral = compensated_integral(diff, L, 1.0 + a, fq, node_spacing);
  return (fx * std::pow(L, -a) + a * integral) / std::tgamma(1.0 - a);
}

double frac_deriv_right(const RealFunction& g, double t, double xi, const FracQuadConfig& fq,
                        double node_spacing) {
  fq.validate();
  if (!(xi < t)) throw std::invalid_argument("frac_deriv_right: requires xi < t");
  const double a = fq.alpha;
  const double L = t - xi;
  const double gx = g(xi);
  const auto diff = [&](double u) { return gx - g(xi + u); };
  const double integral = compensated_integral(diff, L, 2.0 - a, fq, node_spacing);
  return ((gx - g(t)) * std::pow(L, a - 1.0) + (1.0 - a) * integral) / std::tgamma(a);
}

OuterRule outer_rule(double s, double t, double step, const FracQuadConfig& fq) {
  fq.validate();
  OuterRule out;
  if (!(t > s)) return out;
  const Rule& r = rule(fq.points);
  const auto cells = static_cast<std::size_t>(std::llround((t - s) / step));
  const double half = 0.5 * step;
  const auto add_panel = [&](double a, double b) {
    if (!(a + (b - a) * r.x.front() > s && a + (b - a) * r.x.back() < t)) return;
    for (std::size_t q = 0; q < r.x.size(); ++q) {
      out.nodes.push_back(a + (b - a) * r.x[q]);
      out.weights.push_back((b - a) * r.w[q]);
    }
  };
  // Offsets from a cell end: half ratio^k, k = 0..level-1, then 0.
  std::vector<double> offs;
  for (unsigned k = 0; k < fq.level; ++k) offs.push_back(half * std::pow(fq.ratio, k));
  offs.push_back(0.0);
  for (std::size_t c = 0; c < cells; ++c) {
    const double a = s + step * static_cast<double>(c);
    const double b = c + 1 == cells ? t : s + step * static_cast<double>(c + 1);
    for (std::size_t q = offs.size() - 1; q > 0; --q) add_panel(a + offs[q], a + offs[q - 1]);
    for (std::size_t q = 0; q + 1 < offs.size(); ++q) add_panel(b - offs[q], b - offs[q + 1]);
  }
  return out;
}

namespace {

RealFunction window_path(const PathGrid& path, std::size_t k, const WindowPair& w) {
  const auto r = path.raw(k);
  const double s = window_start(path, w);
  const double step = path.step();
  const std::size_t cells = w.cells();
  return [r, s, step, cells, m0 = w.m0](double x) {
    const double pos = std::clamp((x - s) / step, 0.0, static_cast<double>(cells));
    auto m = static_cast<std::size_t>(pos);
    if (m >= cells) return r[m0 + cells] - r[m0];
    const double frac = pos - static_cast<double>(m);
    const double left = r[m0 + m] - r[m0];
    return left + frac * (r[m0 + m + 1] - r[m0 + m]);
  };
}

// Values at one quadrature setting, same layout as correction_integrals.
std::vector<double> correction_pass(const PathGrid& path, const SpectrumConfig& cfg,
                                    const std::vector<std::size_t>& spectral,
                                    std::size_t nj, const WindowPair& w,
                                    const FracQuadConfig& fq, unsigned threads,
                                    std::size_t& outer_nodes) {
  const double s = window_start(path, w);
  const double t = window_end(path, w);
  const double step = path.step();
  const OuterRule outer = outer_rule(s, t, step, fq);
  const std::size_t nq = outer.nodes.size();
  outer_nodes = nq;

  std::vector<std::vector<double>> right(nj, std::vector<double>(nq));
  parallel_for(nj, threads, [&](std::size_t k) {
    const RealFunction g = window_path(path, k, w);
    for (std::size_t q = 0; q < nq; ++q)
      right[k][q] = frac_deriv_right(g, t, outer.nodes[q], fq, step);
  });

  const std::size_t pairs = spectral.size() * nj;
  std::vector<std::vector<double>> left(pairs, std::vector<double>(nq));
  parallel_for(pairs, threads, [&](std::size_t p) {
    const std::size_t i = spectral[p / nj];
    const std::size_t j = p % nj;
    const InnerDriftProfile profile(path, cfg.eigenvalue(i), j, w);
    const RealFunction f = [&profile](double x) { return -profile(x); };
    for (std::size_t q = 0; q < nq; ++q)
      left[p][q] = outer.weights[q] * frac_deriv_left(f, s, outer.nodes[q], fq, step);
  });

  std::vector<double> out(pairs * nj);
  for (std::size_t p = 0; p < pairs; ++p)
    for (std::size_t k = 0; k < nj; ++k) {
      double acc = 0.0;
      for (std::size_t q = 0; q < nq; ++q) acc += left[p][q] * right[k][q];
      out[p * nj + k] = acc;
    }
  return out;
}

}  // namespace

std::vector<CorrectionResult> correction_integrals(const PathGrid& path,
                                                   const SpectrumConfig& cfg,
                                                   const std::vector<std::size_t>& spectral,
                                                   std::size_t noise_modes, const WindowPair& w,
                                                   const FracQuadConfig& fq, unsigned threads) {
  fq.validate();
  if (noise_modes > path.mode_count())
    throw std::invalid_argument("correction_integral: path has too few modes");
  make_window(path, w.m0, w.m1);
  for (std::size_t i : spectral) cfg.eigenvalue(i);

  const std::size_t n = spectral.size() * noise_modes * noise_modes;
  std::vector<CorrectionResult> out(n);
  if (w.cells() == 0) {
    for (auto& r : out) {
      r.level = fq.level;
      r.points = fq.points;
      r.converged = true;
    }
    return out;
  }

  FracQuadConfig cur = fq;
  std::size_t nodes = 0;
  std::vector<double> before = correction_pass(path, cfg, spectral, noise_modes, w, cur, threads, nodes);
  for (;;) {
    const FracQuadConfig next = cur.refined();
    std::vector<double> now = correction_pass(path, cfg, spectral, noise_modes, w, next, threads, nodes);
    bool all = true;
    for (std::size_t c = 0; c < n; ++c) {
      out[c].value = now[c];
      out[c].previous = before[c];
      out[c].relative_change = relative_change(now[c], before[c]);
      out[c].level = next.level;
      out[c].points = next.points;
      out[c].outer_nodes = nodes;
      out[c].converged = close_enough(now[c], before[c], fq.tolerance);
      all = all && out[c].converged;
    }
    if (all || next.refined().level > fq.max_level) break;
    cur = next;
    before = std::move(now);
  }
  return out;
}

CorrectionResult correction_integral(const PathGrid& path, const SpectrumConfig& cfg,
                                     std::size_t i, std::size_t j, std::size_t k,
                                     const WindowPair& w, const FracQuadConfig& fq) {
  if (j >= path.mode_count() || k >= path.mode_count())
    throw std::out_of_range("correction_integral: noise mode out of range");
  // A one-mode view would need a copy of the path; the shared pass is cheap
  // enough with J = max(j, k) + 1.
  const std::size_t nj = std::max(j, k) + 1;
  const auto all = correction_integrals(path, cfg, {i}, nj, w, fq);
  return all[j * nj + k];
}

KernelBoundReport kernel_bound_check(const PathGrid& path, double lambda, std::size_t j,
                                     const WindowPair& w, double beta, unsigned coarser) {
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("kernel_bound_check: beta must lie in (0, 1)");
  make_window(path, w.m0, w.m1);
  KernelBoundReport rep;
  rep.beta = beta;
  if (w.cells() == 0) {
    rep.identically_zero = true;
    return rep;
  }
  bool all_zero = true;
  for (unsigned c = 0; c <= coarser && c <= path.level(); ++c) {
    const std::size_t stride = std::size_t{1} << c;
    if (w.m0 % stride != 0 || w.m1 % stride != 0 || path.cell_count() % stride != 0) break;
    const PathGrid p = coarsen(path, path.level() - c);
    const WindowPair pw{w.m0 / stride, w.m1 / stride};
    const auto r = p.raw(j);
    std::vector<double> vals(r.begin() + static_cast<std::ptrdiff_t>(pw.m0),
                             r.begin() + static_cast<std::ptrdiff_t>(pw.m1) + 1);
    KernelBoundLevel lvl;
    lvl.level = p.level();
    lvl.holder_norm = holder_seminorm(vals, p.step(), beta).value;
    const InnerDriftProfile g(p, lambda, j, pw);
    const double s = g.start();
    double sup = 0.0;
    for (std::size_t m = 1; m <= pw.cells(); ++m) {
      for (double f : {0.5, 1.0}) {
        const double h = p.step() * (static_cast<double>(m - 1) + f);
        const double v = std::abs(g(s + h));
        if (v != 0.0) all_zero = false;
        if (lvl.holder_norm > 0.0) sup = std::max(sup, v / (std::pow(h, beta) * lvl.holder_norm));
      }
    }
    lvl.constant = sup;
    rep.max_constant = std::max(rep.max_constant, sup);
    rep.levels.push_back(lvl);
  }
  rep.identically_zero = all_zero;
  rep.bounded = rep.max_constant <= 3.0;

  if (!all_zero) {
    const InnerDriftProfile g(path, lambda, j, w);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (int q = 1; q <= 8; ++q) {
      const double h = path.step() * std::ldexp(1.0, -q);
      const double v = std::abs(g(g.start() + h));
      if (v == 0.0) continue;
      const double lx = std::log(h), ly = std::log(v);
      sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
      ++n;
    }
    if (n >= 2) rep.onset_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return rep;
}

}  // namespace ouarea
