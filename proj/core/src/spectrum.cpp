#include "ouarea/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "ouarea/covariance.hpp"

namespace ouarea {

SpectrumConfig::SpectrumConfig(std::vector<double> eigenvalues, double kappa, SpectrumLaw law)
    : eigenvalues_(std::move(eigenvalues)), kappa_(kappa), law_(law) {
  if (eigenvalues_.empty()) throw std::invalid_argument("spectrum: at least one mode required");
  if (!(kappa_ >= 0.0) || !std::isfinite(kappa_))
    throw std::invalid_argument("spectrum: kappa must be a finite nonnegative number");
  if (!(eigenvalues_.front() > 0.0))
    throw std::invalid_argument("spectrum: eigenvalues must be positive");
  for (std::size_t i = 1; i < eigenvalues_.size(); ++i) {
    if (!(eigenvalues_[i - 1] < eigenvalues_[i]))
      throw std::invalid_argument("spectrum: eigenvalues must be strictly increasing");
  }
}

SpectrumConfig SpectrumConfig::explicit_list(std::vector<double> eigenvalues, double kappa) {
  return SpectrumConfig(std::move(eigenvalues), kappa, ExplicitSpectrum{});
}

SpectrumConfig SpectrumConfig::power_law(std::size_t modes, double scale, double dim,
                                         double kappa) {
  if (!(scale > 0.0)) throw std::invalid_argument("spectrum: power-law scale must be positive");
  if (!(dim >= 1.0)) throw std::invalid_argument("spectrum: power-law dimension must be >= 1");
  std::vector<double> ev(modes);
  const double exponent = 2.0 / dim;
  for (std::size_t i = 0; i < modes; ++i) {
    const double idx = static_cast<double>(i + 1);
    // Exact products for the common d = 1 case so pi^2 i^2 is reproduced bit for bit.
    ev[i] = dim == 1.0 ? scale * idx * idx : scale * std::pow(idx, exponent);
  }
  return SpectrumConfig(std::move(ev), kappa, PowerLawSpectrum{scale, dim});
}

SpectrumConfig SpectrumConfig::dirichlet_laplacian(std::size_t modes, double kappa) {
  return power_law(modes, std::numbers::pi * std::numbers::pi, 1.0, kappa);
}

double SpectrumConfig::eigenvalue(std::size_t i) const {
  if (i >= eigenvalues_.size()) throw std::out_of_range("spectrum: mode index out of range");
  return eigenvalues_[i];
}

double SpectrumConfig::semigroup_factor(std::size_t i, double t) const {
  if (!(t >= 0.0)) throw std::invalid_argument("spectrum: semigroup time must be nonnegative");
  return std::exp(-eigenvalue(i) * t);
}

double SpectrumConfig::mode_weight(std::size_t i) const {
  return kappa_ == 0.0 ? 1.0 : std::pow(eigenvalue(i), -kappa_);
}

SpectrumConfig SpectrumConfig::with_kappa(double kappa) const {
  return SpectrumConfig(eigenvalues_, kappa, law_);
}

std::string SpectrumConfig::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (const auto* pl = std::get_if<PowerLawSpectrum>(&law_)) {
    os << "power-law(scale=" << pl->scale << ",dim=" << pl->dim << ")";
  } else {
    os << "explicit";
  }
  os << " modes=" << mode_count() << " kappa=" << kappa_;
  return os.str();
}

double vkappa_norm(const SpectrumConfig& cfg, std::span<const double> coeffs, double kappa) {
  if (coeffs.size() != cfg.mode_count())
    throw std::invalid_argument("vkappa_norm: coefficient length does not match mode count");
  double sum = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const double w = kappa == 0.0 ? 1.0 : std::pow(cfg.eigenvalue(i), 2.0 * kappa);
    sum += coeffs[i] * coeffs[i] * w;
  }
  return std::sqrt(sum);
}

bool SummabilityReport::any_divergent() const {
  for (const auto& s : series)
    if (s.convergent && !*s.convergent) return true;
  return false;
}

namespace {

SeriesSummary summarize(const SpectrumConfig& cfg, std::string name, double a) {
  SeriesSummary out;
  out.name = std::move(name);
  out.lambda_exponent = a;
  for (double lambda : cfg.eigenvalues()) out.partial_sum += std::pow(lambda, a);

  if (const auto* pl = std::get_if<PowerLawSpectrum>(&cfg.law())) {
    // lambda_i^a = scale^a i^e with e = 2a/dim; integral test on i^e.
    const double e = 2.0 * a / pl->dim;
    out.index_exponent = e;
    out.convergent = e < -1.0;
    if (e < -1.0) {
      const double modes = static_cast<double>(cfg.mode_count());
      out.tail_estimate = std::pow(pl->scale, a) * std::pow(modes, e + 1.0) / (-e - 1.0);
    }
  }
  return out;
}

}  // namespace

SummabilityReport summability_report(const SpectrumConfig& cfg, const CovarianceSpec& cov,
                                     double nu, int p) {
  if (p < 2) throw std::invalid_argument("summability_report: p must be >= 2");
  SummabilityReport rep;
  rep.nu = nu;
  rep.p = p;
  rep.kappa = cfg.kappa();
  rep.covariance_trace = cov.trace();
  const double pd = static_cast<double>(p);
  rep.series.push_back(summarize(cfg, "lambda^(-nu p/(p-1))", -nu * pd / (pd - 1.0)));
  rep.series.push_back(summarize(cfg, "lambda^(p(nu-2kappa)+1)", pd * (nu - 2.0 * cfg.kappa()) + 1.0));
  rep.series.push_back(summarize(cfg, "lambda^(-2kappa)", -2.0 * cfg.kappa()));
  return rep;
}

}  // namespace ouarea
