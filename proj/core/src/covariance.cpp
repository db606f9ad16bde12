#include "ouarea/covariance.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ouarea {

CovarianceSpec::CovarianceSpec(std::vector<double> weights, CovarianceLaw law)
    : weights_(std::move(weights)), law_(law) {
  if (weights_.empty()) throw std::invalid_argument("covariance: at least one mode required");
  for (double q : weights_)
    if (!(q > 0.0) || !std::isfinite(q))
      throw std::invalid_argument("covariance: weights must be finite and positive");
}

CovarianceSpec CovarianceSpec::explicit_weights(std::vector<double> weights) {
  return CovarianceSpec(std::move(weights), ExplicitWeights{});
}

CovarianceSpec CovarianceSpec::power_law(std::size_t modes, double rho) {
  if (!(rho > 1.0)) throw std::invalid_argument("covariance: power-law exponent rho must exceed 1");
  std::vector<double> q(modes);
  for (std::size_t j = 0; j < modes; ++j) q[j] = std::pow(static_cast<double>(j + 1), -rho);
  return CovarianceSpec(std::move(q), PowerLawWeights{rho});
}

double CovarianceSpec::weight(std::size_t j) const {
  if (j >= weights_.size()) throw std::out_of_range("covariance: mode index out of range");
  return weights_[j];
}

double CovarianceSpec::amplitude(std::size_t j) const { return std::sqrt(weight(j)); }

double CovarianceSpec::trace() const noexcept {
  return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

std::string CovarianceSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (const auto* pl = std::get_if<PowerLawWeights>(&law_))
    os << "power-law(rho=" << pl->rho << ")";
  else
    os << "explicit";
  os << " modes=" << mode_count();
  return os.str();
}

}  // namespace ouarea
