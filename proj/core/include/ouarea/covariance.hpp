#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace ouarea {

struct ExplicitWeights {};

/// q_j = j^(-rho), j = 1, 2, ...; rho > 1 keeps the nominal trace finite.
struct PowerLawWeights {
  double rho;
};

using CovarianceLaw = std::variant<ExplicitWeights, PowerLawWeights>;

/// Diagonal trace-class covariance Q of the driving noise, truncated to J modes.
class CovarianceSpec {
 public:
  static CovarianceSpec explicit_weights(std::vector<double> weights);
  static CovarianceSpec power_law(std::size_t modes, double rho);

  std::size_t mode_count() const noexcept { return weights_.size(); }
  std::span<const double> weights() const noexcept { return weights_; }
  double weight(std::size_t j) const;
  /// q_j^(1/2)
  double amplitude(std::size_t j) const;
  double trace() const noexcept;
  const CovarianceLaw& law() const noexcept { return law_; }
  std::string describe() const;

 private:
  CovarianceSpec(std::vector<double> weights, CovarianceLaw law);
  std::vector<double> weights_;
  CovarianceLaw law_;
};

}  // namespace ouarea
