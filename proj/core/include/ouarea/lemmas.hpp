#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ouarea/report.hpp"

namespace ouarea {

struct MultinomialRow {
  int p = 0;
  int modes = 0;  // M
  std::string sum;    // decimal, exact
  std::string bound;  // (2p)! M^p, decimal
  std::string compositions;
  bool sum_ok = false;
  bool count_ok = false;  // compositions <= M^p

  bool pass() const noexcept { return sum_ok && count_ok; }
};

/// sum over k_1 + ... + k_M = p of (2p)! / ((2k_1)! ... (2k_M)!) in exact
/// integer arithmetic, for every 1 <= p <= p_max and 1 <= M <= m_max.
std::vector<MultinomialRow> multinomial_rows(int p_max, int m_max);

/// Rows `p,M,sum,bound,pass`.
void write_multinomial_csv(const std::vector<MultinomialRow>& rows, std::ostream& os);

/// Requires p <= 4 and M <= 8.
StudyReport multinomial_bound_check(int p_max = 4, int m_max = 8);

struct BdgConfig {
  int p = 1;
  double horizon = 1.0;
  std::size_t samples = 20000;
  unsigned level = 10;
  std::uint64_t seed = 1234;
  /// x = 0 instead of x = omega.
  bool zero_integrand = false;
  unsigned threads = 1;
};

/// E(int_0^T x d omega)^{2p} by Ito sums against the analytic right side
/// (p(2p-1))^p T^{p-1} (2p-1)!! T^{p+1} / (p+1). Check: lhs - 3 se <= rhs.
StudyReport bdg_check(const BdgConfig& cfg);

}  // namespace ouarea
