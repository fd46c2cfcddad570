#include "wecp/comparison.hpp"

#include <algorithm>
#include <cmath>

#include "wecp/error.hpp"
#include "wecp/protocols.hpp"

namespace wecp {

namespace {

// (xy)^(2^(k-1)) / prod_{j<k} (x^(2^j) + y^(2^j)) for squared moduli x, y.
// With r = min/max this equals max * r^(2^(k-1)) * prod_{j<k} 1/(1+r^(2^j)),
// which needs only repeated squaring of r <= 1 and never overflows.
double chain_term(double x, double y, int k) {
  const double hi = std::max(x, y);
  double r = std::min(x, y) / hi;
  double value = hi;
  for (int j = 0; j < k; ++j) {
    if (j == k - 1) value *= r;
    value /= 1.0 + r;
    r *= r;
  }
  return value;
}

}  // namespace

void PriorEcpParams::validate() const {
  for (double m : {alpha, beta, gamma}) {
    if (!(m > 0.0 && m < 1.0)) {
      throw Error(ErrorKind::kDomainError, "coefficient moduli must be in (0, 1)");
    }
  }
  if (std::abs(alpha * alpha + beta * beta + gamma * gamma - 1.0) > 1e-9) {
    throw Error(ErrorKind::kDomainError, "squared moduli must sum to one");
  }
  if (iterations_step1 < 1 || iterations_step2 < 1) {
    throw Error(ErrorKind::kDomainError, "iteration caps must be >= 1");
  }
}

double prior_step1_prob(const PriorEcpParams& p, int n) {
  if (n < 1) throw Error(ErrorKind::kDomainError, "round index must be >= 1");
  const double a = p.alpha * p.alpha;
  const double b = p.beta * p.beta;
  const double g = p.gamma * p.gamma;
  return chain_term(a, b, n) * (g / b + 2.0);
}

double prior_step2_prob(const PriorEcpParams& p, int m) {
  if (m < 1) throw Error(ErrorKind::kDomainError, "round index must be >= 1");
  const double b = p.beta * p.beta;
  const double g = p.gamma * p.gamma;
  return 3.0 * chain_term(g, b, m) / (g + 2.0 * b);
}

double prior_total_prob(const PriorEcpParams& p) {
  p.validate();
  double s1 = 0.0;
  for (int n = 1; n <= p.iterations_step1; ++n) s1 += prior_step1_prob(p, n);
  double s2 = 0.0;
  for (int m = 1; m <= p.iterations_step2; ++m) s2 += prior_step2_prob(p, m);
  return s1 * s2;
}

std::vector<CurveSpec> default_curves() {
  return curves_for_caps({{1, 1}, {3, 3}, {5, 5}});
}

std::vector<CurveSpec> curves_for_caps(
    const std::vector<std::pair<int, int>>& caps) {
  if (caps.size() >= 26) {
    throw Error(ErrorKind::kDomainError, "at most 25 capped curves");
  }
  std::vector<CurveSpec> curves;
  char id = 'A';
  for (const auto& [c1, c2] : caps) {
    if (c1 < 1 || c2 < 1) {
      throw Error(ErrorKind::kDomainError, "iteration caps must be >= 1");
    }
    curves.push_back({std::string(1, id++), false, c1, c2});
  }
  curves.push_back({std::string(1, id), true, 0, 0});
  return curves;
}

double curve_value(const CurveSpec& curve, double alpha) {
  const double a2 = alpha * alpha;
  const double g2 = 1.0 - a2 - kSweepBetaSquared;
  if (!(alpha > 0.0) || a2 < kSweepBetaSquared - 1e-15 || !(g2 > 0.0)) {
    throw Error(ErrorKind::kDomainError,
                "alpha " + std::to_string(alpha) +
                    " outside [1/sqrt(3), sqrt(2/3))");
  }
  if (curve.current_protocol) {
    return analytic_total_probability(WCoefficients::from_weights(
        {a2, kSweepBetaSquared, g2}));
  }
  PriorEcpParams p{alpha, std::sqrt(kSweepBetaSquared), std::sqrt(g2),
                   curve.cap1, curve.cap2};
  return prior_total_prob(p);
}

std::vector<double> default_alpha_grid(std::size_t points) {
  const double lo = std::sqrt(1.0 / 3.0) + 1e-6;
  const double hi = std::sqrt(2.0 / 3.0) - 1e-6;
  std::vector<double> grid;
  grid.reserve(points);
  if (points == 1) {
    grid.push_back(0.5 * (lo + hi));
    return grid;
  }
  for (std::size_t i = 0; i < points; ++i) {
    grid.push_back(lo + (hi - lo) * static_cast<double>(i) /
                            static_cast<double>(points - 1));
  }
  return grid;
}

SweepTable figure3_sweep(const std::vector<double>& alpha_grid,
                         const std::vector<CurveSpec>& curves,
                         bool skip_invalid) {
  const double lo = std::sqrt(1.0 / 3.0);
  const double hi = std::sqrt(2.0 / 3.0);
  SweepTable table;
  table.rows.reserve(alpha_grid.size() * curves.size());
  for (double alpha : alpha_grid) {
    if (!(alpha > lo && alpha < hi)) {
      if (!skip_invalid) {
        throw Error(ErrorKind::kDomainError,
                    "alpha " + std::to_string(alpha) +
                        " violates |alpha| > |beta| > |gamma|");
      }
      ++table.omitted_points;
      continue;
    }
    for (const auto& curve : curves) {
      table.rows.push_back({alpha, curve.id, curve_value(curve, alpha)});
    }
  }
  return table;
}

}  // namespace wecp
