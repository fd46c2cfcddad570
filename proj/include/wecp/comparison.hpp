#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace wecp {

// Closed-form success probabilities of the earlier iterative W-state ECP
// (auxiliary-photon scheme, repeated rounds), for comparison with the
// single-shot linear-optics protocol.

inline constexpr int kDefaultPriorCap = 25;

/// Moduli of the three-photon W coefficients plus round caps.
struct PriorEcpParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  int iterations_step1 = kDefaultPriorCap;
  int iterations_step2 = kDefaultPriorCap;

  /// Throws DomainError unless each modulus is in (0, 1), the squares sum to
  /// one within 1e-9, and both caps are positive.
  void validate() const;
};

/// Probability that the first step succeeds in round n (n >= 1).
double prior_step1_prob(const PriorEcpParams& p, int n);

/// Probability that the second step succeeds in round m (m >= 1).
double prior_step2_prob(const PriorEcpParams& p, int m);

/// (sum_{n <= cap1} P1_n) * (sum_{m <= cap2} P2_m).
double prior_total_prob(const PriorEcpParams& p);

/// A comparison curve: either the prior ECP with fixed round caps, or the
/// single-shot protocol (3 gamma^2).
struct CurveSpec {
  std::string id;
  bool current_protocol = false;
  int cap1 = 0;
  int cap2 = 0;
};

/// Caps (1,1), (3,3), (5,5) as A, B, C and the single-shot protocol as D.
std::vector<CurveSpec> default_curves();

/// Curves A, B, ... for the given caps followed by one current-protocol
/// curve labelled with the next letter.
std::vector<CurveSpec> curves_for_caps(
    const std::vector<std::pair<int, int>>& caps);

// beta is fixed at 1/sqrt(3) and gamma^2 = 1 - alpha^2 - beta^2.
inline constexpr double kSweepBetaSquared = 1.0 / 3.0;

/// Value of one curve at `alpha`. Accepts the closed interval
/// [1/sqrt(3), sqrt(2/3)) so the equal-weight endpoint can be evaluated;
/// throws DomainError outside it.
double curve_value(const CurveSpec& curve, double alpha);

/// `points` alphas uniformly spaced over the open interval
/// (1/sqrt(3), sqrt(2/3)), with the first and last point 1e-6 inside.
std::vector<double> default_alpha_grid(std::size_t points = 200);

struct SweepRow {
  double alpha = 0.0;
  std::string curve_id;
  double probability = 0.0;
};

struct SweepTable {
  std::vector<SweepRow> rows;
  /// Grid points rejected by the domain check (lenient sweeps only).
  std::size_t omitted_points = 0;
};

/// Rows ordered by alpha, then curve. A point outside the open interval
/// (where |alpha| > |beta| > |gamma| fails) throws DomainError unless
/// `skip_invalid` is set, in which case it is counted and skipped.
SweepTable figure3_sweep(const std::vector<double>& alpha_grid,
                         const std::vector<CurveSpec>& curves,
                         bool skip_invalid = false);

}  // namespace wecp
