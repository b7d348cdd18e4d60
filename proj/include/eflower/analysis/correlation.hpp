#ifndef EFLOWER_ANALYSIS_CORRELATION_HPP
#define EFLOWER_ANALYSIS_CORRELATION_HPP

#include <cmath>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "eflower/error.hpp"

namespace eflower::analysis {

enum class DecayVerdict { exponential, power, inconclusive };

inline std::string_view to_string(DecayVerdict v) {
  switch (v) {
    case DecayVerdict::exponential: return "exponential";
    case DecayVerdict::power: return "power";
    case DecayVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // root-mean-square of the residuals
};

struct DecayFit {
  std::vector<double> autocorrelation;  // lags 0..K
  double noise_floor = 0.0;
  std::size_t usable_lags = 0;
  double exp_rate = 0.0;       // C(k) ~ exp(-rate k)
  double exp_residual = 0.0;
  double power_exponent = 0.0;  // C(k) ~ k^exponent
  double power_residual = 0.0;
  DecayVerdict verdict = DecayVerdict::inconclusive;
  std::string note;
};

inline constexpr std::size_t kMinUsableLags = 5;
inline constexpr double kVerdictMargin = 2.0;

inline LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  LineFit f;
  const double den = n * sxx - sx * sx;
  f.slope = den != 0.0 ? (n * sxy - sx * sy) / den : 0.0;
  f.intercept = (sy - f.slope * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss += r * r;
  }
  f.residual = std::sqrt(ss / n);
  return f;
}

/// Normalized autocovariance for lags 0..max_lag. A constant series has
/// C(k) = 1 at every lag.
inline std::vector<double> autocorrelation(const std::vector<double>& series, std::size_t max_lag) {
  const std::size_t n = series.size();
  double mean = 0.0;
  for (double x : series) mean += x;
  mean /= static_cast<double>(n);
  std::vector<double> centered(n);
  for (std::size_t i = 0; i < n; ++i) centered[i] = series[i] - mean;
  double var = 0.0;
  for (double x : centered) var += x * x;
  std::vector<double> c(max_lag + 1, 1.0);
  if (!(var > 1e-300 * static_cast<double>(n))) return c;
  for (std::size_t k = 1; k <= max_lag; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i + k < n; ++i) acc += centered[i] * centered[i + k];
    c[k] = acc / var;
  }
  return c;
}

/// Fits exponential and power-law decay to |C(k)| on the leading run of
/// lags k >= 1 that stay above the noise floor. The floor at lag k is
/// widened by Bartlett's factor sqrt(1 + 2 sum_{j<k} C(j)^2), so for an
/// uncorrelated series it is the plain white-noise floor.
inline DecayFit fit_decay(std::vector<double> c, double noise_floor) {
  DecayFit fit;
  fit.autocorrelation = std::move(c);
  fit.noise_floor = noise_floor;
  std::vector<double> k_lin, k_log, y;
  double bartlett = 1.0;
  for (std::size_t k = 1; k < fit.autocorrelation.size(); ++k) {
    const double v = std::abs(fit.autocorrelation[k]);
    if (!(v > noise_floor * std::sqrt(bartlett))) break;
    bartlett += 2.0 * fit.autocorrelation[k] * fit.autocorrelation[k];
    k_lin.push_back(static_cast<double>(k));
    k_log.push_back(std::log(static_cast<double>(k)));
    y.push_back(std::log(v));
  }
  fit.usable_lags = y.size();
  if (fit.usable_lags < kMinUsableLags) {
    fit.note = "fewer than " + std::to_string(kMinUsableLags) + " lags above the noise floor";
    return fit;
  }
  const LineFit e = least_squares(k_lin, y);
  const LineFit p = least_squares(k_log, y);
  fit.exp_rate = -e.slope;
  fit.exp_residual = e.residual;
  fit.power_exponent = p.slope;
  fit.power_residual = p.residual;
  if (!(fit.exp_rate > 0.0) && !(fit.power_exponent < 0.0)) {
    fit.note = "no decay";
  } else if (kVerdictMargin * fit.exp_residual < fit.power_residual) {
    fit.verdict = DecayVerdict::exponential;
  } else if (kVerdictMargin * fit.power_residual < fit.exp_residual) {
    fit.verdict = DecayVerdict::power;
  } else {
    fit.note = "residuals within the margin factor";
  }
  return fit;
}

/// Autocorrelation of `series` up to lag K with fits above the 3/sqrt(n)
/// noise floor.
inline DecayFit autocorrelation_decay(const std::vector<double>& series, std::size_t max_lag) {
  if (max_lag == 0 || series.size() < 10 * max_lag) {
    throw Error(ErrorCode::invalid_parameter, "series length must be at least 10 x max lag");
  }
  return fit_decay(autocorrelation(series, max_lag), 3.0 / std::sqrt(static_cast<double>(series.size())));
}

}  // namespace eflower::analysis

#endif  // EFLOWER_ANALYSIS_CORRELATION_HPP
