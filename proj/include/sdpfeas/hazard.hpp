#pragma once

// Hazard-rate families for manually tested software.
//
//   family                 z(t)          H(t) = int_0^t z
//   Weibull                K t^m         K t^(m+1) / (m+1)     K > 0, m > -1
//   NonLinearDecreasing    K / sqrt(t)   2 K sqrt(t)           K > 0
//   LinearDecreasing       K - m t       K t - m t^2 / 2       K > 0, m > 0, t <= K/m
//   NonLinearIncreasing    K t^2         K t^3 / 3             K > 0
//   LinearIncreasing       K t           K t^2 / 2             K > 0
//   Constant               lambda        lambda t              lambda > 0
//
// Reliability is R(t) = exp(-H(t)). All evaluation uses the closed forms.

#include <string>
#include <string_view>

#include "sdpfeas/errors.hpp"

namespace sdpfeas {

enum class HazardFamily {
  Weibull,
  NonLinearDecreasing,
  LinearDecreasing,
  NonLinearIncreasing,
  LinearIncreasing,
  Constant,
};

// Short descriptor names: weibull, nld, ld, nli, li, constant.
std::string_view family_name(HazardFamily family) noexcept;
HazardFamily family_from_name(std::string_view name);

class HazardModel {
 public:
  static HazardModel weibull(double K, double m);
  static HazardModel non_linear_decreasing(double K);
  static HazardModel linear_decreasing(double K, double m);
  static HazardModel non_linear_increasing(double K);
  static HazardModel linear_increasing(double K);
  static HazardModel constant(double lambda);

  HazardFamily family() const noexcept { return family_; }
  double K() const noexcept { return K_; }
  double m() const noexcept { return m_; }
  double lambda() const noexcept { return lambda_; }

  // Largest admissible time; +inf except for LinearDecreasing (K/m).
  double time_limit() const noexcept;

 private:
  HazardModel(HazardFamily family, double K, double m, double lambda)
      : family_(family), K_(K), m_(m), lambda_(lambda) {}

  HazardFamily family_;
  double K_;
  double m_;
  double lambda_;
};

// z(t). Requires t > 0 where the curve is singular at the origin
// (nld, Weibull with m < 0) and t >= 0 otherwise.
double hazard_at(const HazardModel& model, double t);

// H(t), defined for t >= 0 within the family domain; H(0) = 0.
double cumulative_hazard(const HazardModel& model, double t);

double reliability_at(const HazardModel& model, double t);

// c(t) = H(t) / t, the hazard-level threshold that a reliability comparison
// reduces to: exp(-X t) > R(t)  <=>  X < c(t). Requires t > 0.
double reliability_tail_threshold(const HazardModel& model, double t);

}  // namespace sdpfeas
