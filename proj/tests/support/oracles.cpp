#include "oracles.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace sdpfeas::testing {

double integrate(const std::function<double(double)>& f, double a, double b, double tol,
                 int depth) {
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, static_cast<unsigned>(depth), tol);
}

double RefHazard::z(double t) const {
  switch (family) {
    case Weibull: return K * std::pow(t, m);
    case Nld: return K / std::sqrt(t);
    case Ld: return K - m * t;
    case Nli: return K * t * t;
    case Li: return K * t;
    case Constant: return lambda;
  }
  return 0.0;
}

double reliability_by_quadrature(const RefHazard& h, double t) {
  if (t == 0.0) return 1.0;
  double H = 0.0;
  if (h.family == RefHazard::Nld) {
    // x = u^2, dx = 2u du: K/u * 2u = 2K on [0, sqrt t].
    H = integrate([&](double u) { return h.z(u * u) * 2.0 * u; }, 0.0, std::sqrt(t));
  } else if (h.family == RefHazard::Weibull && h.m < 0.0) {
    // u = x^(m+1): K x^m dx = K / (m+1) du.
    const double e = h.m + 1.0;
    H = integrate(
        [&](double u) {
          const double x = std::pow(u, 1.0 / e);
          return u == 0.0 ? h.K / e : h.z(x) * x / (e * u);
        },
        0.0, std::pow(t, e));
  } else {
    H = integrate([&](double x) { return h.z(x); }, 0.0, t);
  }
  return std::exp(-H);
}

long double naive_binomial_cdf(unsigned l, long double p, int k) {
  if (k < 0) return 0.0L;
  long double sum = 0.0L;
  long double choose = 1.0L;
  for (unsigned j = 0; j <= static_cast<unsigned>(k) && j <= l; ++j) {
    if (j > 0) choose = choose * static_cast<long double>(l - j + 1) / static_cast<long double>(j);
    sum += choose * std::pow(p, static_cast<long double>(j)) *
           std::pow(1.0L - p, static_cast<long double>(l - j));
  }
  return sum;
}

namespace printed {

// Evaluated in long double so the reference is more accurate than the
// double-precision code under test.
namespace {
using R = long double;
R e(R x) { return std::exp(x); }
R pw(R b, R x) { return std::pow(b, x); }
R mu_r(R l, R p, R t) { return e(l * p * (e(-t) - 1)); }
double out(R x) { return static_cast<double>(x); }
}  // namespace

double theorem1(double l, double p, double K, double m, double t) {
  const R mu = R(l) * p;
  const R z = R(K) * pw(t, m);
  return out(e(-(mu - z) * (mu - z) / (2 * mu)));
}

double theorem2(double l, double p, double K, double m, double t) {
  const R E = e(R(l) * p * (e(-R(t)) - 1));
  const R c = R(K) * pw(t, m) / (R(m) + 1);
  return out(e(-(E - c) * (E - c) * (1 / (2 * E))));
}

double theorem3(double l, double p, double K_hat, double m_hat, double K, double m, double t) {
  const R mu = R(l) * p * K_hat * pw(t, m_hat);
  const R c = R(K) * pw(t, m);
  return out(e(-(mu - c) * (mu - c) / (2 * R(l) * p * K_hat * pw(t, m_hat))));
}

double theorem4_as_published(double l, double p, double K_hat, double m_hat, double K, double m,
                             double t) {
  const R E = e(R(l) * p * (e(R(K_hat) * pw(t, R(m_hat) + 1)) - 1));
  const R c = R(K) * pw(t, m) / (R(m) + 1);
  return out(e(-(E - c) * (E - c) / (2 * E)));
}

double theorem4_corrected(double l, double p, double K_hat, double m_hat, double K, double m,
                          double t) {
  const R E = e(R(l) * p * (e(-R(K_hat) * pw(t, R(m_hat) + 1)) - 1));
  const R c = R(K) * pw(t, m) / (R(m) + 1);
  return out(e(-(E - c) * (E - c) / (2 * E)));
}

double corollary1(double l, double p, double K, double t) {
  const R mu = R(l) * p;
  const R d = std::sqrt(R(t)) * mu - K;
  return out(e(-d * d / (2 * mu * t)));
}

double corollary2(double l, double p, double K, double t) {
  const R d = e(R(l) * p * (e(-R(t)) - 1)) - 2 * R(K) / std::sqrt(R(t));
  return out(e(-e(R(l) * p * (1 - e(-R(t)))) / 2 * d * d));
}

double corollary3(double l, double p, double K, double m, double t) {
  const R mu = R(l) * p;
  const R d = mu - K + R(m) * t;
  return out(e(-d * d / (2 * mu)));
}

double corollary4(double l, double p, double K, double m, double t) {
  const R d = 2 * e(R(l) * p * (e(-R(t)) - 1)) - 2 * R(K) + R(m) * t;
  return out(e(-e(R(l) * p * (1 - e(-R(t)))) * d * d / 8));
}

double corollary5(double l, double p, double K, double t) {
  const R mu = R(l) * p;
  const R d = mu - R(K) * t * t;
  return out(e(-d * d / (2 * mu)));
}

double corollary6(double l, double p, double K, double t) {
  const R d = 3 * e(R(l) * p * (e(-R(t)) - 1)) - R(K) * t * t;
  return out(e(-e(R(l) * p * (1 - e(-R(t)))) * d * d / 18));
}

double corollary7(double l, double p, double K, double t) {
  const R mu = R(l) * p;
  const R d = mu - R(K) * t;
  return out(e(-d * d / (2 * mu)));
}

double corollary8(double l, double p, double K, double t) {
  const R E = mu_r(l, p, t);
  const R d = 2 * E - R(K) * t;
  return out(e(-d * d / (8 * E)));
}

double corollary9(double l, double p, double lambda) {
  const R mu = R(l) * p;
  return out(e(-(mu - lambda) * (mu - lambda) / (2 * mu)));
}

double corollary10(double l, double p, double lambda, double t) {
  const R E = mu_r(l, p, t);
  return out(e(-(E - lambda) * (E - lambda) / (2 * E)));
}

}  // namespace printed

}  // namespace sdpfeas::testing
