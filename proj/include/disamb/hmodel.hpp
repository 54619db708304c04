// Theoretical h-index distribution: Bessel-K special functions, the
// product-of-exponentials density and CCDF, log binning, least-squares
// fitting of the scale parameter, and Pareto-comparison utilities.
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace disamb {

// Modified Bessel functions of the second kind, orders 0 and 1.
// Relative error <= 1e-10 on [1e-6, 700]; results underflow to 0 for very
// large x. x <= 0 raises std::domain_error.
double bessel_k0(double x);
double bessel_k1(double x);

struct HModel {
  double m = 1.0;  // scale: distribution mean = m, std = sqrt(3)*m
};

// Density (2/m)*K0(2*sqrt(h/m)) for h > 0.
double pm_pdf(double h, const HModel& model);

// P(H >= h): 2*sqrt(h/m)*K1(2*sqrt(h/m)) for h > 0, exactly 1 at h = 0.
double pm_ccdf(double h, const HModel& model);

struct BinnedDistribution {
  std::vector<std::uint64_t> edges;  // strictly increasing; bin k = [e_k, e_{k+1})
  std::vector<double> masses;        // counts / total, one per bin
  std::uint64_t total = 0;
};

// Unit-width bins up to linear_upto, then logarithmic edges snapped to
// integers (so integer-valued data fills bins exactly), bins_per_decade
// edges per factor of 10. Empty input raises std::invalid_argument.
BinnedDistribution log_bin(std::span<const std::uint32_t> values,
                           std::uint32_t linear_upto = 10,
                           int bins_per_decade = 5);

struct FitReport {
  HModel model;
  double residual = 0.0;    // count-weighted mean squared log-mass difference
  std::size_t bins_used = 0;  // nonempty bins entering the fit
};

// Least squares in log-mass space between empirical bin masses and model
// bin masses (density integrated over each bin, renormalized to
// [support_min, inf)), each bin weighted by its count so sparse tail bins
// cannot dominate; golden-section scan of m over [1e-3, 1e3].
FitReport fit_m(const BinnedDistribution& binned, std::uint32_t support_min);

// (hmin/h)^2, normalized so the value at hmin is 1. Requires h >= hmin >= 1.
double pareto_ccdf(double h, double hmin);

// The unique point in [lo, hi] where a(h) - b(h) changes sign, found by a
// grid scan (which verifies uniqueness) plus bisection to |err| <= 1e-6.
// Zero or multiple sign changes raise std::runtime_error.
double crossover(const std::function<double(double)>& a,
                 const std::function<double(double)>& b, double lo, double hi);

}  // namespace disamb
