#include "disamb/hmodel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace disamb {
namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209;
constexpr double kPi = 3.14159265358979323846264338;

struct K01 {
  double k0;
  double k1;
};

// Ascending series, accurate for small arguments (used below x = 2):
//   I0 = sum u^k/(k!)^2,  u = x^2/4
//   K0 = -(ln(x/2)+gamma)*I0 + sum_{k>=1} H_k u^k/(k!)^2
//   I1 = (x/2) sum u^k/(k!(k+1)!)
//   K1 = 1/x + (ln(x/2)+gamma)*I1 - (x/4) sum (H_k+H_{k+1}) u^k/(k!(k+1)!)
K01 k01_series(double x) {
  double u = 0.25 * x * x;
  double lg = std::log(0.5 * x) + kEulerGamma;

  double term0 = 1.0;  // u^k/(k!)^2
  double i0 = 1.0;
  double s0 = 0.0;  // sum H_k u^k/(k!)^2
  double term1 = 1.0;  // u^k/(k!(k+1)!)
  double i1s = 1.0;
  double s1 = 1.0;  // sum (H_k + H_{k+1}) u^k/(k!(k+1)!), k=0 term = H_1 = 1
  double hk = 0.0;
  for (int k = 1; k < 80; ++k) {
    term0 *= u / (static_cast<double>(k) * k);
    term1 *= u / (static_cast<double>(k) * (k + 1));
    hk += 1.0 / k;
    double hk1 = hk + 1.0 / (k + 1);
    i0 += term0;
    s0 += term0 * hk;
    i1s += term1;
    s1 += term1 * (hk + hk1);
    if (term0 < 1e-19 * i0 && term1 < 1e-19 * i1s) break;
  }
  double i1 = 0.5 * x * i1s;
  K01 r;
  r.k0 = -lg * i0 + s0;
  r.k1 = 1.0 / x + lg * i1 - 0.25 * x * s1;
  return r;
}

// Steed-style continued fraction (CF2) for the exponentially scaled values,
// stable for x >= 2.
K01 k01_cf2(double x) {
  constexpr double kEps = 1e-16;
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  double a1 = 0.25;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i <= 15000; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) <= kEps) break;
  }
  h = a1 * h;
  K01 r;
  r.k0 = std::sqrt(kPi / (2.0 * x)) * std::exp(-x) / s;
  r.k1 = r.k0 * (x + 0.5 - h) / x;
  return r;
}

K01 k01(double x) {
  if (!(x > 0.0))
    throw std::domain_error("bessel_k: argument must be positive");
  return x < 2.0 ? k01_series(x) : k01_cf2(x);
}

}  // namespace

double bessel_k0(double x) { return k01(x).k0; }
double bessel_k1(double x) { return k01(x).k1; }

double pm_pdf(double h, const HModel& model) {
  if (!(model.m > 0.0)) throw std::domain_error("pm_pdf: m must be positive");
  if (!(h > 0.0)) throw std::domain_error("pm_pdf: h must be positive");
  return 2.0 / model.m * bessel_k0(2.0 * std::sqrt(h / model.m));
}

double pm_ccdf(double h, const HModel& model) {
  if (!(model.m > 0.0)) throw std::domain_error("pm_ccdf: m must be positive");
  if (h < 0.0) throw std::domain_error("pm_ccdf: h must be non-negative");
  if (h == 0.0) return 1.0;
  double z = 2.0 * std::sqrt(h / model.m);
  return z * bessel_k1(z);
}

BinnedDistribution log_bin(std::span<const std::uint32_t> values,
                           std::uint32_t linear_upto, int bins_per_decade) {
  if (values.empty()) throw std::invalid_argument("log_bin: empty input");
  if (bins_per_decade < 1)
    throw std::invalid_argument("log_bin: bins_per_decade must be >= 1");
  std::uint32_t lo = values[0], hi = values[0];
  for (std::uint32_t v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }

  BinnedDistribution bd;
  if (lo <= linear_upto) {
    std::uint32_t last_unit = std::min(hi, linear_upto);
    for (std::uint64_t e = lo; e <= static_cast<std::uint64_t>(last_unit) + 1;
         ++e)
      bd.edges.push_back(e);
  } else {
    bd.edges.push_back(lo);
  }
  if (hi >= bd.edges.back()) {
    // Logarithmic edges above the unit range, snapped to integers so that
    // integer data occupies bins exactly; snapping keeps edges strictly
    // increasing.
    double base = static_cast<double>(bd.edges.back());
    for (int k = 1; bd.edges.back() <= hi; ++k) {
      double raw = base * std::pow(10.0, static_cast<double>(k) /
                                             bins_per_decade);
      auto snapped = static_cast<std::uint64_t>(std::ceil(raw - 1e-9));
      bd.edges.push_back(std::max(bd.edges.back() + 1, snapped));
    }
  }

  bd.masses.assign(bd.edges.size() - 1, 0.0);
  bd.total = values.size();
  for (std::uint32_t v : values) {
    auto it = std::upper_bound(bd.edges.begin(), bd.edges.end(),
                               static_cast<std::uint64_t>(v));
    bd.masses[static_cast<std::size_t>(it - bd.edges.begin()) - 1] += 1.0;
  }
  for (double& m : bd.masses) m /= static_cast<double>(bd.total);
  return bd;
}

FitReport fit_m(const BinnedDistribution& binned, std::uint32_t support_min) {
  if (binned.edges.size() < 2 || binned.masses.size() + 1 != binned.edges.size())
    throw std::invalid_argument("fit_m: malformed binning");
  if (binned.edges.front() < support_min)
    throw std::invalid_argument("fit_m: bins extend below the fit support");
  std::size_t nonempty = 0;
  for (double m : binned.masses)
    if (m > 0.0) ++nonempty;
  if (nonempty < 3)
    throw std::invalid_argument("fit_m: need at least 3 nonempty bins");

  // Count-weighted least squares in log mass: var(log p̂) ≈ 1/count for a
  // Poisson bin, so an unweighted sum would be dominated by whichever
  // far-tail bin happens to catch one or two draws and the fitted m would
  // never stabilize with sample size.
  double wsum = 0.0;
  for (double m : binned.masses)
    if (m > 0.0) wsum += m * static_cast<double>(binned.total);
  auto objective = [&](double m) {
    HModel md{m};
    double denom = pm_ccdf(static_cast<double>(support_min), md);
    if (!(denom > 0.0)) return 1e300;
    double obj = 0.0;
    for (std::size_t b = 0; b < binned.masses.size(); ++b) {
      if (binned.masses[b] <= 0.0) continue;
      double model_mass = (pm_ccdf(static_cast<double>(binned.edges[b]), md) -
                           pm_ccdf(static_cast<double>(binned.edges[b + 1]), md)) /
                          denom;
      model_mass = std::max(model_mass, 1e-300);
      double d = std::log(binned.masses[b]) - std::log(model_mass);
      double w = binned.masses[b] * static_cast<double>(binned.total) / wsum;
      obj += w * d * d;
    }
    return obj;
  };

  // Golden section on log(m); unimodal in practice, and the bracket spans
  // the whole allowed range.
  const double golden = 0.6180339887498949;
  double a = std::log(1e-3), b = std::log(1e3);
  double x1 = b - golden * (b - a);
  double x2 = a + golden * (b - a);
  double f1 = objective(std::exp(x1));
  double f2 = objective(std::exp(x2));
  for (int it = 0; it < 200 && b - a > 1e-12; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - golden * (b - a);
      f1 = objective(std::exp(x1));
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + golden * (b - a);
      f2 = objective(std::exp(x2));
    }
  }
  FitReport rep;
  rep.model.m = std::exp(0.5 * (a + b));
  rep.residual = objective(rep.model.m);
  rep.bins_used = nonempty;
  return rep;
}

double pareto_ccdf(double h, double hmin) {
  if (!(hmin >= 1.0)) throw std::domain_error("pareto_ccdf: hmin must be >= 1");
  if (!(h >= hmin)) throw std::domain_error("pareto_ccdf: h must be >= hmin");
  double r = hmin / h;
  return r * r;
}

double crossover(const std::function<double(double)>& a,
                 const std::function<double(double)>& b, double lo,
                 double hi) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw std::invalid_argument("crossover: bad bracket");
  constexpr int kGrid = 2048;
  auto f = [&](double x) { return a(x) - b(x); };

  // Verify exactly one sign change on a fine grid, remembering where.
  int changes = 0;
  double seg_lo = lo, seg_hi = hi;
  double x_prev = lo;
  double f_prev = f(lo);
  int sign_prev = f_prev > 0 ? 1 : (f_prev < 0 ? -1 : 0);
  for (int k = 1; k <= kGrid; ++k) {
    double x = lo + (hi - lo) * static_cast<double>(k) / kGrid;
    double fx = f(x);
    int sign = fx > 0 ? 1 : (fx < 0 ? -1 : 0);
    if (sign != 0 && sign_prev != 0 && sign != sign_prev) {
      ++changes;
      seg_lo = x_prev;
      seg_hi = x;
    }
    if (sign != 0) {
      sign_prev = sign;
      x_prev = x;
    }
  }
  if (changes != 1)
    throw std::runtime_error("crossover: expected exactly one sign change, saw " +
                             std::to_string(changes));

  double fl = f(seg_lo);
  while (seg_hi - seg_lo > 1e-6) {
    double mid = 0.5 * (seg_lo + seg_hi);
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (fl > 0)) {
      seg_lo = mid;
      fl = fm;
    } else {
      seg_hi = mid;
    }
  }
  return 0.5 * (seg_lo + seg_hi);
}

}  // namespace disamb
