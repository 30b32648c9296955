#include "dualfrenet/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "dualfrenet/errors.hpp"

namespace dualfrenet {
namespace {

// Kronrod-15 abscissae on [0, 1] side (symmetric) and weights; the embedded
// Gauss-7 rule sits on the odd-index nodes.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct GkResult {
  DualScalar value;
  double error;
};

GkResult gk15(const std::function<DualScalar(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  DualScalar kron{0.0, 0.0};
  DualScalar gauss{0.0, 0.0};
  for (int i = 0; i < 8; ++i) {
    DualScalar fsum;
    if (i == 7) {
      fsum = f(center);
    } else {
      const double dx = half * kXgk[i];
      fsum = f(center - dx) + f(center + dx);
    }
    kron += DualScalar{kWgk[i]} * fsum;
    if (i % 2 == 1) gauss += DualScalar{kWg[i / 2]} * fsum;
  }
  kron = DualScalar{half} * kron;
  gauss = DualScalar{half} * gauss;
  const DualScalar diff = kron - gauss;
  return {kron, std::max(std::abs(diff.re), std::abs(diff.du))};
}

void integrate_rec(const std::function<DualScalar(double)>& f, double a, double b,
                   double tol_local, int depth, DualScalar& acc) {
  const GkResult r = gk15(f, a, b);
  if (r.error <= tol_local || depth >= 48) {
    acc += r.value;
    return;
  }
  const double mid = 0.5 * (a + b);
  integrate_rec(f, a, mid, 0.5 * tol_local, depth + 1, acc);
  integrate_rec(f, mid, b, 0.5 * tol_local, depth + 1, acc);
}

} // namespace

DualScalar integrate(const std::function<DualScalar(double)>& f, double a, double b,
                     double abs_tol) {
  if (a == b) return {0.0, 0.0};
  DualScalar acc{0.0, 0.0};
  integrate_rec(f, a, b, abs_tol, 0, acc);
  return checked(acc, "quadrature");
}

std::vector<double> fd_weights(double x0, const std::vector<double>& nodes, int order) {
  // Fornberg (1988): weights for derivatives 0..order at x0 on arbitrary
  // nodes; only the top order is returned.
  const int n = static_cast<int>(nodes.size());
  const int m = order;
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k)
        c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][m];
  return w;
}

std::vector<double> stencil_offsets(double t, double h, double t_lo, double t_hi) {
  // Ideal centered window; slide it whole into the domain if it pokes out.
  double lo = t - 2 * h;
  if (lo < t_lo) lo = t_lo;
  if (lo + 4 * h > t_hi) lo = t_hi - 4 * h;
  std::vector<double> off(5);
  for (int i = 0; i < 5; ++i) off[i] = (lo + i * h) - t;
  return off;
}

double guarded_newton(const std::function<double(double)>& f,
                      const std::function<double(double)>& df, double lo, double hi, double x0,
                      double x_tol) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0))
    raise(ErrorCode::NoCorrespondence, "root not bracketed");
  double x = std::clamp(x0, lo, hi);
  for (int it = 0; it < 100; ++it) {
    const double fx = f(x);
    if ((fx > 0) == (fhi > 0)) {
      hi = x;
      fhi = fx;
    } else {
      lo = x;
      flo = fx;
    }
    const double d = df(x);
    double next = (d != 0.0) ? x - fx / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= x_tol) return next;
    x = next;
  }
  return x;
}

void unwrap_angles(std::vector<double>& angles) {
  constexpr double kPi = 3.14159265358979323846;
  double shift = 0.0;
  for (std::size_t i = 1; i < angles.size(); ++i) {
    const double prev = angles[i - 1];
    double cur = angles[i] + shift;
    while (cur - prev > kPi) {
      cur -= 2 * kPi;
      shift -= 2 * kPi;
    }
    while (prev - cur > kPi) {
      cur += 2 * kPi;
      shift += 2 * kPi;
    }
    angles[i] = cur;
  }
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, bool parallel) {
  if (!parallel || n < 256) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(std::thread::hardware_concurrency(), 8);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

} // namespace dualfrenet
