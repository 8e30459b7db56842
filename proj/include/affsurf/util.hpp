#pragma once

#include <cmath>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace affsurf {

inline constexpr double kPi = 3.14159265358979323846;

// Volume of the unit euclidean ball in R^n.
inline double unit_ball_volume(int n) {
  return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

// Exponent (n - p) / (n + p) extended continuously to p = +infinity.
inline double affine_exponent(int n, double p) {
  if (std::isinf(p)) return -1.0;
  return (static_cast<double>(n) - p) / (static_cast<double>(n) + p);
}

// Exponent p / (n + p), the curvature power, extended to p = +infinity.
inline double curvature_exponent(int n, double p) {
  if (std::isinf(p)) return 1.0;
  return p / (static_cast<double>(n) + p);
}

// Exponent n (p - 1) / (n + p) on the cone-measure weight, extended to
// p = +infinity.
inline double weight_exponent(int n, double p) {
  if (std::isinf(p)) return static_cast<double>(n);
  return static_cast<double>(n) * (p - 1.0) / (static_cast<double>(n) + p);
}

// Thread count taken from AFFSURF_THREADS (default 1).
inline int thread_count() {
  const char* env = std::getenv("AFFSURF_THREADS");
  if (!env) return 1;
  int k = std::atoi(env);
  if (k <= 0) return 1;
  return k;
}

// Index-parallel loop. Work item i writes only to slot i of caller-owned
// storage, so results are independent of the thread partition.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  int threads = thread_count();
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (count + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    std::size_t lo = static_cast<std::size_t>(t) * chunk;
    std::size_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

// Nodes and weights of the k-point Gauss-Legendre rule on [-1,1], computed
// by Newton iteration on the Legendre recurrence.
inline void gauss_legendre(int k, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(k, 0.0);
  weights.assign(k, 0.0);
  for (int i = 0; i < (k + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (k + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= k; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = k * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[k - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[k - 1 - i] = w;
  }
}

// Integrate f over [a,b] with a fixed 64-point Gauss-Legendre rule; exact to
// machine precision for smooth integrands on short spans.
inline double integrate_gl64(double a, double b, const std::function<double(double)>& f) {
  static std::vector<double> nodes, weights;
  if (nodes.empty()) gauss_legendre(64, nodes, weights);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(mid + half * nodes[i]);
  return s * half;
}

// Wrap an angle into [0, 2*pi).
inline double wrap_angle(double t) {
  double w = std::fmod(t, 2.0 * kPi);
  if (w < 0) w += 2.0 * kPi;
  return w;
}

}  // namespace affsurf
