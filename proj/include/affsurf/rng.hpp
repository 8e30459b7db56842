#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <random>

namespace affsurf {

// splitmix64, used to expand one user seed into decorrelated stream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d4a2fd17619838ULL;
  return z ^ (z >> 31);
}

// Deterministic random stream. The raw generator is std::mt19937_64 (its
// output sequence is pinned by the standard); the distribution transforms
// live here because std::uniform_real_distribution and friends are not
// implementation-stable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
    std::uint64_t s = seed ^ (0xd1b54a32d192ed03ULL * (stream + 1));
    gen_.seed(splitmix64(s));
  }

  // Uniform in [0,1), 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n) {
    return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)) % n;
  }

  // Standard normal via the Marsaglia polar method.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

  Eigen::VectorXd gaussian_vector(int n) {
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x[i] = normal();
    return x;
  }

  // Uniform direction on the unit sphere S^{n-1}.
  Eigen::VectorXd sphere_direction(int n) {
    Eigen::VectorXd x = gaussian_vector(n);
    double r = x.norm();
    while (r < 1e-12) {
      x = gaussian_vector(n);
      r = x.norm();
    }
    return x / r;
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace affsurf
