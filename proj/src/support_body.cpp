#include "affsurf/support_body.hpp"

#include <unsupported/Eigen/FFT>

#include "affsurf/errors.hpp"
#include "affsurf/util.hpp"

namespace affsurf {

namespace {

// Forward FFT of a real sample vector, unnormalized.
std::vector<std::complex<double>> forward_fft(const Eigen::VectorXd& samples) {
  Eigen::FFT<double> fft;
  std::vector<double> in(samples.data(), samples.data() + samples.size());
  std::vector<std::complex<double>> out;
  fft.fwd(out, in);
  return out;
}

Eigen::VectorXd inverse_fft_real(std::vector<std::complex<double>>& spec) {
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> out;
  fft.inv(out, spec);
  Eigen::VectorXd x(static_cast<int>(out.size()));
  for (std::size_t j = 0; j < out.size(); ++j) x[static_cast<int>(j)] = out[j].real();
  return x;
}

}  // namespace

double SupportBody2D::node_angle(int j) const {
  return 2.0 * kPi * static_cast<double>(j) / static_cast<double>(grid_size());
}

void SupportBody2D::build_series() {
  const int m = grid_size();
  auto spec = forward_fft(h_);
  modes_.clear();
  coeff_.clear();
  double peak = 0.0;
  for (int k = 0; k <= m / 2; ++k) peak = std::max(peak, std::abs(spec[k]));
  const double cut = 1e-15 * peak;
  for (int k = 0; k <= m / 2; ++k) {
    std::complex<double> c = spec[k] / static_cast<double>(m);
    if (k > 0 && k < m / 2) c *= 2.0;
    if (k == m / 2) c = std::complex<double>(c.real(), 0.0);
    if (std::abs(c) * static_cast<double>(m) > cut || k == 0) {
      modes_.push_back(k);
      coeff_.push_back(c);
    }
  }
}

SupportBody2D SupportBody2D::from_samples(const Eigen::VectorXd& h) {
  const int m = static_cast<int>(h.size());
  if (m < 8 || m % 2 != 0) throw InvalidInput("support grid must have even size >= 8");
  SupportBody2D b;
  b.h_ = h;
  // Spectral derivatives: multiply mode k by (i k); the Nyquist mode carries
  // only its cosine part, whose derivative vanishes at the nodes.
  auto spec = forward_fft(h);
  std::vector<std::complex<double>> d1(spec.size()), d2(spec.size());
  for (int k = 0; k < m; ++k) {
    int kk = (k <= m / 2) ? k : k - m;
    std::complex<double> ik(0.0, static_cast<double>(kk));
    d1[k] = (k == m / 2) ? std::complex<double>(0, 0) : ik * spec[k];
    d2[k] = -static_cast<double>(kk) * static_cast<double>(kk) * spec[k];
  }
  b.dh_ = inverse_fft_real(d1);
  b.ddh_ = inverse_fft_real(d2);
  b.build_series();
  b.validate();
  return b;
}

SupportBody2D SupportBody2D::from_function(const std::function<double(double)>& h,
                                           const std::function<double(double)>& dh,
                                           const std::function<double(double)>& ddh, int m) {
  if (m < 8 || m % 2 != 0) throw InvalidInput("support grid must have even size >= 8");
  SupportBody2D b;
  b.h_.resize(m);
  b.dh_.resize(m);
  b.ddh_.resize(m);
  for (int j = 0; j < m; ++j) {
    double t = 2.0 * kPi * j / m;
    b.h_[j] = h(t);
    b.dh_[j] = dh(t);
    b.ddh_[j] = ddh(t);
  }
  b.build_series();
  b.validate();
  return b;
}

SupportBody2D SupportBody2D::from_shape_matrix(const Eigen::Matrix2d& M, int m) {
  const double m11 = M(0, 0), m12 = M(0, 1), m22 = M(1, 1);
  auto f = [=](double t) {
    double c = std::cos(t), s = std::sin(t);
    return m11 * c * c + 2.0 * m12 * s * c + m22 * s * s;
  };
  auto fp = [=](double t) { return (m22 - m11) * std::sin(2 * t) + 2.0 * m12 * std::cos(2 * t); };
  auto fpp = [=](double t) { return 2 * (m22 - m11) * std::cos(2 * t) - 4.0 * m12 * std::sin(2 * t); };
  auto h = [=](double t) { return std::sqrt(f(t)); };
  auto dh = [=](double t) { return 0.5 * fp(t) / std::sqrt(f(t)); };
  auto ddh = [=](double t) {
    double v = f(t);
    return 0.5 * fpp(t) / std::sqrt(v) - 0.25 * fp(t) * fp(t) / std::pow(v, 1.5);
  };
  return from_function(h, dh, ddh, m);
}

SupportBody2D SupportBody2D::disk(double r, int m) {
  return from_function([r](double) { return r; }, [](double) { return 0.0; },
                       [](double) { return 0.0; }, m);
}

SupportBody2D SupportBody2D::ellipse(double a, double b, double angle, int m) {
  Eigen::Vector2d u(std::cos(angle), std::sin(angle));
  Eigen::Vector2d v(-std::sin(angle), std::cos(angle));
  Eigen::Matrix2d M = a * a * u * u.transpose() + b * b * v * v.transpose();
  return from_shape_matrix(M, m);
}

double SupportBody2D::h_at(double theta) const {
  double s = 0.0;
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    double kt = modes_[i] * theta;
    s += coeff_[i].real() * std::cos(kt) - coeff_[i].imag() * std::sin(kt);
  }
  return s;
}

double SupportBody2D::dh_at(double theta) const {
  double s = 0.0;
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    double k = modes_[i];
    double kt = k * theta;
    s += -k * (coeff_[i].real() * std::sin(kt) + coeff_[i].imag() * std::cos(kt));
  }
  return s;
}

double SupportBody2D::ddh_at(double theta) const {
  double s = 0.0;
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    double k = modes_[i];
    double kt = k * theta;
    s += -k * k * (coeff_[i].real() * std::cos(kt) - coeff_[i].imag() * std::sin(kt));
  }
  return s;
}

Eigen::Vector2d SupportBody2D::boundary_point(double theta) const {
  double h = h_at(theta), hp = dh_at(theta);
  Eigen::Vector2d u(std::cos(theta), std::sin(theta));
  Eigen::Vector2d uperp(-std::sin(theta), std::cos(theta));
  return h * u + hp * uperp;
}

Eigen::Vector2d SupportBody2D::boundary_point_node(int j) const {
  double t = node_angle(j);
  Eigen::Vector2d u(std::cos(t), std::sin(t));
  Eigen::Vector2d uperp(-std::sin(t), std::cos(t));
  return h_[j] * u + dh_[j] * uperp;
}

double SupportBody2D::min_curvature_radius() const {
  double r = h_[0] + ddh_[0];
  for (int j = 1; j < grid_size(); ++j) r = std::min(r, h_[j] + ddh_[j]);
  return r;
}

double SupportBody2D::area() const {
  const int m = grid_size();
  double s = 0.0;
  for (int j = 0; j < m; ++j) s += h_[j] * (h_[j] + ddh_[j]);
  return 0.5 * s * 2.0 * kPi / m;
}

Eigen::Vector2d SupportBody2D::centroid_integral() const {
  const int m = grid_size();
  Eigen::Vector2d s = Eigen::Vector2d::Zero();
  for (int j = 0; j < m; ++j) {
    double w = h_[j] * (h_[j] + ddh_[j]);
    s += w * boundary_point_node(j);
  }
  return s * (2.0 * kPi / m) / 3.0;
}

Eigen::Matrix2d SupportBody2D::second_moment() const {
  const int m = grid_size();
  Eigen::Matrix2d s = Eigen::Matrix2d::Zero();
  for (int j = 0; j < m; ++j) {
    double w = h_[j] * (h_[j] + ddh_[j]);
    Eigen::Vector2d x = boundary_point_node(j);
    s += w * x * x.transpose();
  }
  return s * (2.0 * kPi / m) / 4.0;
}

SupportBody2D SupportBody2D::translated(const Eigen::Vector2d& shift) const {
  SupportBody2D b;
  const int m = grid_size();
  b.h_.resize(m);
  b.dh_.resize(m);
  b.ddh_.resize(m);
  for (int j = 0; j < m; ++j) {
    double t = node_angle(j);
    double c = std::cos(t), s = std::sin(t);
    double dot = shift.x() * c + shift.y() * s;
    b.h_[j] = h_[j] + dot;
    b.dh_[j] = dh_[j] - shift.x() * s + shift.y() * c;
    // (d/dtheta)^2 of the shift term is its own negative, so the curvature
    // radius h + h'' is unchanged while h'' itself shifts by -<shift, u>.
    b.ddh_[j] = ddh_[j] - dot;
  }
  b.build_series();
  b.validate();
  return b;
}

void SupportBody2D::validate() const {
  for (int j = 0; j < grid_size(); ++j)
    if (!(h_[j] > 0.0)) throw OriginNotInterior("support function must be positive");
  for (int j = 0; j < grid_size(); ++j)
    if (!(h_[j] + ddh_[j] > 0.0))
      throw NonConvexBody("curvature radius h + h'' must be positive on the grid");
}

}  // namespace affsurf
