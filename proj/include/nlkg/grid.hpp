#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nlkg {

/// Uniform radial grid on (0, R) with n interior nodes r_j = j*dr, dr = R/(n+1),
/// and the matching sine-series frequencies rho_k = k*pi/R (j, k = 1..n).
///
/// Fields on the grid carry w = r*u with homogeneous Dirichlet ends, so the
/// radial 3D Laplacian is diagonal (-rho^2) in the type-I sine basis.
class RadialGrid {
 public:
  /// Throws std::invalid_argument unless R > 0 and n >= 8 is a power of two.
  RadialGrid(double radius, std::size_t n);

  double radius() const { return radius_; }
  std::size_t size() const { return n_; }
  double dr() const { return radius_ / static_cast<double>(n_ + 1); }
  double dk() const;

  /// 0-based accessors: node(0) = dr, frequency(0) = pi/R.
  double node(std::size_t j) const { return static_cast<double>(j + 1) * dr(); }
  double frequency(std::size_t k) const { return static_cast<double>(k + 1) * dk(); }
  double max_frequency() const { return frequency(n_ - 1); }

  std::vector<double> nodes() const;
  std::vector<double> frequencies() const;

  friend bool operator==(const RadialGrid&, const RadialGrid&) = default;

 private:
  double radius_;
  std::size_t n_;
};

/// Samples u(r_j) of a radial function on R^3.
struct RadialField {
  RadialGrid grid;
  std::vector<double> values;

  explicit RadialField(const RadialGrid& g);
  RadialField(const RadialGrid& g, std::vector<double> v);

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t j) const { return values[j]; }
  double& operator[](std::size_t j) { return values[j]; }

  bool finite() const;

  RadialField& operator+=(const RadialField& o);
  RadialField& operator-=(const RadialField& o);
  RadialField& operator*=(double c);
};

RadialField operator+(RadialField a, const RadialField& b);
RadialField operator-(RadialField a, const RadialField& b);
RadialField operator*(double c, RadialField a);

/// Radial Fourier coefficients u^(rho_k) with the continuum convention
///   u^(rho) = (4 pi / rho) * int_0^inf sin(rho r) r u(r) dr.
struct SpectralField {
  RadialGrid grid;
  std::vector<double> coeffs;

  explicit SpectralField(const RadialGrid& g);
  SpectralField(const RadialGrid& g, std::vector<double> c);

  std::size_t size() const { return coeffs.size(); }
  double operator[](std::size_t k) const { return coeffs[k]; }
  double& operator[](std::size_t k) { return coeffs[k]; }
};

/// Throws std::invalid_argument when the two grids differ.
void require_same_grid(const RadialGrid& a, const RadialGrid& b);

bool is_power_of_two(std::size_t n);

}  // namespace nlkg
