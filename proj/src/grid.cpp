#include "nlkg/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nlkg {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

RadialGrid::RadialGrid(double radius, std::size_t n) : radius_(radius), n_(n) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("grid.R must be positive and finite");
  }
  if (n < 8 || !is_power_of_two(n)) {
    throw std::invalid_argument("grid.n must be a power of two >= 8, got " + std::to_string(n));
  }
}

double RadialGrid::dk() const { return std::numbers::pi / radius_; }

std::vector<double> RadialGrid::nodes() const {
  std::vector<double> r(n_);
  for (std::size_t j = 0; j < n_; ++j) r[j] = node(j);
  return r;
}

std::vector<double> RadialGrid::frequencies() const {
  std::vector<double> k(n_);
  for (std::size_t j = 0; j < n_; ++j) k[j] = frequency(j);
  return k;
}

void require_same_grid(const RadialGrid& a, const RadialGrid& b) {
  if (!(a == b)) throw std::invalid_argument("fields live on different radial grids");
}

RadialField::RadialField(const RadialGrid& g) : grid(g), values(g.size(), 0.0) {}

RadialField::RadialField(const RadialGrid& g, std::vector<double> v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.size()) throw std::invalid_argument("field length does not match grid");
}

bool RadialField::finite() const {
  for (double v : values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

RadialField& RadialField::operator+=(const RadialField& o) {
  require_same_grid(grid, o.grid);
  for (std::size_t j = 0; j < values.size(); ++j) values[j] += o.values[j];
  return *this;
}

RadialField& RadialField::operator-=(const RadialField& o) {
  require_same_grid(grid, o.grid);
  for (std::size_t j = 0; j < values.size(); ++j) values[j] -= o.values[j];
  return *this;
}

RadialField& RadialField::operator*=(double c) {
  for (double& v : values) v *= c;
  return *this;
}

RadialField operator+(RadialField a, const RadialField& b) { return a += b; }
RadialField operator-(RadialField a, const RadialField& b) { return a -= b; }
RadialField operator*(double c, RadialField a) { return a *= c; }

SpectralField::SpectralField(const RadialGrid& g) : grid(g), coeffs(g.size(), 0.0) {}

SpectralField::SpectralField(const RadialGrid& g, std::vector<double> c) : grid(g), coeffs(std::move(c)) {
  if (coeffs.size() != grid.size()) throw std::invalid_argument("spectrum length does not match grid");
}

}  // namespace nlkg
