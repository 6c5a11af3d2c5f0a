#include "fvpreg/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fvpreg/errors.hpp"

namespace fvpreg {
namespace {

using Poly = std::array<long double, 4>;  // ascending powers of theta

Poly lagrange_basis(const std::array<int, 4>& nodes, std::size_t m) {
  Poly p{1.0L, 0.0L, 0.0L, 0.0L};
  std::size_t degree = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    if (k == m) continue;
    const long double denom = static_cast<long double>(nodes[m] - nodes[k]);
    const long double root = static_cast<long double>(nodes[k]);
    // p <- p * (theta - root) / denom
    Poly next{};
    for (std::size_t d = 0; d <= degree; ++d) {
      next[d + 1] += p[d] / denom;
      next[d] -= root * p[d] / denom;
    }
    p = next;
    ++degree;
  }
  return p;
}

struct StencilWeights {
  std::array<long double, 4> left;
  std::array<long double, 4> interior;
  std::array<long double, 4> right;
};

constexpr std::array<int, 4> kLeftNodes{0, 1, 2, 3};
constexpr std::array<int, 4> kInteriorNodes{-1, 0, 1, 2};
constexpr std::array<int, 4> kRightNodes{-2, -1, 0, 1};

StencilWeights stencil_weights(long double x) {
  return {interval_weights(x, kLeftNodes), interval_weights(x, kInteriorNodes),
          interval_weights(x, kRightNodes)};
}

const std::array<long double, 4>& weights_for(const StencilWeights& sw, std::size_t n_steps,
                                              std::size_t k) {
  if (k == 0) return sw.left;
  if (k + 1 == n_steps) return sw.right;
  return sw.interior;
}

void check_inputs(double lambda, const TimeGrid& grid, std::span<const double> w) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw ContractError("kernel rate lambda must be finite and non-negative");
  if (grid.n_steps() < 3) throw ContractError("kernel quadrature needs at least 3 grid steps");
  if (w.size() != grid.size()) throw ContractError("sample series does not match the grid");
  if (lambda * grid.tau() > kMaxExpArgument)
    throw OverflowError("e^{lambda tau} leaves the double range (lambda = " +
                        std::to_string(lambda) + ")");
}

}  // namespace

std::array<long double, 4> exp_moments(long double x) {
  std::array<long double, 4> M{};
  if (x < 2.0L) {
    // M_m(x) = sum_k x^k / (k! (m + k + 1))
    long double term = 1.0L;  // x^k / k!
    for (int k = 0; k < 80; ++k) {
      for (int m = 0; m < 4; ++m) M[m] += term / static_cast<long double>(m + k + 1);
      term *= x / static_cast<long double>(k + 1);
      if (std::abs(term) < 1e-24L) break;
    }
    return M;
  }
  const long double ex = std::exp(x);
  M[0] = std::expm1(x) / x;
  for (int m = 1; m < 4; ++m) M[m] = (ex - static_cast<long double>(m) * M[m - 1]) / x;
  return M;
}

std::array<long double, 4> interval_weights(long double x, const std::array<int, 4>& nodes) {
  const auto M = exp_moments(x);
  std::array<long double, 4> w{};
  for (std::size_t m = 0; m < 4; ++m) {
    const Poly p = lagrange_basis(nodes, m);
    for (std::size_t d = 0; d < 4; ++d) w[m] += p[d] * M[d];
  }
  return w;
}

std::size_t stencil_start(std::size_t n_steps, std::size_t k) {
  if (k == 0) return 0;
  return std::min(k - 1, n_steps - 3);
}

double kernel_integral(double lambda, const TimeGrid& grid, std::size_t i,
                       std::span<const double> w) {
  check_inputs(lambda, grid, w);
  const std::size_t n = grid.n_steps();
  if (i > n) throw RangeError("grid index out of range");
  const double h = grid.step();
  const StencilWeights sw = stencil_weights(static_cast<long double>(lambda * h));
  double sum = 0.0;
  for (std::size_t k = i; k < n; ++k) {
    const auto& wt = weights_for(sw, n, k);
    const std::size_t f = stencil_start(n, k);
    double local = 0.0;
    for (std::size_t m = 0; m < 4; ++m) local += static_cast<double>(wt[m]) * w[f + m];
    sum += std::exp(lambda * h * static_cast<double>(k - i)) * h * local;
  }
  return sum;
}

void kernel_integrals(double lambda, const TimeGrid& grid, std::span<const double> w,
                      std::span<double> out) {
  check_inputs(lambda, grid, w);
  if (out.size() != grid.size()) throw ContractError("output series does not match the grid");
  const std::size_t n = grid.n_steps();
  const long double h = static_cast<long double>(grid.step());
  const long double x = static_cast<long double>(lambda) * h;
  const StencilWeights sw = stencil_weights(x);
  const long double growth = std::exp(x);

  long double acc = 0.0L;
  out[n] = 0.0;
  for (std::size_t k = n; k-- > 0;) {
    const auto& wt = weights_for(sw, n, k);
    const std::size_t f = stencil_start(n, k);
    long double local = 0.0L;
    for (std::size_t m = 0; m < 4; ++m) local += wt[m] * static_cast<long double>(w[f + m]);
    acc = h * local + growth * acc;
    out[k] = static_cast<double>(acc);
    if (!std::isfinite(out[k]))
      throw OverflowError("kernel integral left the double range");
  }
}

std::vector<double> kernel_integrals(double lambda, const TimeGrid& grid,
                                     std::span<const double> w) {
  std::vector<double> out(grid.size());
  kernel_integrals(lambda, grid, w, out);
  return out;
}

std::vector<double> tail_integrals(const TimeGrid& grid, std::span<const double> w) {
  return kernel_integrals(0.0, grid, w);
}

}  // namespace fvpreg
