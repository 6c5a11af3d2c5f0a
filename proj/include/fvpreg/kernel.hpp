#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "fvpreg/trajectory.hpp"

namespace fvpreg {

/// Exact integrals of e^{lambda (s - t)} against a locally interpolated
/// sample series w(s) on a uniform grid.
///
/// On interval [t_k, t_{k+1}] the samples are interpolated by the cubic
/// through four consecutive nodes: t_{k-1}..t_{k+2} in the interior, shifted
/// to t_0..t_3 on the first interval and t_{n-3}..t_n on the last. The
/// exponential against that cubic is integrated exactly through the moments
/// M_m(x) = int_0^1 e^{x theta} theta^m d theta, so the only error is the
/// O(h^4) interpolation error of w. Grids need at least 3 steps.

/// M_m(x) for m = 0..3 and x >= 0. Small x uses the power series, which is
/// the cancellation-free form of (e^x - 1 - x)/x^2 and its relatives.
std::array<long double, 4> exp_moments(long double x);

/// Per-node weights of one interval: int_0^1 e^{x theta} L_m(theta) d theta
/// where L_m are the Lagrange basis polynomials on `nodes` (offsets in steps
/// relative to the interval's left end).
std::array<long double, 4> interval_weights(long double x, const std::array<int, 4>& nodes);

/// Index of the first stencil node used on interval k of an n-step grid.
std::size_t stencil_start(std::size_t n_steps, std::size_t k);

/// int_{t_i}^{tau} e^{lambda (s - t_i)} w(s) ds for a single grid index,
/// summed interval by interval with directly evaluated exponentials.
double kernel_integral(double lambda, const TimeGrid& grid, std::size_t i,
                       std::span<const double> w);

/// The same integral at every grid index via the backward recurrence
/// I_i = (interval i contribution) + e^{lambda h} I_{i+1}, accumulated in
/// extended precision so the repeated growth factor does not drift.
void kernel_integrals(double lambda, const TimeGrid& grid, std::span<const double> w,
                      std::span<double> out);
std::vector<double> kernel_integrals(double lambda, const TimeGrid& grid,
                                     std::span<const double> w);

/// int_{t_i}^{tau} w(s) ds at every grid index (lambda = 0).
std::vector<double> tail_integrals(const TimeGrid& grid, std::span<const double> w);

}  // namespace fvpreg
