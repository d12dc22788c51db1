#pragma once

// Derivative-free local/global maximisation helpers shared by the closed
// forms and the protocol simulation.

#include <functional>
#include <span>
#include <vector>

namespace cqt::detail {

struct Maximum1d {
  double x;
  double value;
};

/// Brent's method on [lo, hi]; the bracket must contain a local maximum.
Maximum1d brent_maximize(const std::function<double(double)>& f, double lo, double hi);

/// Global maximum of a 2 pi periodic function: uniform scan with `samples`
/// points, then Brent on the cell pair around the best sample.
double maximize_periodic(const std::function<double(double)>& f, int samples);

struct MaximumNd {
  std::vector<double> x;
  double value;
};

/// Nelder-Mead simplex (GSL nmsimplex2) started at x0 with per-coordinate
/// initial step sizes. Stops when the simplex size drops below `size_tol` or
/// after `max_iter` iterations.
MaximumNd simplex_maximize(const std::function<double(std::span<const double>)>& f,
                           std::vector<double> x0, std::vector<double> step, double size_tol,
                           int max_iter);

/// Cyclic coordinate Brent searches inside +/- `radius` of the current point,
/// repeated until a sweep improves the objective by less than `value_tol`.
MaximumNd coordinate_maximize(const std::function<double(std::span<const double>)>& f,
                              std::vector<double> x0, std::vector<double> radius, double value_tol,
                              int max_sweeps);

}  // namespace cqt::detail
