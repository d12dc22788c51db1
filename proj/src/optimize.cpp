#include "cqt/detail/optimize.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/tools/minima.hpp>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

namespace cqt::detail {

Maximum1d brent_maximize(const std::function<double(double)>& f, double lo, double hi) {
  const int bits = std::numeric_limits<double>::digits / 2;
  boost::uintmax_t iters = 200;
  const auto [x, negv] =
      boost::math::tools::brent_find_minima([&](double t) { return -f(t); }, lo, hi, bits, iters);
  return {x, -negv};
}

double maximize_periodic(const std::function<double(double)>& f, int samples) {
  const double step = 2.0 * std::numbers::pi / samples;
  int best = 0;
  double best_value = f(0.0);
  for (int k = 1; k < samples; ++k) {
    const double v = f(k * step);
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  const auto refined = brent_maximize(f, (best - 1) * step, (best + 1) * step);
  return std::max(best_value, refined.value);
}

namespace {

struct GslCallback {
  const std::function<double(std::span<const double>)>* f;
  std::size_t n;
};

double gsl_trampoline(const gsl_vector* v, void* params) {
  const auto* cb = static_cast<const GslCallback*>(params);
  std::vector<double> x(cb->n);
  for (std::size_t i = 0; i < cb->n; ++i) x[i] = gsl_vector_get(v, i);
  return -(*cb->f)(x);
}

}  // namespace

MaximumNd simplex_maximize(const std::function<double(std::span<const double>)>& f,
                           std::vector<double> x0, std::vector<double> step, double size_tol,
                           int max_iter) {
  static const bool handler_off = [] {
    gsl_set_error_handler_off();
    return true;
  }();
  (void)handler_off;
  const std::size_t n = x0.size();
  GslCallback cb{&f, n};
  gsl_multimin_function fn{&gsl_trampoline, n, &cb};

  gsl_vector* x = gsl_vector_alloc(n);
  gsl_vector* ss = gsl_vector_alloc(n);
  for (std::size_t i = 0; i < n; ++i) {
    gsl_vector_set(x, i, x0[i]);
    gsl_vector_set(ss, i, step[i]);
  }
  gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n);
  gsl_multimin_fminimizer_set(s, &fn, x, ss);
  for (int it = 0; it < max_iter; ++it) {
    if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), size_tol) == GSL_SUCCESS) break;
  }
  MaximumNd out{std::vector<double>(n), -gsl_multimin_fminimizer_minimum(s)};
  const gsl_vector* best = gsl_multimin_fminimizer_x(s);
  for (std::size_t i = 0; i < n; ++i) out.x[i] = gsl_vector_get(best, i);
  gsl_multimin_fminimizer_free(s);
  gsl_vector_free(ss);
  gsl_vector_free(x);
  return out;
}

MaximumNd coordinate_maximize(const std::function<double(std::span<const double>)>& f,
                              std::vector<double> x0, std::vector<double> radius, double value_tol,
                              int max_sweeps) {
  MaximumNd cur{std::move(x0), 0.0};
  cur.value = f(cur.x);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    const double before = cur.value;
    for (std::size_t i = 0; i < cur.x.size(); ++i) {
      std::vector<double> probe = cur.x;
      const double centre = cur.x[i];
      const auto line = [&](double t) {
        probe[i] = t;
        return f(probe);
      };
      const auto m = brent_maximize(line, centre - radius[i], centre + radius[i]);
      if (m.value > cur.value) {
        cur.x[i] = m.x;
        cur.value = m.value;
      }
    }
    if (cur.value - before < value_tol) break;
  }
  return cur;
}

}  // namespace cqt::detail
