#include "spdc/roots.hpp"

#include <cmath>
#include <cstdint>

#include <boost/math/tools/toms748_solve.hpp>
#include <fmt/format.h>

#include "spdc/error.hpp"

namespace spdc::roots {

std::vector<Interval> scan_sign_changes(const std::function<double(double)>& f, double lo,
                                        double hi, int points) {
  if (!(hi > lo) || points < 2) {
    throw UsageError(fmt::format("invalid scan window [{}, {}] with {} points", lo, hi, points));
  }
  std::vector<Interval> out;
  const double step = (hi - lo) / (points - 1);
  double x_prev = lo;
  double f_prev = f(lo);
  for (int i = 1; i < points; ++i) {
    const double x = i == points - 1 ? hi : lo + i * step;
    const double fx = f(x);
    if (f_prev == 0.0) {
      out.push_back({x_prev, x_prev});
    } else if (std::signbit(f_prev) != std::signbit(fx) && fx != 0.0) {
      out.push_back({x_prev, x});
    }
    x_prev = x;
    f_prev = fx;
  }
  if (f_prev == 0.0) out.push_back({x_prev, x_prev});
  return out;
}

Root solve_bracketed(const std::function<double(double)>& f, double lo, double hi, double tol,
                     int max_iterations) {
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return {lo, 0.0, 0};
  if (fhi == 0.0) return {hi, 0.0, 0};
  if (std::signbit(flo) == std::signbit(fhi)) {
    throw NoRootError(fmt::format("no sign change on [{:.12g}, {:.12g}] (f = {:.6g}, {:.6g})", lo,
                                  hi, flo, fhi));
  }
  std::uintmax_t iterations = static_cast<std::uintmax_t>(max_iterations);
  const auto converged = [tol](double a, double b) { return std::abs(b - a) <= tol; };
  // TOMS 748: bracketing with inverse cubic / secant steps, falling back to bisection.
  const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, converged, iterations);
  if (!converged(a, b)) {
    throw SolverError(fmt::format("root solver did not converge in {} iterations; last bracket "
                                  "[{:.15g}, {:.15g}]",
                                  max_iterations, a, b),
                      a, b);
  }
  const double fa = f(a);
  const double fb = f(b);
  const bool pick_a = std::abs(fa) <= std::abs(fb);
  return {pick_a ? a : b, pick_a ? fa : fb, static_cast<int>(iterations)};
}

ScanResult find_first_root(const std::function<double(double)>& f, double lo, double hi,
                           double tol, int points) {
  ScanResult result{};
  result.sign_changes = scan_sign_changes(f, lo, hi, points);
  if (result.sign_changes.empty()) {
    throw NoRootError(fmt::format("no sign change found in [{:.12g}, {:.12g}]", lo, hi));
  }
  if (result.sign_changes.size() > 1) {
    std::string list;
    for (const auto& iv : result.sign_changes) {
      list += fmt::format(" [{:.9g}, {:.9g}]", iv.lo, iv.hi);
    }
    result.warnings.push_back(
        fmt::format("{} sign changes found; returning the lowest. Intervals:{}",
                    result.sign_changes.size(), list));
  }
  const auto& first = result.sign_changes.front();
  if (first.lo == first.hi) {
    result.root = {first.lo, f(first.lo), 0};
  } else {
    result.root = solve_bracketed(f, first.lo, first.hi, tol);
  }
  return result;
}

}  // namespace spdc::roots
