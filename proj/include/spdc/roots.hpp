#pragma once

#include <functional>
#include <string>
#include <vector>

namespace spdc::roots {

struct Interval {
  double lo;
  double hi;
};

/// Uniform scan of f over [lo, hi]; returns every sub-interval where f changes sign
/// (including exact zeros at scan nodes), ordered by increasing abscissa.
std::vector<Interval> scan_sign_changes(const std::function<double(double)>& f, double lo,
                                        double hi, int points = 2000);

struct Root {
  double x;
  double residual;
  int iterations;
};

/// Bracketed root of f in [lo, hi] to absolute tolerance `tol` in x.
/// Throws NoRootError without a sign change, SolverError on non-convergence.
Root solve_bracketed(const std::function<double(double)>& f, double lo, double hi, double tol,
                     int max_iterations = 200);

struct ScanResult {
  Root root;
  std::vector<Interval> sign_changes;
  std::vector<std::string> warnings;
};

/// Scan, then refine the lowest sign change. Multiple sign changes produce a warning.
ScanResult find_first_root(const std::function<double(double)>& f, double lo, double hi,
                           double tol, int points = 2000);

}  // namespace spdc::roots
