#pragma once

#include <Eigen/Dense>

#include <functional>

namespace lindgeo {

struct NelderMeadOptions {
  int max_evaluations = 20000;
  double x_tolerance = 1e-10;
  double f_tolerance = 1e-13;
  double initial_step = 0.05;
  int restarts = 2;  // fresh simplex around the best point after convergence
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Minimises `f` with the dimension-adaptive simplex coefficients
/// (reflection 1, expansion 1+2/n, contraction 3/4-1/(2n), shrink 1-1/n).
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x0,
                             const NelderMeadOptions& options = {});

}  // namespace lindgeo
