#include "lindgeo/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace lindgeo {

namespace {

struct Simplex {
  std::vector<Eigen::VectorXd> points;
  std::vector<double> values;

  void sort() {
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<Eigen::VectorXd> p;
    std::vector<double> v;
    for (std::size_t i : order) {
      p.push_back(points[i]);
      v.push_back(values[i]);
    }
    points = std::move(p);
    values = std::move(v);
  }
};

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x0,
                             const NelderMeadOptions& options) {
  const Eigen::Index n = x0.size();
  const double dn = static_cast<double>(n);
  const double alpha = 1.0;
  const double gamma = 1.0 + 2.0 / dn;
  const double rho = 0.75 - 0.5 / dn;
  const double sigma = 1.0 - 1.0 / dn;

  NelderMeadResult result;
  int evals = 0;
  auto eval = [&](const Eigen::VectorXd& x) {
    ++evals;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  Eigen::VectorXd best = x0;
  double best_value = eval(x0);

  for (int round = 0; round <= options.restarts; ++round) {
    Simplex s;
    s.points.push_back(best);
    s.values.push_back(best_value);
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::VectorXd p = best;
      p(i) += (p(i) != 0.0 ? std::copysign(options.initial_step, p(i)) : options.initial_step);
      s.points.push_back(p);
      s.values.push_back(eval(p));
    }
    bool converged = false;
    while (evals < options.max_evaluations) {
      s.sort();
      double xspread = 0.0;
      for (std::size_t i = 1; i < s.points.size(); ++i) {
        xspread = std::max(xspread, (s.points[i] - s.points[0]).cwiseAbs().maxCoeff());
      }
      const double fspread = std::abs(s.values.back() - s.values.front());
      if (xspread <= options.x_tolerance && fspread <= options.f_tolerance) {
        converged = true;
        break;
      }
      Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
      for (Eigen::Index i = 0; i < n; ++i) centroid += s.points[static_cast<std::size_t>(i)];
      centroid /= dn;
      const Eigen::VectorXd& worst = s.points.back();

      const Eigen::VectorXd xr = centroid + alpha * (centroid - worst);
      const double fr = eval(xr);
      if (fr < s.values.front()) {
        const Eigen::VectorXd xe = centroid + gamma * (xr - centroid);
        const double fe = eval(xe);
        if (fe < fr) {
          s.points.back() = xe;
          s.values.back() = fe;
        } else {
          s.points.back() = xr;
          s.values.back() = fr;
        }
        continue;
      }
      if (fr < s.values[static_cast<std::size_t>(n - 1)]) {
        s.points.back() = xr;
        s.values.back() = fr;
        continue;
      }
      const bool outside = fr < s.values.back();
      const Eigen::VectorXd xc =
          outside ? Eigen::VectorXd(centroid + rho * (xr - centroid)) : Eigen::VectorXd(centroid + rho * (worst - centroid));
      const double fc = eval(xc);
      if (fc < (outside ? fr : s.values.back())) {
        s.points.back() = xc;
        s.values.back() = fc;
        continue;
      }
      for (std::size_t i = 1; i < s.points.size(); ++i) {
        s.points[i] = s.points[0] + sigma * (s.points[i] - s.points[0]);
        s.values[i] = eval(s.points[i]);
      }
    }
    s.sort();
    const double improvement = best_value - s.values.front();
    best = s.points.front();
    best_value = s.values.front();
    result.converged = converged;
    if (!converged || (round > 0 && improvement <= options.f_tolerance)) break;
  }

  result.x = best;
  result.value = best_value;
  result.evaluations = evals;
  return result;
}

}  // namespace lindgeo
