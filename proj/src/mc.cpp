#include "hessian/mc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "hessian/rng.hpp"
#include "hessian/spectral.hpp"

namespace hess {

McPolicy constant_policy(const ControlSet& controls, int index) {
  if (index < 0 || index >= static_cast<int>(controls.coeffs.size()))
    throw std::invalid_argument("constant_policy: index out of range");
  McPolicy p;
  p.controls = &controls;
  p.constant_index = index;
  return p;
}

McPolicy grid_policy(const ControlSet& controls, const Grid& grid, const GridSolution& sol) {
  McPolicy p;
  p.controls = &controls;
  p.grid = &grid;
  p.solution = &sol;
  return p;
}

namespace {

// Policy lookup at the nearest lattice node; if that node is exterior, scan
// its lattice neighborhood; fall back to the previous control.
int lookup_policy(const McPolicy& pol, const std::vector<double>& x, int prev) {
  if (pol.constant_index >= 0) return pol.constant_index;
  const Grid& g = *pol.grid;
  int d = g.dom.dim;
  std::vector<int> c(d);
  for (int i = 0; i < d; ++i) {
    int v = static_cast<int>(std::lround((x[i] - g.origin[i]) / g.h));
    c[i] = std::clamp(v, 0, g.extents[i] - 1);
  }
  int id = g.lattice_to_node[g.flat(c)];
  if (id >= 0) return pol.solution->policy[id];
  std::vector<int> probe = c;
  for (int axis = 0; axis < d; ++axis)
    for (int step : {-1, 1}) {
      probe[axis] = std::clamp(c[axis] + step, 0, g.extents[axis] - 1);
      id = g.lattice_to_node[g.flat(probe)];
      probe[axis] = c[axis];
      if (id >= 0) return pol.solution->policy[id];
    }
  return prev;
}

double segment_exit_fraction(const DomainGeometry& dom, const std::vector<double>& from,
                             const std::vector<double>& to, std::vector<double>& hit) {
  double lo = 0.0, hi = 1.0;
  std::vector<double> p(from.size());
  auto at = [&](double t) {
    for (size_t i = 0; i < from.size(); ++i) p[i] = from[i] + t * (to[i] - from[i]);
    return rho(dom, p);
  };
  for (int it = 0; it < 120; ++it) {
    double mid = 0.5 * (lo + hi);
    double r = at(mid);
    if (std::abs(r) <= 1e-10 || hi - lo <= 1e-16) {
      lo = hi = mid;
      break;
    }
    if (r < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  double t = 0.5 * (lo + hi);
  hit.resize(from.size());
  for (size_t i = 0; i < from.size(); ++i) hit[i] = from[i] + t * (to[i] - from[i]);
  return t;
}

// Pairwise (cascade) summation: deterministic, thread-count independent.
double pairwise_sum(const double* v, size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

}  // namespace

McEstimate mc_value(const DirichletProblem& prob, const std::vector<double>& x,
                    const McPolicy& policy, int n_paths, double dt, uint64_t seed, int threads,
                    long max_steps) {
  if (n_paths < 100) throw std::invalid_argument("mc_value: need at least 100 paths");
  if (dt <= 0.0) throw std::invalid_argument("mc_value: dt must be positive");
  if (!policy.controls) throw std::invalid_argument("mc_value: policy without control set");
  if (rho(prob.dom, x) >= 0.0)
    throw std::invalid_argument("mc_value: start point outside the domain");
  int d = prob.dom.dim;

  // per-control diffusion factors sqrt(2a)
  std::vector<Matrix> sigma;
  sigma.reserve(policy.controls->coeffs.size());
  for (const ControlCoefficients& cc : policy.controls->coeffs)
    sigma.push_back(psd_sqrt(cc.a * 2.0).full());

  std::vector<double> payoff(n_paths, 0.0);
  std::vector<long> censored_counts(std::max(threads, 1), 0);
  double sdt = std::sqrt(dt);

  auto run_range = [&](int begin, int end, int slot) {
    std::vector<double> cur(d), next(d), hit;
    for (int path = begin; path < end; ++path) {
      auto eng = make_engine(seed, 0x3C0000 + static_cast<uint64_t>(path));
      std::normal_distribution<double> gauss(0.0, 1.0);
      cur = x;
      double acc = 0.0;
      int ctrl = std::max(policy.constant_index, 0);
      bool exited = false;
      for (long step = 0; step < max_steps; ++step) {
        ctrl = lookup_policy(policy, cur, ctrl);
        const ControlCoefficients& cc = policy.controls->coeffs[ctrl];
        const Matrix& s = sigma[ctrl];
        for (int i = 0; i < d; ++i) next[i] = cur[i];
        for (int j = 0; j < d; ++j) {
          double xi = gauss(eng) * sdt;
          for (int i = 0; i < d; ++i) next[i] += s(i, j) * xi;
        }
        double run = cc.h * field_eval(prob.f, cur) * dt;
        if (rho(prob.dom, next) >= 0.0) {
          double frac = segment_exit_fraction(prob.dom, cur, next, hit);
          acc -= run * frac;
          acc += field_eval(prob.phi, hit);
          exited = true;
          break;
        }
        acc -= run;
        cur = next;
      }
      if (!exited) {
        // censored: settle at the radial projection of the current point
        ++censored_counts[slot];
        std::vector<double> c = domain_center(prob.dom), dir(d);
        for (int i = 0; i < d; ++i) dir[i] = cur[i] - c[i];
        if (norm2(dir) < 1e-12) dir[0] = 1.0;
        acc += field_eval(prob.phi, boundary_point(prob.dom, dir));
      }
      payoff[path] = acc;
    }
  };

  threads = std::max(threads, 1);
  if (threads == 1) {
    run_range(0, n_paths, 0);
  } else {
    std::vector<std::thread> pool;
    int chunk = (n_paths + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      int begin = t * chunk, end = std::min(n_paths, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(run_range, begin, end, t);
    }
    for (std::thread& th : pool) th.join();
  }

  McEstimate est;
  est.n_paths = n_paths;
  est.dt = dt;
  for (long c : censored_counts) est.censored_paths += c;
  est.policy = (policy.constant_index >= 0)
                   ? "constant[" + std::to_string(policy.constant_index) + "]"
                   : "grid-policy";
  est.mean = pairwise_sum(payoff.data(), payoff.size()) / n_paths;
  std::vector<double> sq(n_paths);
  for (int i = 0; i < n_paths; ++i) sq[i] = (payoff[i] - est.mean) * (payoff[i] - est.mean);
  double var = pairwise_sum(sq.data(), sq.size()) / (n_paths - 1);
  est.std_error = std::sqrt(var / n_paths);
  return est;
}

}  // namespace hess
