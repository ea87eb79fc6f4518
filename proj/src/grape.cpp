/* Copyright 2026 The QSL Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "qsl/grape.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "parallel.h"

namespace qsl {

void validate(const OptimizationConfig &c) {
  if (c.slice_count < 2)
    throw InvalidArgument("slice_count must be >= 2");
  if (std::isnan(c.f_max) || !(c.f_max > 0.0))
    throw InvalidArgument("f_max must be positive");
  if (!(c.threshold > 0.0))
    throw InvalidArgument("threshold must be positive");
  if (c.max_iterations < 0)
    throw InvalidArgument("max_iterations must be nonnegative");
  if (c.restarts < 1)
    throw InvalidArgument("restarts must be >= 1");
  if (!(c.step.initial_step > 0.0))
    throw InvalidArgument("initial_step must be positive");
  if (!(c.step.backtrack_factor > 0.0 && c.step.backtrack_factor < 1.0))
    throw InvalidArgument("backtrack_factor must lie in (0, 1)");
  if (c.step.max_backtracks < 1)
    throw InvalidArgument("max_backtracks must be >= 1");
  if (c.initial_amplitude && !(*c.initial_amplitude > 0.0 && std::isfinite(*c.initial_amplitude)))
    throw InvalidArgument("initial_amplitude must be positive and finite");
  if (c.stall_window < 1)
    throw InvalidArgument("stall_window must be >= 1");
}

double infidelity(const TargetGate &gate, const ComplexMatrix &achieved) {
  if (achieved.rows() != gate.dim() || achieved.cols() != gate.dim())
    throw InvalidArgument("infidelity: dimension mismatch");
  const double d = static_cast<double>(gate.dim());
  const complex overlap = (gate.matrix().conjugate().cwiseProduct(achieved)).sum();
  return std::clamp(1.0 - std::norm(overlap) / (d * d), 0.0, 1.0);
}

double infidelity(const TargetGate &gate, const UnitaryOperator &achieved) {
  return infidelity(gate, achieved.matrix());
}

GrapeObjective::GrapeObjective(const ControlSystem &system, const TargetGate &gate,
                               double slice_duration)
    : h0_(system.drift().matrix()),
      hc_(system.control().matrix()),
      gate_adjoint_(gate.matrix().adjoint()),
      dt_(slice_duration),
      d_(system.dim()) {
  if (gate.dim() != system.dim())
    throw InvalidArgument("gate and system dimensions differ");
  if (!(dt_ > 0.0) || !std::isfinite(dt_))
    throw InvalidArgument("slice duration must be positive and finite");
}

namespace {

struct SliceSpectrum {
  RealVector eigenvalues;
  ComplexMatrix vectors;
  ComplexMatrix propagator;
};

SliceSpectrum slice_spectrum(const ComplexMatrix &h, double dt) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw NumericError("slice eigendecomposition failed");
  SliceSpectrum s{solver.eigenvalues(), solver.eigenvectors(), {}};
  Eigen::VectorXcd phases(s.eigenvalues.size());
  for (Eigen::Index j = 0; j < phases.size(); ++j)
    phases(j) = std::polar(1.0, -dt * s.eigenvalues(j));
  s.propagator = s.vectors * phases.asDiagonal() * s.vectors.adjoint();
  return s;
}

// (e^{-i dt a} - e^{-i dt b}) / (a - b), written through sin so that it stays
// accurate as a -> b, where it tends to -i dt e^{-i dt a}.
complex divided_difference(double a, double b, double dt) {
  const double delta = a - b;
  const double half = 0.5 * dt * delta;
  const double sinc = std::abs(half) < 1e-8 ? 1.0 - half * half / 6.0 : std::sin(half) / half;
  return complex(0.0, -dt) * sinc * std::polar(1.0, -0.5 * dt * (a + b));
}

double overlap_infidelity(const complex &overlap, double d) {
  return std::clamp(1.0 - std::norm(overlap) / (d * d), 0.0, 1.0);
}

}  // namespace

double GrapeObjective::value(const std::vector<double> &amplitudes) const {
  ComplexMatrix u = ComplexMatrix::Identity(d_, d_);
  for (double f : amplitudes)
    u = slice_spectrum(h0_ + f * hc_, dt_).propagator * u;
  const complex overlap = (gate_adjoint_ * u).trace();
  return overlap_infidelity(overlap, static_cast<double>(d_));
}

double GrapeObjective::value_and_gradient(const std::vector<double> &amplitudes,
                                          std::vector<double> &grad) const {
  const std::size_t n = amplitudes.size();
  std::vector<SliceSpectrum> slices;
  slices.reserve(n);
  // forward[k] = U_k ... U_1, forward[0] = 1
  std::vector<ComplexMatrix> forward(n + 1);
  forward[0] = ComplexMatrix::Identity(d_, d_);
  for (std::size_t k = 0; k < n; ++k) {
    slices.push_back(slice_spectrum(h0_ + amplitudes[k] * hc_, dt_));
    forward[k + 1] = slices[k].propagator * forward[k];
  }
  const complex overlap = (gate_adjoint_ * forward[n]).trace();
  const double d = static_cast<double>(d_);

  grad.assign(n, 0.0);
  // backward = G^dagger U_n ... U_{k+1}
  ComplexMatrix backward = gate_adjoint_;
  for (std::size_t k = n; k-- > 0;) {
    const SliceSpectrum &s = slices[k];
    // d overlap / d f_k = tr(backward V (M o W) V^dagger forward[k])
    //                   = sum_ij P_ji M_ij W_ij,  P = V^dagger forward[k] backward V
    const ComplexMatrix w = s.vectors.adjoint() * hc_ * s.vectors;
    const ComplexMatrix p = s.vectors.adjoint() * forward[k] * backward * s.vectors;
    complex d_overlap = 0.0;
    for (Eigen::Index i = 0; i < d_; ++i)
      for (Eigen::Index j = 0; j < d_; ++j)
        d_overlap += p(j, i) * divided_difference(s.eigenvalues(i), s.eigenvalues(j), dt_) * w(i, j);
    grad[k] = -2.0 * (std::conj(overlap) * d_overlap).real() / (d * d);
    backward = backward * s.propagator;
  }
  return overlap_infidelity(overlap, d);
}

std::vector<double> gradient(const ControlSystem &system, const TargetGate &gate,
                             const PulseSchedule &pulse) {
  GrapeObjective objective(system, gate, pulse.slice_duration());
  std::vector<double> g;
  objective.value_and_gradient(pulse.amplitudes(), g);
  return g;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t cell, std::uint64_t restart) {
  // splitmix64 finalizer chained over the three components
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(seed) ^ cell) ^ restart);
}

namespace {

struct RunOutcome {
  std::vector<double> amplitudes;
  std::vector<double> trace;
  double infidelity = 1.0;
  int iterations = 0;
};

void project(std::vector<double> &x, double bound) {
  if (std::isinf(bound))
    return;
  for (double &v : x)
    v = std::clamp(v, -bound, bound);
}

RunOutcome run_descent(const GrapeObjective &objective, const OptimizationConfig &config,
                       std::vector<double> x) {
  constexpr double kArmijo = 1e-4;
  constexpr double kMinStep = 1e-300;
  constexpr double kMaxStep = 1e12;
  const std::size_t n = x.size();
  project(x, config.f_max);

  RunOutcome out;
  std::vector<double> g;
  double eps = objective.value_and_gradient(x, g);
  out.trace.push_back(eps);

  double step = config.step.initial_step;
  std::vector<double> candidate(n), g_new;
  for (int iter = 0; iter < config.max_iterations && eps >= config.threshold; ++iter) {
    bool accepted = false;
    double eps_new = eps;
    double trial = step;
    for (int b = 0; b < config.step.max_backtracks; ++b) {
      double decrease = 0.0;
      bool moved = false;
      for (std::size_t k = 0; k < n; ++k) {
        candidate[k] = x[k] - trial * g[k];
      }
      project(candidate, config.f_max);
      for (std::size_t k = 0; k < n; ++k) {
        decrease += g[k] * (x[k] - candidate[k]);
        moved = moved || candidate[k] != x[k];
      }
      if (!moved)
        break;  // projected gradient vanishes: stationary on the box
      eps_new = objective.value(candidate);
      if (eps_new < eps && eps_new <= eps - kArmijo * decrease) {
        accepted = true;
        break;
      }
      trial *= config.step.backtrack_factor;
    }
    if (!accepted)
      break;

    objective.value_and_gradient(candidate, g_new);
    if (config.step.barzilai_borwein) {
      double ss = 0.0, sy = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double s = candidate[k] - x[k];
        const double y = g_new[k] - g[k];
        ss += s * s;
        sy += s * y;
      }
      step = sy > 0.0 ? std::clamp(ss / sy, kMinStep, kMaxStep)
                      : std::min(kMaxStep, 2.0 * trial);
    } else {
      step = trial;
    }
    x.swap(candidate);
    g.swap(g_new);
    eps = eps_new;
    out.trace.push_back(eps);
    ++out.iterations;

    const auto w = static_cast<std::size_t>(config.stall_window);
    if (out.trace.size() > w) {
      const double earlier = out.trace[out.trace.size() - 1 - w];
      if (earlier - eps < config.stall_tolerance * eps)
        break;
    }
  }
  out.amplitudes = std::move(x);
  out.infidelity = eps;
  return out;
}

double initial_half_width(const ControlSystem &system, const OptimizationConfig &config) {
  if (std::isfinite(config.f_max))
    return config.f_max;
  if (config.initial_amplitude)
    return *config.initial_amplitude;
  return frobenius_norm(system.drift().matrix()) / frobenius_norm(system.control().matrix());
}

OptimizationResult to_result(RunOutcome run, double dt, const OptimizationConfig &config,
                             int restart) {
  std::optional<double> bound;
  if (std::isfinite(config.f_max))
    bound = config.f_max;
  OptimizationResult r{PulseSchedule(std::move(run.amplitudes), dt, bound), run.infidelity,
                       std::move(run.trace), run.infidelity < config.threshold, restart,
                       run.iterations};
  return r;
}

void check_time(double total_time) {
  if (!(total_time > 0.0) || !std::isfinite(total_time))
    throw InvalidArgument("total time must be positive and finite");
}

}  // namespace

OptimizationResult optimize_from(const ControlSystem &system, const TargetGate &gate,
                                 double total_time, const OptimizationConfig &config,
                                 std::vector<double> initial) {
  validate(config);
  check_time(total_time);
  if (initial.size() != static_cast<std::size_t>(config.slice_count))
    throw InvalidArgument("initial pulse length differs from slice_count");
  const double dt = total_time / config.slice_count;
  GrapeObjective objective(system, gate, dt);
  return to_result(run_descent(objective, config, std::move(initial)), dt, config, 0);
}

OptimizationResult optimize(const ControlSystem &system, const TargetGate &gate,
                            double total_time, const OptimizationConfig &config,
                            std::uint64_t cell) {
  validate(config);
  check_time(total_time);
  const double dt = total_time / config.slice_count;
  GrapeObjective objective(system, gate, dt);
  const double half_width = initial_half_width(system, config);

  std::optional<RunOutcome> best;
  int best_restart = 0;
  for (int r = 0; r < config.restarts; ++r) {
    std::mt19937_64 rng(derive_seed(config.rng_seed, cell, static_cast<std::uint64_t>(r)));
    std::uniform_real_distribution<double> dist(-half_width, half_width);
    std::vector<double> x(config.slice_count);
    for (double &v : x)
      v = dist(rng);
    RunOutcome run = run_descent(objective, config, std::move(x));
    if (!best || run.infidelity < best->infidelity) {
      best = std::move(run);
      best_restart = r;
    }
    if (best->infidelity < config.threshold)
      break;
  }
  return to_result(std::move(*best), dt, config, best_restart);
}

MinTimeEstimate min_time_search(const ControlSystem &system, const TargetGate &gate,
                                const OptimizationConfig &config, double t_low, double t_high,
                                int scan_points, const MinTimeOptions &options) {
  if (!(t_low > 0.0 && t_low < t_high) || !std::isfinite(t_high))
    throw InvalidArgument("min_time_search needs 0 < t_low < t_high");
  if (scan_points < 2)
    throw InvalidArgument("min_time_search needs at least 2 scan points");
  if (!(options.bisection_tolerance > 0.0))
    throw InvalidArgument("bisection tolerance must be positive");

  MinTimeEstimate estimate;
  std::uint64_t cell = 0;
  auto attempt = [&](double t, bool bisection) {
    const auto r = optimize(system, gate, t, config, cell++);
    estimate.scan.push_back({t, r.converged, r.final_infidelity, bisection});
    return r.converged;
  };

  std::optional<double> last_fail;
  for (int i = 0; i < scan_points; ++i) {
    const double t = t_low + (t_high - t_low) * i / (scan_points - 1);
    if (attempt(t, false)) {
      estimate.t_star_upper = t;
      break;
    }
    last_fail = t;
  }
  if (!estimate.t_star_upper || !options.refine || !last_fail)
    return estimate;

  double lo = *last_fail;
  double hi = *estimate.t_star_upper;
  while (hi - lo > options.bisection_tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (attempt(mid, true))
      hi = mid;
    else
      lo = mid;
  }
  estimate.t_star_upper = hi;
  return estimate;
}

ParetoSweep pareto_sweep(const ControlSystem &system, const TargetGate &gate,
                         const std::vector<double> &times, const std::vector<double> &field_bounds,
                         const OptimizationConfig &config, int threads) {
  if (times.empty() || field_bounds.empty())
    throw InvalidArgument("pareto_sweep needs nonempty grids");
  validate(config);
  ParetoSweep sweep;
  sweep.times = times;
  sweep.field_bounds = field_bounds;
  sweep.infidelity.assign(times.size(), std::vector<double>(field_bounds.size(), 1.0));
  sweep.converged.assign(times.size(), std::vector<bool>(field_bounds.size(), false));
  const BoundEvaluator evaluator(system);
  for (double f : field_bounds)
    sweep.boundary_time.push_back(evaluator.combined(gate, f));

  const std::size_t nf = field_bounds.size();
  std::vector<double> eps(times.size() * nf, 1.0);
  detail::parallel_for(times.size() * nf, threads, [&](std::size_t cell) {
    OptimizationConfig c = config;
    c.f_max = field_bounds[cell % nf];
    eps[cell] = optimize(system, gate, times[cell / nf], c, cell).final_infidelity;
  });
  for (std::size_t i = 0; i < times.size(); ++i)
    for (std::size_t j = 0; j < nf; ++j) {
      sweep.infidelity[i][j] = eps[i * nf + j];
      sweep.converged[i][j] = eps[i * nf + j] < config.threshold;
    }
  return sweep;
}

}  // namespace qsl
