#include "plp/monodromy.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "plp/minimality.hpp"

namespace plp {

namespace {

double residualNorm(const Eigen::VectorXcd& r) { return r.cwiseAbs().maxCoeff(); }

}  // namespace

ParametricSystem::ParametricSystem(const Problem& prob)
    : layout_(makeChartLayout(prob, /*dropUnobservedCameras=*/true)) {
  dim_ = layout_.arrangementDim + layout_.cameraDim;
  if (dim_ != layout_.imageDim)
    throw std::invalid_argument("parametric system is not square; problem is not balanced");
  if (dim_ == 0) throw std::invalid_argument("empty parametric system");
}

ChartInstance<std::complex<double>> ParametricSystem::unpack(const Eigen::VectorXcd& x) const {
  ChartInstance<std::complex<double>> inst;
  inst.arrangement.assign(x.data(), x.data() + layout_.arrangementDim);
  inst.cameras.assign(x.data() + layout_.arrangementDim, x.data() + dim_);
  return inst;
}

Eigen::VectorXcd ParametricSystem::pack(const ChartInstance<std::complex<double>>& inst) const {
  Eigen::VectorXcd x(dim_);
  int i = 0;
  for (const auto& v : inst.arrangement) x[i++] = v;
  for (const auto& v : inst.cameras) x[i++] = v;
  return x;
}

Eigen::VectorXcd ParametricSystem::phi(const Eigen::VectorXcd& x) const {
  const auto out = evalPhi(layout_, unpack(x));
  Eigen::VectorXcd y(dim_);
  for (int i = 0; i < dim_; ++i) y[i] = out[static_cast<size_t>(i)];
  return y;
}

Eigen::VectorXcd ParametricSystem::residual(const Eigen::VectorXcd& x,
                                            const Eigen::VectorXcd& params) const {
  return phi(x) - params;
}

Eigen::MatrixXcd ParametricSystem::jacobian(const Eigen::VectorXcd& x) const {
  Eigen::MatrixXcd jac(dim_, dim_);
  const auto inst = unpack(x);
  for (int j = 0; j < dim_; ++j) {
    const auto column = evalPhi(layout_, dualInstance(inst, j));
    for (int r = 0; r < dim_; ++r) jac(r, j) = column[static_cast<size_t>(r)].deriv;
  }
  return jac;
}

ParameterPath bulgedSegment(Eigen::VectorXcd a, Eigen::VectorXcd b, std::complex<double> gamma) {
  return [a = std::move(a), b = std::move(b), gamma](double t, Eigen::VectorXcd& y,
                                                     Eigen::VectorXcd& yDot) {
    const Eigen::VectorXcd diff = b - a;
    y = (1.0 - t) * a + t * b + (gamma * t * (1.0 - t)) * diff;
    yDot = diff + (gamma * (1.0 - 2.0 * t)) * diff;
  };
}

std::optional<Eigen::VectorXcd> newtonPolish(const ParametricSystem& system, Eigen::VectorXcd x,
                                             const Eigen::VectorXcd& params, double tol,
                                             int maxIters) {
  try {
    for (int it = 0; it < maxIters; ++it) {
      const Eigen::VectorXcd r = system.residual(x, params);
      if (!r.allFinite()) return std::nullopt;
      if (residualNorm(r) < tol) return x;
      const Eigen::MatrixXcd jac = system.jacobian(x);
      const Eigen::VectorXcd dx = jac.partialPivLu().solve(-r);
      if (!dx.allFinite()) return std::nullopt;
      x += dx;
    }
    if (residualNorm(system.residual(x, params)) < tol) return x;
  } catch (const DegenerateEvaluation&) {
  }
  return std::nullopt;
}

std::optional<Eigen::VectorXcd> trackPath(const ParametricSystem& system,
                                          const Eigen::VectorXcd& start,
                                          const ParameterPath& path,
                                          const TrackSettings& settings) {
  const int n = system.dim();
  Eigen::VectorXcd x = start;
  Eigen::VectorXcd y(n), yDot(n);
  double t = 0.0;
  double dt = settings.initStep;
  int successes = 0;
  int steps = 0;

  const auto flow = [&](const Eigen::VectorXcd& xa, double ta,
                        Eigen::VectorXcd& k) -> bool {
    path(ta, y, yDot);
    const Eigen::MatrixXcd jac = system.jacobian(xa);
    k = jac.partialPivLu().solve(yDot);
    return k.allFinite();
  };

  while (t < 1.0 - 1e-14) {
    if (++steps > settings.maxSteps) return std::nullopt;
    if (dt > 1.0 - t) dt = 1.0 - t;

    bool ok = true;
    Eigen::VectorXcd xp;
    try {
      Eigen::VectorXcd k1(n), k2(n), k3(n), k4(n);
      ok = flow(x, t, k1) && flow(x + (0.5 * dt) * k1, t + 0.5 * dt, k2) &&
           flow(x + (0.5 * dt) * k2, t + 0.5 * dt, k3) && flow(x + dt * k3, t + dt, k4);
      if (ok) {
        xp = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        // corrector at the step target
        path(t + dt, y, yDot);
        ok = false;
        for (int it = 0; it < settings.maxCorrectorIters; ++it) {
          const Eigen::VectorXcd r = system.residual(xp, y);
          if (!r.allFinite()) break;
          if (residualNorm(r) < settings.correctorTol) {
            ok = true;
            break;
          }
          const Eigen::VectorXcd dx = system.jacobian(xp).partialPivLu().solve(-r);
          if (!dx.allFinite()) break;
          xp += dx;
          if (residualNorm(system.residual(xp, y)) < settings.correctorTol) {
            ok = true;
            break;
          }
        }
      }
    } catch (const DegenerateEvaluation&) {
      ok = false;
    }

    if (ok) {
      x = xp;
      t += dt;
      if (++successes >= settings.successesBeforeGrowth) {
        successes = 0;
        dt *= settings.growFactor;
      }
    } else {
      successes = 0;
      dt *= settings.shrinkFactor;
      if (dt < settings.minStep) return std::nullopt;
    }
  }

  path(1.0, y, yDot);
  return newtonPolish(system, x, y, settings.endpointTol, settings.maxNewtonIters);
}

SeedPair seedPair(const ParametricSystem& system, std::uint64_t seed) {
  const auto inst = sampleComplexInstance(system.layout(), seed);
  SeedPair pair;
  pair.solution = system.pack(inst);
  pair.params = system.phi(pair.solution);
  return pair;
}

DegreeResult monodromyDegree(const Problem& prob, const DegreeOptions& options) {
  const ParametricSystem system(prob);
  DegreeResult result;

  const SeedPair base = seedPair(system, mixSeed(options.seed, 0x5eed));
  std::vector<Eigen::VectorXcd> solutions = {base.solution};

  const auto isKnown = [&](const Eigen::VectorXcd& x) {
    for (const auto& s : solutions)
      if ((s - x).norm() < options.clusterTol) return true;
    return false;
  };

  int fruitless = 0;
  std::mt19937_64 rng(mixSeed(options.seed, 0x10095));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto randomUnitComplex = [&] {
    const double theta = 2.0 * std::numbers::pi * unit(rng);
    return std::complex<double>(std::cos(theta), std::sin(theta));
  };

  for (int loop = 0; loop < options.maxLoops && fruitless < options.stabilizationWindow; ++loop) {
    ++result.loops;
    // waypoint: the image of a fresh random instance, rotated by a random
    // phase; always a generic parameter point for a dominant system
    Eigen::VectorXcd waypoint;
    try {
      const auto inst =
          sampleComplexInstance(system.layout(), mixSeed(options.seed, 0xAAA, static_cast<std::uint64_t>(loop)));
      waypoint = randomUnitComplex() * system.phi(system.pack(inst));
    } catch (const ChartFailure&) {
      ++result.pathFailures;
      continue;
    } catch (const DegenerateEvaluation&) {
      ++result.pathFailures;
      continue;
    }
    const ParameterPath legOut = bulgedSegment(base.params, waypoint, randomUnitComplex());
    const ParameterPath legBack = bulgedSegment(waypoint, base.params, randomUnitComplex());

    const size_t known = solutions.size();
    std::vector<std::optional<Eigen::VectorXcd>> endpoints(known);
    const auto trackOne = [&](size_t i) {
      const auto mid = trackPath(system, solutions[i], legOut, options.track);
      if (!mid) return;
      endpoints[i] = trackPath(system, *mid, legBack, options.track);
    };
    const int jobs = std::max(1, options.jobs);
    if (jobs == 1 || known < 2) {
      for (size_t i = 0; i < known; ++i) trackOne(i);
    } else {
      std::atomic<size_t> cursor{0};
      std::vector<std::thread> workers;
      for (int w = 0; w < std::min<size_t>(static_cast<size_t>(jobs), known); ++w)
        workers.emplace_back([&] {
          for (;;) {
            const size_t i = cursor.fetch_add(1);
            if (i >= known) return;
            trackOne(i);
          }
        });
      for (auto& th : workers) th.join();
    }

    std::int64_t added = 0;
    for (size_t i = 0; i < known; ++i) {
      if (!endpoints[i]) {
        ++result.pathFailures;
        continue;
      }
      const Eigen::VectorXcd& e = *endpoints[i];
      if (e.cwiseAbs().maxCoeff() > options.chartBound) {
        ++result.boundaryDiscards;
        continue;
      }
      const double res = residualNorm(system.residual(e, base.params));
      if (res > options.track.endpointTol) {
        ++result.pathFailures;
        continue;
      }
      result.maxResidual = std::max(result.maxResidual, res);
      if (!isKnown(e)) {
        solutions.push_back(e);
        ++added;
      }
    }
    fruitless = (added == 0) ? fruitless + 1 : 0;
    if (options.progress)
      options.progress(result.loops, static_cast<std::int64_t>(solutions.size()));
  }

  result.count = static_cast<std::int64_t>(solutions.size());
  result.status = (fruitless >= options.stabilizationWindow)
                      ? DegreeResult::Status::Stabilized
                      : DegreeResult::Status::BudgetExhausted;
  return result;
}

}  // namespace plp
