#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "plp/charts.hpp"
#include "plp/problem.hpp"

namespace plp {

/// Square polynomial system Phi(x) - y = 0 in the chart unknowns x
/// (arrangement coordinates plus parameters of every camera that observes
/// something) with the image coordinates y as parameters.
class ParametricSystem {
 public:
  explicit ParametricSystem(const Problem& prob);

  int dim() const { return dim_; }
  const ChartLayout& layout() const { return layout_; }

  /// Phi(x); throws DegenerateEvaluation on a zero chart denominator.
  Eigen::VectorXcd phi(const Eigen::VectorXcd& x) const;
  Eigen::VectorXcd residual(const Eigen::VectorXcd& x, const Eigen::VectorXcd& params) const;
  Eigen::MatrixXcd jacobian(const Eigen::VectorXcd& x) const;

  ChartInstance<std::complex<double>> unpack(const Eigen::VectorXcd& x) const;
  Eigen::VectorXcd pack(const ChartInstance<std::complex<double>>& inst) const;

 private:
  ChartLayout layout_;
  int dim_ = 0;
};

struct TrackSettings {
  double initStep = 0.05;
  double minStep = 1e-7;
  double shrinkFactor = 0.5;
  double growFactor = 1.5;
  int successesBeforeGrowth = 4;
  int maxCorrectorIters = 3;
  double correctorTol = 1e-9;
  double endpointTol = 1e-10;
  int maxNewtonIters = 12;
  int maxSteps = 10000;
};

/// Parameter path: fills y(t) and dy/dt(t) for t in [0, 1].
using ParameterPath =
    std::function<void(double t, Eigen::VectorXcd& y, Eigen::VectorXcd& yDot)>;

/// Straight segment from a to b bulged by gamma: y(t) = (1-t)a + tb +
/// gamma t(1-t)(b-a). Distinct gammas give homotopically distinct arcs
/// between the same endpoints, which is what makes a two-leg loop act.
ParameterPath bulgedSegment(Eigen::VectorXcd a, Eigen::VectorXcd b, std::complex<double> gamma);

/// Runge-Kutta predictor on the Davidenko flow with a Newton corrector and
/// adaptive step size; ends with a fresh Newton polish at t = 1. Returns the
/// endpoint solution or nullopt on step underflow, divergence, or budget
/// exhaustion.
std::optional<Eigen::VectorXcd> trackPath(const ParametricSystem& system,
                                          const Eigen::VectorXcd& start,
                                          const ParameterPath& path, const TrackSettings& settings);

/// Newton iteration at fixed parameters; nullopt if it fails to reach tol.
std::optional<Eigen::VectorXcd> newtonPolish(const ParametricSystem& system, Eigen::VectorXcd x,
                                             const Eigen::VectorXcd& params, double tol,
                                             int maxIters);

struct SeedPair {
  Eigen::VectorXcd params;
  Eigen::VectorXcd solution;
};

/// Fabricated start pair: a random chart-valid complex instance together
/// with its image; an exact solution by construction.
SeedPair seedPair(const ParametricSystem& system, std::uint64_t seed);

struct DegreeOptions {
  std::uint64_t seed = 0;
  int stabilizationWindow = 10;  // fruitless loops before declaring stable
  int maxLoops = 500;
  double clusterTol = 1e-6;
  double chartBound = 1e8;
  int jobs = 1;
  TrackSettings track;
  std::function<void(std::int64_t loop, std::int64_t count)> progress;
};

struct DegreeResult {
  std::int64_t count = 0;
  enum class Status { Stabilized, BudgetExhausted } status = Status::BudgetExhausted;
  std::int64_t loops = 0;
  std::int64_t pathFailures = 0;
  std::int64_t boundaryDiscards = 0;
  double maxResidual = 0.0;
};

/// Collects solutions over the base parameters by tracking the known set
/// around random two-leg loops until no loop brings anything new. The count
/// is a certified lower bound on the degree and is reported as the degree
/// once stabilized.
DegreeResult monodromyDegree(const Problem& prob, const DegreeOptions& options);

}  // namespace plp
