#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "plp/catalog_io.hpp"
#include "plp/charts.hpp"
#include "plp/matrix_rank.hpp"
#include "plp/problem.hpp"
#include "plp/symmetry.hpp"

namespace plp {

inline const std::vector<std::uint64_t> kDefaultPrimes = {32003, 1000003, 2147483647};

/// Stable mix of a base seed with trial coordinates (splitmix64 composition).
std::uint64_t mixSeed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);

/// Jacobian of the joint camera map at the instance, one column per unknown
/// (arrangement coordinates, then camera coordinates), computed column by
/// column with dual numbers.
FieldMatrix jacobianMatrix(const ChartLayout& layout, const ChartInstance<FieldElement>& inst);

/// True when some random instance over F_q has a Jacobian of full row rank.
/// A full-rank witness is conclusive for minimality of a balanced problem;
/// failure of all trials is provisional only. Rethrows ChartFailure if every
/// trial failed to find a chart-valid instance.
bool jacobianFullRank(const Problem& prob, std::uint64_t prime, int trials, std::uint64_t seed);

/// Detailed single-instance probe used by cross-check tests.
int jacobianRankAt(const ChartLayout& layout, const ChartInstance<FieldElement>& inst);

struct ClassifyOptions {
  CanonicalMode mode = CanonicalMode::LabelOnly;
  std::vector<std::uint64_t> primes = kDefaultPrimes;
  int trialsPerPrime = 5;
  int jobs = 1;
  std::uint64_t seed = 0;
  std::optional<std::string> outPath;
  bool resume = false;
  int checkpointEvery = 1000;
  std::function<void(const CatalogRecord&)> sink;
  std::function<void(std::int64_t done, std::int64_t total)> progress;
};

struct ClassifySummary {
  std::int64_t classes = 0;
  std::int64_t minimal = 0;
  std::int64_t nonminimal = 0;
};

/// Tests one representative per equivalence class of balanced signatures. A
/// class is declared non-minimal only after failing every trial under every
/// configured prime. Per-class seeds derive from the signature hash, so
/// results are independent of sharding; output is in signature lex order.
ClassifySummary classifyCatalog(const ClassifyOptions& options);

/// Single-class verdict with provenance, as used by classifyCatalog.
CatalogRecord classifyOne(const Signature& sig, const ClassifyOptions& options);

}  // namespace plp
