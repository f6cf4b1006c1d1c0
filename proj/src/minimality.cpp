#include "plp/minimality.hpp"

#include <atomic>
#include <fstream>
#include <stdexcept>
#include <thread>

namespace plp {

std::uint64_t mixSeed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  auto split = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  return split(split(base ^ split(a)) ^ split(b ^ 0xD1B54A32D192ED03ull));
}

FieldMatrix jacobianMatrix(const ChartLayout& layout, const ChartInstance<FieldElement>& inst) {
  const int cols = layout.arrangementDim + layout.cameraDim;
  const std::uint64_t q =
      inst.cameras.empty() ? inst.arrangement.at(0).modulus() : inst.cameras.at(0).modulus();
  FieldMatrix jac(layout.imageDim, cols, q);
  for (int j = 0; j < cols; ++j) {
    const auto column = evalPhi(layout, dualInstance(inst, j));
    for (int r = 0; r < layout.imageDim; ++r)
      jac.at(r, j) = column[static_cast<size_t>(r)].deriv;
  }
  return jac;
}

int jacobianRankAt(const ChartLayout& layout, const ChartInstance<FieldElement>& inst) {
  return rank(jacobianMatrix(layout, inst));
}

bool jacobianFullRank(const Problem& prob, std::uint64_t prime, int trials, std::uint64_t seed) {
  const ChartLayout layout = makeChartLayout(prob);
  int chartFailures = 0;
  for (int t = 0; t < trials; ++t) {
    ChartInstance<FieldElement> inst;
    try {
      inst = sampleFieldInstance(layout, prime, mixSeed(seed, prime, static_cast<std::uint64_t>(t)));
    } catch (const ChartFailure&) {
      ++chartFailures;
      continue;
    }
    if (jacobianRankAt(layout, inst) == layout.imageDim) return true;
  }
  if (chartFailures == trials) throw ChartFailure("all trials hit chart degeneracy");
  return false;
}

CatalogRecord classifyOne(const Signature& sig, const ClassifyOptions& options) {
  CatalogRecord record;
  record.signature = sig;
  record.classMode = (options.mode == CanonicalMode::LabelOnly) ? "label" : "swap-label";
  record.labelCanonical = canonicalForm(sig, CanonicalMode::LabelOnly);
  record.swapLabelCanonical = canonicalForm(sig, CanonicalMode::SwapAndLabel);
  const std::uint64_t classSeed = mixSeed(options.seed, signatureHash(sig));
  record.trialSeeds = {classSeed};

  const Problem prob = expand(sig);
  record.minimal = CatalogRecord::Flag::NonMinimal;
  for (size_t pi = 0; pi < options.primes.size(); ++pi) {
    const std::uint64_t q = options.primes[pi];
    record.primesTested.push_back(q);
    bool full = false;
    try {
      full = jacobianFullRank(prob, q, options.trialsPerPrime, classSeed);
    } catch (const ChartFailure&) {
      // treat as a failed prime; the next prime retests
      continue;
    }
    if (full) {
      record.minimal = CatalogRecord::Flag::Minimal;
      // a verdict that needed a prime switch is worth flagging for review
      if (pi > 0) record.note = "recovered-at-prime-" + std::to_string(q);
      break;
    }
  }
  return record;
}

ClassifySummary classifyCatalog(const ClassifyOptions& options) {
  std::vector<Signature> reps;
  enumerateClasses(options.mode == CanonicalMode::LabelOnly ? CanonicalMode::LabelOnly
                                                            : CanonicalMode::SwapAndLabel,
                   [&](const Signature& sig) { reps.push_back(sig); });

  std::vector<CatalogRecord> records(reps.size());
  size_t start = 0;
  std::ofstream out;
  if (options.outPath) {
    if (options.resume && std::ifstream(*options.outPath).good()) {
      const auto existing = readCatalog(*options.outPath);
      for (const auto& r : existing) {
        if (start >= reps.size() || !(r.signature == reps[start]))
          throw std::runtime_error("resume file does not match this enumeration");
        records[start++] = r;
      }
    }
    out.open(*options.outPath, start > 0 ? std::ios::app : std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output: " + *options.outPath);
  }

  const int jobs = std::max(1, options.jobs);
  const size_t blockSize = static_cast<size_t>(std::max(1, options.checkpointEvery));
  for (size_t blockStart = start; blockStart < reps.size(); blockStart += blockSize) {
    const size_t blockEnd = std::min(reps.size(), blockStart + blockSize);
    if (jobs == 1) {
      for (size_t i = blockStart; i < blockEnd; ++i) records[i] = classifyOne(reps[i], options);
    } else {
      std::atomic<size_t> cursor{blockStart};
      std::vector<std::thread> workers;
      workers.reserve(static_cast<size_t>(jobs));
      for (int w = 0; w < jobs; ++w)
        workers.emplace_back([&] {
          for (;;) {
            const size_t i = cursor.fetch_add(1);
            if (i >= blockEnd) return;
            records[i] = classifyOne(reps[i], options);
          }
        });
      for (auto& t : workers) t.join();
    }
    if (out.is_open()) {
      for (size_t i = blockStart; i < blockEnd; ++i) out << toLine(records[i]) << '\n';
      out.flush();
    }
    if (options.progress) {
      options.progress(static_cast<std::int64_t>(blockEnd), static_cast<std::int64_t>(reps.size()));
    }
  }
  if (out.is_open()) {
    out.close();
    writeCatalogAtomic(*options.outPath, records);  // normalized final file
  }
  if (options.sink)
    for (const auto& r : records) options.sink(r);

  ClassifySummary summary;
  summary.classes = static_cast<std::int64_t>(records.size());
  for (const auto& r : records)
    (r.minimal == CatalogRecord::Flag::Minimal ? summary.minimal : summary.nonminimal) += 1;
  return summary;
}

}  // namespace plp
