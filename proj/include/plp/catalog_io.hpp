#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plp/signature.hpp"

namespace plp {

/// One catalog line: a class representative with its canonical forms,
/// minimality verdict and provenance, and optional degree and subfamily tags.
struct CatalogRecord {
  Signature signature{};
  std::string classMode;  // "label" or "swap-label"
  enum class Flag { Untested, NonMinimal, Minimal };
  Flag minimal = Flag::Untested;
  std::vector<std::uint64_t> primesTested;
  std::vector<std::uint64_t> trialSeeds;
  std::optional<Signature> labelCanonical;
  std::optional<Signature> swapLabelCanonical;
  std::optional<std::int64_t> degree;
  std::string degreeStatus;  // "stabilized" or "budget-exhausted"
  std::vector<std::string> tags;
  std::string note;

  bool operator==(const CatalogRecord&) const = default;
};

/// Semicolon-separated line encoding:
///   signature;classMode;minimal(0/1/u);primesTested;trialSeeds[;named...]
/// with optional named fields label=, swap=, degree=<n>:<status>, tags=, note=.
std::string toLine(const CatalogRecord& record);
std::optional<CatalogRecord> recordFromLine(const std::string& line);

std::vector<CatalogRecord> readCatalog(const std::string& path);

/// Writes via a temporary file and rename.
void writeCatalogAtomic(const std::string& path, const std::vector<CatalogRecord>& records);

struct CatalogStats {
  std::int64_t total = 0;
  std::int64_t minimal = 0;
  std::int64_t nonminimal = 0;
  std::int64_t untested = 0;
  std::int64_t withDegree = 0;
};
CatalogStats statsOf(const std::vector<CatalogRecord>& records);

}  // namespace plp
