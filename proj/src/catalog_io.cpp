#include "plp/catalog_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace plp {

namespace {

std::string joinU64(const std::vector<std::uint64_t>& xs) {
  std::string out;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(xs[i]);
  }
  return out;
}

std::optional<std::vector<std::uint64_t>> parseU64List(const std::string& s) {
  std::vector<std::uint64_t> out;
  if (s.empty()) return out;
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      out.push_back(std::stoull(tok));
    } catch (...) {
      return std::nullopt;
    }
  }
  return out;
}

std::vector<std::string> splitFields(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

std::string toLine(const CatalogRecord& r) {
  std::string out = toText(r.signature);
  out.push_back(';');
  out += r.classMode;
  out.push_back(';');
  switch (r.minimal) {
    case CatalogRecord::Flag::Minimal: out.push_back('1'); break;
    case CatalogRecord::Flag::NonMinimal: out.push_back('0'); break;
    case CatalogRecord::Flag::Untested: out.push_back('u'); break;
  }
  out.push_back(';');
  out += joinU64(r.primesTested);
  out.push_back(';');
  out += joinU64(r.trialSeeds);
  if (r.labelCanonical) out += ";label=" + toText(*r.labelCanonical);
  if (r.swapLabelCanonical) out += ";swap=" + toText(*r.swapLabelCanonical);
  if (r.degree) out += ";degree=" + std::to_string(*r.degree) + ":" + r.degreeStatus;
  if (!r.tags.empty()) {
    out += ";tags=";
    for (size_t i = 0; i < r.tags.size(); ++i) {
      if (i) out.push_back(',');
      out += r.tags[i];
    }
  }
  if (!r.note.empty()) out += ";note=" + r.note;
  return out;
}

std::optional<CatalogRecord> recordFromLine(const std::string& line) {
  const auto fields = splitFields(line, ';');
  if (fields.size() < 5) return std::nullopt;
  CatalogRecord r;
  auto sig = signatureFromText(fields[0]);
  if (!sig) return std::nullopt;
  r.signature = *sig;
  r.classMode = fields[1];
  if (fields[2] == "1")
    r.minimal = CatalogRecord::Flag::Minimal;
  else if (fields[2] == "0")
    r.minimal = CatalogRecord::Flag::NonMinimal;
  else if (fields[2] == "u")
    r.minimal = CatalogRecord::Flag::Untested;
  else
    return std::nullopt;
  auto primes = parseU64List(fields[3]);
  auto seeds = parseU64List(fields[4]);
  if (!primes || !seeds) return std::nullopt;
  r.primesTested = *primes;
  r.trialSeeds = *seeds;
  for (size_t i = 5; i < fields.size(); ++i) {
    const auto& f = fields[i];
    const auto eq = f.find('=');
    if (eq == std::string::npos) return std::nullopt;
    const std::string key = f.substr(0, eq);
    const std::string val = f.substr(eq + 1);
    if (key == "label") {
      auto v = signatureFromText(val);
      if (!v) return std::nullopt;
      r.labelCanonical = *v;
    } else if (key == "swap") {
      auto v = signatureFromText(val);
      if (!v) return std::nullopt;
      r.swapLabelCanonical = *v;
    } else if (key == "degree") {
      const auto colon = val.find(':');
      if (colon == std::string::npos) return std::nullopt;
      try {
        r.degree = std::stoll(val.substr(0, colon));
      } catch (...) {
        return std::nullopt;
      }
      r.degreeStatus = val.substr(colon + 1);
    } else if (key == "tags") {
      for (const auto& t : splitFields(val, ','))
        if (!t.empty()) r.tags.push_back(t);
    } else if (key == "note") {
      r.note = val;
    } else {
      return std::nullopt;
    }
  }
  return r;
}

std::vector<CatalogRecord> readCatalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open catalog: " + path);
  std::vector<CatalogRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto r = recordFromLine(line);
    if (!r) throw std::runtime_error("malformed catalog line: " + line);
    records.push_back(std::move(*r));
  }
  return records;
}

void writeCatalogAtomic(const std::string& path, const std::vector<CatalogRecord>& records) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write catalog: " + tmp);
    for (const auto& r : records) out << toLine(r) << '\n';
    out.flush();
    if (!out) throw std::runtime_error("failed writing catalog: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

CatalogStats statsOf(const std::vector<CatalogRecord>& records) {
  CatalogStats s;
  s.total = static_cast<std::int64_t>(records.size());
  for (const auto& r : records) {
    switch (r.minimal) {
      case CatalogRecord::Flag::Minimal: ++s.minimal; break;
      case CatalogRecord::Flag::NonMinimal: ++s.nonminimal; break;
      case CatalogRecord::Flag::Untested: ++s.untested; break;
    }
    if (r.degree) ++s.withDegree;
  }
  return s;
}

}  // namespace plp
