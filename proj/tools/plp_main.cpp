#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "plp/catalog_io.hpp"
#include "plp/charts.hpp"
#include "plp/minimality.hpp"
#include "plp/monodromy.hpp"
#include "plp/problem.hpp"
#include "plp/signature.hpp"
#include "plp/subfamilies.hpp"
#include "plp/symmetry.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitVerifyMismatch = 3;

std::vector<std::uint64_t> parsePrimes(const std::string& csv) {
  std::vector<std::uint64_t> primes;
  std::string cur;
  for (char c : csv + ",") {
    if (c == ',') {
      if (!cur.empty()) primes.push_back(std::stoull(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  return primes;
}

std::vector<std::uint64_t> defaultPrimes() {
  if (const char* env = std::getenv("PLP_PRIMES")) {
    auto primes = parsePrimes(env);
    if (!primes.empty()) return primes;
  }
  return plp::kDefaultPrimes;
}

plp::Signature requireSignature(const std::string& text) {
  auto sig = plp::signatureFromText(text);
  if (!sig) throw CLI::ValidationError("--signature", "expected 27 comma-separated integers");
  return *sig;
}

plp::Problem loadProblem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--problem", "cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  auto prob = plp::problemFromText(text);
  if (!prob) throw CLI::ValidationError("--problem", "malformed problem file " + path);
  return *prob;
}

int verifyCount(bool verify, const std::string& name, std::int64_t got, std::int64_t expected) {
  if (!verify || got == expected) return kExitOk;
  std::cerr << "verify: " << name << " expected " << expected << " got " << got << "\n";
  return kExitVerifyMismatch;
}

struct SubfamilyExpectations {
  std::int64_t pl0p = 51;
  std::int64_t onepin = 9533;
  std::int64_t fivepoint = 6300;
  std::int64_t fivepointTerminal = 3648;
  std::int64_t registration = 61;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"catalog of point-line minimal problems in three calibrated views"};
  app.require_subcommand(1);

  // enumerate
  auto* enumerateCmd = app.add_subcommand("enumerate", "enumerate balanced signatures");
  bool enumCountOnly = false;
  bool enumVerify = false;
  std::int64_t enumLimit = -1;
  std::string enumOut;
  enumerateCmd->add_flag("--count-only", enumCountOnly, "print only the count");
  enumerateCmd->add_flag("--verify", enumVerify, "exit 3 unless the count is 845161");
  enumerateCmd->add_option("--limit", enumLimit, "stop after this many signatures");
  enumerateCmd->add_option("--out", enumOut, "write signatures to a file");

  // classes
  auto* classesCmd = app.add_subcommand("classes", "enumerate equivalence class representatives");
  std::string classesMode = "label";
  bool classesCountOnly = false;
  bool classesVerify = false;
  std::int64_t classesLimit = -1;
  std::string classesOut;
  classesCmd->add_option("--mode", classesMode, "label or swap-label")
      ->check(CLI::IsMember({"label", "swap-label"}));
  classesCmd->add_flag("--count-only", classesCountOnly, "print only the count");
  classesCmd->add_flag("--verify", classesVerify, "check the published class count");
  classesCmd->add_option("--limit", classesLimit, "stop after this many representatives");
  classesCmd->add_option("--out", classesOut, "write representatives to a file");

  // classify
  auto* classifyCmd = app.add_subcommand("classify", "minimality census over class representatives");
  std::string classifyMode = "label";
  std::string classifyPrimes;
  int classifyTrials = 5;
  int classifyJobs = 1;
  std::uint64_t classifySeed = 0;
  std::string classifyOut;
  bool classifyResume = false;
  bool classifyVerify = false;
  classifyCmd->add_option("--mode", classifyMode, "label or swap-label")
      ->check(CLI::IsMember({"label", "swap-label"}));
  classifyCmd->add_option("--primes", classifyPrimes, "comma-separated prime list");
  classifyCmd->add_option("--trials", classifyTrials, "random instances per prime");
  classifyCmd->add_option("--jobs", classifyJobs, "worker threads");
  classifyCmd->add_option("--seed", classifySeed, "base random seed");
  classifyCmd->add_option("--out", classifyOut, "catalog output file")->required();
  classifyCmd->add_flag("--resume", classifyResume, "continue a checkpointed run");
  classifyCmd->add_flag("--verify", classifyVerify, "check the published census counts");

  // reduce
  auto* reduceCmd = app.add_subcommand("reduce", "apply the forgetting rules to a fixpoint");
  std::string reduceSig, reduceProblemPath;
  std::string reduceModeName = "minimal";
  reduceCmd->add_option("--signature", reduceSig, "expand this signature first");
  reduceCmd->add_option("--problem", reduceProblemPath, "problem text file");
  reduceCmd->add_option("--mode", reduceModeName, "minimal or camera-minimal")
      ->check(CLI::IsMember({"minimal", "camera-minimal"}));

  // lift
  auto* liftCmd = app.add_subcommand("lift", "fixate dangling pins to reach a minimal problem");
  std::string liftSig, liftProblemPath;
  liftCmd->add_option("--signature", liftSig, "expand this signature first");
  liftCmd->add_option("--problem", liftProblemPath, "problem text file");

  // degree
  auto* degreeCmd = app.add_subcommand("degree", "solution count by monodromy");
  std::string degreeSig, degreeProblemPath, degreeCatalog;
  bool degreeFivePoint = false;
  bool degreeTerminalLift = false;
  int degreeLoops = 500;
  int degreeStabilize = 10;
  int degreeJobs = 1;
  std::uint64_t degreeSeed = 0;
  double degreeTol = 1e-10;
  degreeCmd->add_option("--signature", degreeSig, "signature of the problem");
  degreeCmd->add_option("--problem", degreeProblemPath, "problem text file");
  degreeCmd->add_flag("--five-point", degreeFivePoint, "the five points in two views target");
  degreeCmd->add_flag("--lift", degreeTerminalLift, "lift the problem to minimal first");
  degreeCmd->add_option("--loops", degreeLoops, "loop budget");
  degreeCmd->add_option("--stabilize", degreeStabilize, "fruitless loops before stabilization");
  degreeCmd->add_option("--seed", degreeSeed, "base random seed");
  degreeCmd->add_option("--tol", degreeTol, "endpoint residual tolerance");
  degreeCmd->add_option("--jobs", degreeJobs, "worker threads for path tracking");
  degreeCmd->add_option("--catalog", degreeCatalog, "append the degree to this catalog");

  // subfamily
  auto* subCmd = app.add_subcommand("subfamily", "filter a catalog by subfamily membership");
  std::string subFilter, subCatalog, subOut;
  bool subTerminalize = false;
  bool subAnnotate = false;
  bool subCountOnly = false;
  bool subVerify = false;
  subCmd->add_option("--filter", subFilter, "pl0p, onepin, fivepoint, or registration")
      ->required()
      ->check(CLI::IsMember({"pl0p", "onepin", "fivepoint", "registration"}));
  subCmd->add_option("--catalog", subCatalog, "catalog file")->required();
  subCmd->add_flag("--terminalize", subTerminalize, "apply to the terminal form of each problem");
  subCmd->add_flag("--annotate", subAnnotate, "write tags back into the catalog");
  subCmd->add_flag("--count-only", subCountOnly, "print only the count");
  subCmd->add_flag("--verify", subVerify, "check the published subfamily count");
  subCmd->add_option("--out", subOut, "write matching signatures to a file");

  // stats
  auto* statsCmd = app.add_subcommand("stats", "summarize a catalog");
  std::string statsCatalog;
  statsCmd->add_option("--catalog", statsCatalog, "catalog file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*enumerateCmd) {
      std::ofstream out;
      if (!enumOut.empty()) out.open(enumOut + ".tmp", std::ios::trunc);
      std::int64_t n = 0;
      plp::BalancedEnumerator it;
      while (auto sig = it.next()) {
        if (enumLimit >= 0 && n >= enumLimit) break;
        ++n;
        if (!enumOut.empty())
          out << plp::toText(*sig) << '\n';
        else if (!enumCountOnly)
          std::cout << plp::toText(*sig) << '\n';
      }
      if (!enumOut.empty()) {
        out.close();
        std::filesystem::rename(enumOut + ".tmp", enumOut);
      }
      std::cout << "balanced=" << n << "\n";
      return verifyCount(enumVerify && enumLimit < 0, "balanced", n, 845161);
    }

    if (*classesCmd) {
      const auto mode = classesMode == "label" ? plp::CanonicalMode::LabelOnly
                                               : plp::CanonicalMode::SwapAndLabel;
      std::ofstream out;
      if (!classesOut.empty()) out.open(classesOut + ".tmp", std::ios::trunc);
      std::int64_t n = 0;
      bool stopped = false;
      plp::BalancedEnumerator it;
      while (auto sig = it.next()) {
        if (plp::canonicalForm(*sig, mode) != *sig) continue;
        if (classesLimit >= 0 && n >= classesLimit) {
          stopped = true;
          break;
        }
        ++n;
        if (!classesOut.empty())
          out << plp::toText(*sig) << '\n';
        else if (!classesCountOnly)
          std::cout << plp::toText(*sig) << '\n';
      }
      if (!classesOut.empty()) {
        out.close();
        std::filesystem::rename(classesOut + ".tmp", classesOut);
      }
      std::cout << "classes=" << n << "\n";
      const std::int64_t expected = (mode == plp::CanonicalMode::LabelOnly) ? 143494 : 76446;
      return verifyCount(classesVerify && !stopped, "classes", n, expected);
    }

    if (*classifyCmd) {
      plp::ClassifyOptions options;
      options.mode = classifyMode == "label" ? plp::CanonicalMode::LabelOnly
                                             : plp::CanonicalMode::SwapAndLabel;
      options.primes = classifyPrimes.empty() ? defaultPrimes() : parsePrimes(classifyPrimes);
      options.trialsPerPrime = classifyTrials;
      options.jobs = classifyJobs;
      options.seed = classifySeed;
      options.outPath = classifyOut;
      options.resume = classifyResume;
      options.progress = [](std::int64_t done, std::int64_t total) {
        std::cerr << "classified " << done << "/" << total << "\r" << std::flush;
      };
      const auto summary = plp::classifyCatalog(options);
      std::cerr << "\n";
      std::cout << "classes=" << summary.classes << "\n";
      std::cout << "minimal=" << summary.minimal << "\n";
      std::cout << "nonminimal=" << summary.nonminimal << "\n";
      if (classifyVerify) {
        const bool label = options.mode == plp::CanonicalMode::LabelOnly;
        if (verifyCount(true, "classes", summary.classes, label ? 143494 : 76446) ||
            verifyCount(true, "minimal", summary.minimal, label ? 140616 : 74575) ||
            verifyCount(true, "nonminimal", summary.nonminimal, label ? 2878 : 1871))
          return kExitVerifyMismatch;
      }
      return kExitOk;
    }

    if (*reduceCmd) {
      if (reduceSig.empty() == reduceProblemPath.empty())
        throw CLI::ValidationError("reduce", "pass exactly one of --signature and --problem");
      const plp::Problem prob =
          reduceSig.empty() ? loadProblem(reduceProblemPath) : plp::expand(requireSignature(reduceSig));
      const auto mode = reduceModeName == "minimal" ? plp::ReduceMode::Minimal
                                                    : plp::ReduceMode::CameraMinimal;
      const plp::Problem reduced = plp::reduce(prob, mode);
      std::cout << plp::toText(reduced);
      if (auto sig = plp::signatureOf(reduced)) std::cout << "signature=" << plp::toText(*sig) << "\n";
      return kExitOk;
    }

    if (*liftCmd) {
      if (liftSig.empty() == liftProblemPath.empty())
        throw CLI::ValidationError("lift", "pass exactly one of --signature and --problem");
      const plp::Problem prob =
          liftSig.empty() ? loadProblem(liftProblemPath) : plp::expand(requireSignature(liftSig));
      const plp::Problem lifted = plp::liftToMinimal(prob);
      std::cout << plp::toText(lifted);
      if (auto sig = plp::signatureOf(lifted)) std::cout << "signature=" << plp::toText(*sig) << "\n";
      return kExitOk;
    }

    if (*degreeCmd) {
      plp::Problem prob;
      if (degreeFivePoint) {
        prob = plp::fivePointProblem();
      } else if (!degreeProblemPath.empty()) {
        prob = loadProblem(degreeProblemPath);
      } else if (!degreeSig.empty()) {
        prob = plp::expand(requireSignature(degreeSig));
      } else {
        throw CLI::ValidationError("degree", "pass --signature, --problem, or --five-point");
      }
      if (degreeTerminalLift) prob = plp::liftToMinimal(prob);
      plp::DegreeOptions options;
      options.seed = degreeSeed;
      options.maxLoops = degreeLoops;
      options.stabilizationWindow = degreeStabilize;
      options.jobs = degreeJobs;
      options.track.endpointTol = degreeTol;
      options.progress = [](std::int64_t loop, std::int64_t count) {
        std::cerr << "loop " << loop << ": " << count << " solutions\r" << std::flush;
      };
      const auto result = plp::monodromyDegree(prob, options);
      std::cerr << "\n";
      std::cout << "degree=" << result.count << "\n";
      std::cout << "status="
                << (result.status == plp::DegreeResult::Status::Stabilized ? "stabilized"
                                                                           : "budget-exhausted")
                << "\n";
      std::cout << "loops=" << result.loops << "\n";
      std::cout << "pathfailures=" << result.pathFailures << "\n";
      std::cout << "maxresidual=" << result.maxResidual << "\n";
      if (!degreeCatalog.empty() && !degreeSig.empty()) {
        auto records = plp::readCatalog(degreeCatalog);
        const auto sig = requireSignature(degreeSig);
        for (auto& r : records) {
          if (r.signature == sig) {
            r.degree = result.count;
            r.degreeStatus = result.status == plp::DegreeResult::Status::Stabilized
                                 ? "stabilized"
                                 : "budget-exhausted";
          }
        }
        plp::writeCatalogAtomic(degreeCatalog, records);
      }
      return kExitOk;
    }

    if (*subCmd) {
      auto records = plp::readCatalog(subCatalog);
      std::vector<plp::Signature> matches;
      for (auto& r : records) {
        if (r.minimal != plp::CatalogRecord::Flag::Minimal) continue;
        std::string tag;
        if (subFilter == "pl0p") {
          if (plp::isPL0PSignature(r.signature)) tag = "pl0p";
        } else if (subFilter == "onepin") {
          if (plp::isOnePinSignature(r.signature)) tag = "onepin";
        } else {
          plp::Problem prob = plp::expand(r.signature);
          if (subTerminalize) prob = plp::terminalize(prob);
          const auto pair = plp::detectFivePointExtension(prob);
          if (pair) {
            const std::string pairText =
                std::to_string(pair->first + 1) + "-" + std::to_string(pair->second + 1);
            if (subFilter == "fivepoint") {
              tag = (subTerminalize ? "fivepoint-terminal:" : "fivepoint:") + pairText;
            } else {
              const auto reg = plp::detectRegistration(prob, *pair);
              if (reg) tag = "registration:" + pairText + ":" + std::to_string(*reg + 1);
            }
          }
        }
        if (tag.empty()) continue;
        matches.push_back(r.signature);
        if (subAnnotate &&
            std::find(r.tags.begin(), r.tags.end(), tag) == r.tags.end())
          r.tags.push_back(tag);
      }
      if (subAnnotate) plp::writeCatalogAtomic(subCatalog, records);
      if (!subOut.empty()) {
        std::ofstream out(subOut + ".tmp", std::ios::trunc);
        for (const auto& sig : matches) out << plp::toText(sig) << '\n';
        out.close();
        std::filesystem::rename(subOut + ".tmp", subOut);
      } else if (!subCountOnly) {
        for (const auto& sig : matches) std::cout << plp::toText(sig) << '\n';
      }
      const auto n = static_cast<std::int64_t>(matches.size());
      std::cout << subFilter << (subTerminalize ? "-terminal" : "") << "=" << n << "\n";
      if (subVerify) {
        const SubfamilyExpectations expect;
        std::int64_t want = -1;
        if (subFilter == "pl0p") want = expect.pl0p;
        if (subFilter == "onepin") want = expect.onepin;
        if (subFilter == "fivepoint") want = subTerminalize ? expect.fivepointTerminal : expect.fivepoint;
        if (subFilter == "registration") want = expect.registration;
        return verifyCount(true, subFilter, n, want);
      }
      return kExitOk;
    }

    if (*statsCmd) {
      const auto records = plp::readCatalog(statsCatalog);
      const auto s = plp::statsOf(records);
      std::cout << "total=" << s.total << "\n";
      std::cout << "minimal=" << s.minimal << "\n";
      std::cout << "nonminimal=" << s.nonminimal << "\n";
      std::cout << "untested=" << s.untested << "\n";
      std::cout << "withdegree=" << s.withDegree << "\n";
      return kExitOk;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const plp::ChartFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const plp::DegenerateEvaluation& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
