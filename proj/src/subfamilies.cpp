#include "plp/subfamilies.hpp"

#include <algorithm>

namespace plp {

std::optional<std::pair<int, int>> SubfamilyCriteria::fivePointPair(const Problem& prob) const {
  for (int v = 0; v < 3; ++v) {
    for (int w = v + 1; w < 3; ++w) {
      const auto& pv = prob.views[static_cast<size_t>(v)].points;
      const auto& pw = prob.views[static_cast<size_t>(w)].points;
      std::vector<int> common;
      std::set_intersection(pv.begin(), pv.end(), pw.begin(), pw.end(),
                            std::back_inserter(common));
      if (common.size() >= 5) return std::make_pair(v, w);
    }
  }
  return std::nullopt;
}

std::optional<int> SubfamilyCriteria::registrationView(const Problem& prob,
                                                       std::pair<int, int> pair) const {
  const int u = 3 - pair.first - pair.second;
  const auto& viewU = prob.views[static_cast<size_t>(u)];
  const auto& viewV = prob.views[static_cast<size_t>(pair.first)];
  const auto& viewW = prob.views[static_cast<size_t>(pair.second)];
  for (int i : viewU.points)
    if (!viewV.seesPoint(i) || !viewW.seesPoint(i)) return std::nullopt;
  for (int j : viewU.lines) {
    int seen = 0;
    for (int v = 0; v < 3; ++v)
      if (prob.views[static_cast<size_t>(v)].seesLine(j)) ++seen;
    if (seen < 2) return std::nullopt;
  }
  return u;
}

const SubfamilyCriteria& defaultCriteria() {
  static const SubfamilyCriteria criteria;
  return criteria;
}

bool isPL0PSignature(const Signature& sig) {
  for (int i = 0; i < kFeatureClassCount; ++i) {
    if (i == kC00 || i == kFree || (i >= kC01a && i <= kC01c)) continue;
    if (sig[i] != 0) return false;
  }
  return true;
}

bool isOnePinSignature(const Signature& sig) {
  for (int i = kC7; i <= kC3; ++i)
    if (sig[i] != 0) return false;
  for (int i = kC20; i <= kC21c; ++i)
    if (sig[i] != 0) return false;
  return true;
}

std::optional<std::pair<int, int>> detectFivePointExtension(const Problem& prob) {
  return defaultCriteria().fivePointPair(prob);
}

std::optional<int> detectRegistration(const Problem& prob, std::pair<int, int> pair) {
  return defaultCriteria().registrationView(prob, pair);
}

}  // namespace plp
