#include "plp/problem.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace plp {

namespace {

int viewCount(const std::array<bool, 3>& vis) {
  return static_cast<int>(vis[0]) + static_cast<int>(vis[1]) + static_cast<int>(vis[2]);
}

int singleView(const std::array<bool, 3>& vis) {
  for (int v = 0; v < 3; ++v)
    if (vis[static_cast<size_t>(v)]) return v;
  return -1;
}

void sortUnique(std::vector<int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::string patternKey(const FeaturePattern& f) {
  std::string key;
  key.push_back(f.freeLine ? 'L' : 'P');
  if (!f.freeLine)
    for (bool b : f.pointVisible) key.push_back(b ? '1' : '0');
  std::vector<std::string> pins;
  for (const auto& pin : f.pinVisible) {
    std::string s;
    for (bool b : pin) s.push_back(b ? '1' : '0');
    pins.push_back(std::move(s));
  }
  std::sort(pins.begin(), pins.end());
  for (const auto& s : pins) {
    key.push_back('|');
    key += s;
  }
  return key;
}

// What a reduction pass does to one feature.
enum class Action { None, EraseFeature, ErasePin, DropPoint };

struct RuleHit {
  Action action = Action::None;
  size_t pin = 0;
};

// First applicable forgetting rule, in priority order: unobserved features,
// then single-view rules (camera-minimal only), then the two-view rules that
// preserve minimality.
RuleHit findRule(const FeaturePattern& f, ReduceMode mode) {
  const bool cam = (mode == ReduceMode::CameraMinimal);
  if (cam) {
    if (f.freeLine) {
      if (viewCount(f.pinVisible[0]) == 0) return {Action::EraseFeature};
    } else {
      for (size_t k = 0; k < f.pinVisible.size(); ++k)
        if (viewCount(f.pinVisible[k]) == 0) return {Action::ErasePin, k};
      if (viewCount(f.pointVisible) == 0) {
        if (f.pinVisible.size() == 1) return {Action::DropPoint};
        return {Action::EraseFeature};  // bare point, or point with >= 2 pins
      }
    }
    if (f.freeLine) {
      if (viewCount(f.pinVisible[0]) == 1) return {Action::EraseFeature};
    } else {
      for (size_t k = 0; k < f.pinVisible.size(); ++k) {
        if (viewCount(f.pinVisible[k]) == 1 &&
            f.pointVisible[static_cast<size_t>(singleView(f.pinVisible[k]))])
          return {Action::ErasePin, k};
      }
      if (f.pinVisible.empty() && viewCount(f.pointVisible) <= 1) return {Action::EraseFeature};
      if (f.pinVisible.size() == 1 && viewCount(f.pointVisible) == 1 &&
          viewCount(f.pinVisible[0]) == 1 &&
          singleView(f.pinVisible[0]) != singleView(f.pointVisible))
        return {Action::EraseFeature};  // pin and point seen once, apart
    }
  }
  if (f.freeLine) {
    if (viewCount(f.pinVisible[0]) == 2) return {Action::EraseFeature};
    return {};
  }
  for (size_t k = 0; k < f.pinVisible.size(); ++k) {
    // A pin seen exactly twice, both times with its point, is the unique
    // line through the point in two known planes; it constrains nothing.
    if (viewCount(f.pinVisible[k]) != 2) continue;
    bool withPoint = true;
    for (int v = 0; v < 3; ++v)
      if (f.pinVisible[k][static_cast<size_t>(v)] && !f.pointVisible[static_cast<size_t>(v)])
        withPoint = false;
    if (withPoint) return {Action::ErasePin, k};
  }
  if (f.pinVisible.size() == 1 && viewCount(f.pointVisible) == 1 &&
      viewCount(f.pinVisible[0]) >= 2) {
    const int pv = singleView(f.pointVisible);
    if (f.pinVisible[0][static_cast<size_t>(pv)]) return {Action::DropPoint};
  }
  return {};
}

std::vector<FeaturePattern> featurePatterns(const Problem& prob) {
  std::vector<FeaturePattern> out;
  for (const auto& lf : localFeatures(prob)) out.push_back(lf.pattern);
  return out;
}

}  // namespace

bool ViewObservations::seesPoint(int i) const {
  return std::binary_search(points.begin(), points.end(), i);
}

bool ViewObservations::seesLine(int j) const {
  return std::binary_search(lines.begin(), lines.end(), j);
}

Problem makeProblem(int pointCount, int lineCount, std::vector<std::pair<int, int>> incidences,
                    std::array<ViewObservations, 3> views) {
  Problem prob;
  prob.pointCount = pointCount;
  prob.lineCount = lineCount;
  prob.incidences = std::move(incidences);
  prob.views = std::move(views);

  std::sort(prob.incidences.begin(), prob.incidences.end());
  prob.incidences.erase(std::unique(prob.incidences.begin(), prob.incidences.end()),
                        prob.incidences.end());
  std::vector<int> pointOfLine(static_cast<size_t>(lineCount), -1);
  for (const auto& [i, j] : prob.incidences) {
    if (i < 0 || i >= pointCount || j < 0 || j >= lineCount)
      throw std::invalid_argument("incidence index out of range");
    if (pointOfLine[static_cast<size_t>(j)] != -1)
      throw std::invalid_argument("line incident to two points");
    pointOfLine[static_cast<size_t>(j)] = i;
  }
  for (auto& view : prob.views) {
    sortUnique(view.points);
    sortUnique(view.lines);
    if (!view.points.empty() && (view.points.front() < 0 || view.points.back() >= pointCount))
      throw std::invalid_argument("observed point index out of range");
    if (!view.lines.empty() && (view.lines.front() < 0 || view.lines.back() >= lineCount))
      throw std::invalid_argument("observed line index out of range");
    // completeness: two observed pins meeting at a point force its image
    std::map<int, int> pinsSeen;
    for (int j : view.lines) {
      const int p = pointOfLine[static_cast<size_t>(j)];
      if (p >= 0 && ++pinsSeen[p] >= 2 && !view.seesPoint(p))
        throw std::invalid_argument("view sees two pins of an unseen point");
    }
  }
  return prob;
}

std::vector<LocalFeature> localFeatures(const Problem& prob) {
  std::vector<int> pointOfLine(static_cast<size_t>(prob.lineCount), -1);
  for (const auto& [i, j] : prob.incidences) pointOfLine[static_cast<size_t>(j)] = i;

  std::vector<LocalFeature> features(static_cast<size_t>(prob.pointCount));
  for (int i = 0; i < prob.pointCount; ++i) {
    features[static_cast<size_t>(i)].point = i;
    for (int v = 0; v < 3; ++v)
      features[static_cast<size_t>(i)].pattern.pointVisible[static_cast<size_t>(v)] =
          prob.views[static_cast<size_t>(v)].seesPoint(i);
  }
  std::vector<LocalFeature> freeLines;
  for (int j = 0; j < prob.lineCount; ++j) {
    std::array<bool, 3> vis{};
    for (int v = 0; v < 3; ++v) vis[static_cast<size_t>(v)] = prob.views[static_cast<size_t>(v)].seesLine(j);
    const int p = pointOfLine[static_cast<size_t>(j)];
    if (p >= 0) {
      features[static_cast<size_t>(p)].lines.push_back(j);
      features[static_cast<size_t>(p)].pattern.pinVisible.push_back(vis);
    } else {
      LocalFeature lf;
      lf.lines = {j};
      lf.pattern.freeLine = true;
      lf.pattern.pinVisible = {vis};
      freeLines.push_back(std::move(lf));
    }
  }
  features.insert(features.end(), freeLines.begin(), freeLines.end());
  return features;
}

Problem assembleProblem(const std::vector<FeaturePattern>& features) {
  Problem prob;
  std::array<ViewObservations, 3> views;
  std::vector<std::pair<int, int>> incidences;
  int nextPoint = 0;
  int nextLine = 0;
  // points first so indices stay dense
  std::vector<int> pointIndex(features.size(), -1);
  for (size_t fi = 0; fi < features.size(); ++fi)
    if (!features[fi].freeLine) pointIndex[fi] = nextPoint++;
  for (size_t fi = 0; fi < features.size(); ++fi) {
    const auto& f = features[fi];
    if (!f.freeLine) {
      for (int v = 0; v < 3; ++v)
        if (f.pointVisible[static_cast<size_t>(v)])
          views[static_cast<size_t>(v)].points.push_back(pointIndex[fi]);
    }
    for (const auto& pin : f.pinVisible) {
      const int j = nextLine++;
      if (!f.freeLine) incidences.emplace_back(pointIndex[fi], j);
      for (int v = 0; v < 3; ++v)
        if (pin[static_cast<size_t>(v)]) views[static_cast<size_t>(v)].lines.push_back(j);
    }
  }
  return makeProblem(nextPoint, nextLine, std::move(incidences), std::move(views));
}

Problem expand(const Signature& sig) {
  const auto& cat = featureCatalog();
  std::vector<FeaturePattern> features;
  for (int i = 0; i < kFeatureClassCount; ++i)
    for (std::int64_t n = 0; n < sig[i]; ++n) features.push_back(cat[static_cast<size_t>(i)]);
  return assembleProblem(features);
}

Problem reduce(const Problem& prob, ReduceMode mode) {
  auto features = featurePatterns(prob);
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t fi = 0; fi < features.size(); ++fi) {
      const RuleHit hit = findRule(features[fi], mode);
      if (hit.action == Action::None) continue;
      changed = true;
      switch (hit.action) {
        case Action::EraseFeature:
          features.erase(features.begin() + static_cast<std::ptrdiff_t>(fi));
          break;
        case Action::ErasePin:
          features[fi].pinVisible.erase(features[fi].pinVisible.begin() +
                                        static_cast<std::ptrdiff_t>(hit.pin));
          break;
        case Action::DropPoint:
          features[fi].freeLine = true;
          features[fi].pointVisible = {};
          break;
        case Action::None:
          break;
      }
      break;  // rescan from the start after each change
    }
  }
  return assembleProblem(features);
}

Problem liftToMinimal(const Problem& prob) {
  auto features = featurePatterns(prob);
  for (auto& f : features) {
    const FeatureClass fc = classifyPattern(f);
    switch (fc.kind) {
      case FeatureKind::Catalog:
        break;
      case FeatureKind::OnePinDangling: {
        int target = -1;
        for (int v = 0; v < 3; ++v)
          if (f.pointVisible[static_cast<size_t>(v)]) {
            target = v;
            break;
          }
        f.pinVisible[0][static_cast<size_t>(target)] = true;
        break;
      }
      case FeatureKind::TwoPinsOneDangling:
      case FeatureKind::TwoPinsBothDangling: {
        const int pv = singleView(f.pointVisible);
        for (auto& pin : f.pinVisible)
          if (viewCount(pin) == 1 && singleView(pin) != pv) pin[static_cast<size_t>(pv)] = true;
        break;
      }
      case FeatureKind::Other:
        throw std::invalid_argument("problem contains a feature outside the catalog");
    }
  }
  return assembleProblem(features);
}

namespace {

bool forbiddenInTerminal(const FeaturePattern& f) {
  const FeatureClass fc = classifyPattern(f);
  if (fc.kind == FeatureKind::TwoPinsOneDangling) return true;
  if (fc.kind != FeatureKind::Catalog) return false;
  return (fc.catalogIndex >= kC21a && fc.catalogIndex <= kC21c) ||
         (fc.catalogIndex >= kC12a && fc.catalogIndex <= kC12f);
}

}  // namespace

bool isTerminal(const Problem& prob) {
  for (const auto& f : featurePatterns(prob))
    if (forbiddenInTerminal(f)) return false;
  return true;
}

Problem terminalize(const Problem& prob) {
  auto features = featurePatterns(prob);
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& f : features) {
      if (!forbiddenInTerminal(f)) continue;
      // un-fixate one pin: erase a pin image from a view that also sees the
      // point, preferring the last such pin for determinism
      for (size_t k = f.pinVisible.size(); k-- > 0;) {
        if (viewCount(f.pinVisible[k]) < 2) continue;
        int view = -1;
        for (int v = 0; v < 3; ++v)
          if (f.pinVisible[k][static_cast<size_t>(v)] && f.pointVisible[static_cast<size_t>(v)])
            view = v;
        if (view < 0) continue;
        f.pinVisible[k][static_cast<size_t>(view)] = false;
        changed = true;
        break;
      }
      if (changed) break;
    }
  }
  return assembleProblem(features);
}

std::optional<Signature> signatureOf(const Problem& prob) {
  Signature sig;
  for (const auto& f : featurePatterns(prob)) {
    const FeatureClass fc = classifyPattern(f);
    if (fc.kind != FeatureKind::Catalog) return std::nullopt;
    sig[fc.catalogIndex] += 1;
  }
  return sig;
}

Problem permuteViews(const Problem& prob, const ViewPermutation& g) {
  Problem out = prob;
  for (int v = 0; v < 3; ++v) out.views[static_cast<size_t>(g(v))] = prob.views[static_cast<size_t>(v)];
  return out;
}

bool equivalentProblems(const Problem& a, const Problem& b) {
  std::vector<std::string> ka, kb;
  for (const auto& f : featurePatterns(a)) ka.push_back(patternKey(f));
  for (const auto& f : featurePatterns(b)) kb.push_back(patternKey(f));
  std::sort(ka.begin(), ka.end());
  std::sort(kb.begin(), kb.end());
  return ka == kb;
}

std::string toText(const Problem& prob) {
  std::ostringstream out;
  out << "points: " << prob.pointCount << "\n";
  out << "lines: " << prob.lineCount << "\n";
  out << "incidences:";
  for (const auto& [i, j] : prob.incidences) out << ' ' << i << '-' << j;
  out << "\n";
  for (int v = 0; v < 3; ++v) {
    const auto& view = prob.views[static_cast<size_t>(v)];
    out << "view" << (v + 1) << ": points";
    for (int i : view.points) out << ' ' << i;
    out << " | lines";
    for (int j : view.lines) out << ' ' << j;
    out << "\n";
  }
  return out.str();
}

std::optional<Problem> problemFromText(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int pointCount = -1, lineCount = -1;
  std::vector<std::pair<int, int>> incidences;
  std::array<ViewObservations, 3> views;
  bool sawViews[3] = {false, false, false};
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "points:") {
      ls >> pointCount;
    } else if (head == "lines:") {
      ls >> lineCount;
    } else if (head == "incidences:") {
      std::string tok;
      while (ls >> tok) {
        const auto dash = tok.find('-');
        if (dash == std::string::npos) return std::nullopt;
        incidences.emplace_back(std::stoi(tok.substr(0, dash)), std::stoi(tok.substr(dash + 1)));
      }
    } else if (head.rfind("view", 0) == 0) {
      const int v = head[4] - '1';
      if (v < 0 || v > 2) return std::nullopt;
      sawViews[v] = true;
      std::string tok;
      ls >> tok;  // "points"
      bool inLines = false;
      while (ls >> tok) {
        if (tok == "|") {
          ls >> tok;  // "lines"
          inLines = true;
          continue;
        }
        (inLines ? views[static_cast<size_t>(v)].lines : views[static_cast<size_t>(v)].points)
            .push_back(std::stoi(tok));
      }
    } else if (!head.empty()) {
      return std::nullopt;
    }
  }
  if (pointCount < 0 || lineCount < 0 || !(sawViews[0] && sawViews[1] && sawViews[2]))
    return std::nullopt;
  try {
    return makeProblem(pointCount, lineCount, std::move(incidences), std::move(views));
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

Problem fivePointProblem() {
  std::array<ViewObservations, 3> views;
  views[0].points = {0, 1, 2, 3, 4};
  views[1].points = {0, 1, 2, 3, 4};
  return makeProblem(5, 0, {}, std::move(views));
}

}  // namespace plp
