#include "plp/feature_catalog.hpp"

#include <algorithm>

namespace plp {

namespace {

constexpr std::array<bool, 3> kAll = {true, true, true};

FeaturePattern fullPoint(int pins) {
  FeaturePattern p;
  p.pointVisible = kAll;
  p.pinVisible.assign(static_cast<size_t>(pins), kAll);
  return p;
}

std::array<bool, 3> views(std::initializer_list<int> vs) {
  std::array<bool, 3> a{};
  for (int v : vs) a[static_cast<size_t>(v)] = true;
  return a;
}

std::array<FeaturePattern, kFeatureClassCount> buildCatalog() {
  std::array<FeaturePattern, kFeatureClassCount> cat;
  cat[kC7] = fullPoint(7);
  cat[kC6] = fullPoint(6);
  cat[kC5] = fullPoint(5);
  cat[kC4] = fullPoint(4);
  cat[kC3] = fullPoint(3);
  cat[kC20] = fullPoint(2);

  // c21: one view sees the point with both pins, the other two see one
  // distinct pin each without the point.
  for (int full = 0; full < 3; ++full) {
    FeaturePattern p;
    p.pointVisible = views({full});
    int others[2], n = 0;
    for (int v = 0; v < 3; ++v)
      if (v != full) others[n++] = v;
    p.pinVisible = {views({full, others[0]}), views({full, others[1]})};
    cat[kC21a + full] = p;
  }

  cat[kC10] = fullPoint(1);

  // c11: pin in all three views, point in exactly two.
  for (int missing = 0; missing < 3; ++missing) {
    FeaturePattern p;
    p.pointVisible = kAll;
    p.pointVisible[static_cast<size_t>(missing)] = false;
    p.pinVisible = {kAll};
    cat[kC11a + missing] = p;
  }

  // c12: ordered role assignment (point+pin / point alone / pin alone).
  constexpr std::array<std::array<int, 3>, 6> roles = {{
      {0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 0, 1}, {1, 2, 0}, {2, 1, 0},
  }};
  for (int i = 0; i < 6; ++i) {
    const auto [withPin, alone, pinOnly] = std::tuple{roles[static_cast<size_t>(i)][0],
                                                      roles[static_cast<size_t>(i)][1],
                                                      roles[static_cast<size_t>(i)][2]};
    FeaturePattern p;
    p.pointVisible = views({withPin, alone});
    p.pinVisible = {views({withPin, pinOnly})};
    cat[kC12a + i] = p;
  }

  // c13: point in one view only, pin in the other two without the point.
  for (int pointView = 0; pointView < 3; ++pointView) {
    FeaturePattern p;
    p.pointVisible = views({pointView});
    int others[2], n = 0;
    for (int v = 0; v < 3; ++v)
      if (v != pointView) others[n++] = v;
    p.pinVisible = {views({others[0], others[1]})};
    cat[kC13a + pointView] = p;
  }

  cat[kC00] = fullPoint(0);

  // c01: point in exactly two views.
  for (int missing = 0; missing < 3; ++missing) {
    FeaturePattern p;
    p.pointVisible = kAll;
    p.pointVisible[static_cast<size_t>(missing)] = false;
    cat[kC01a + missing] = p;
  }

  FeaturePattern freeLine;
  freeLine.freeLine = true;
  freeLine.pinVisible = {kAll};
  cat[kFree] = freeLine;
  return cat;
}

bool samePattern(const FeaturePattern& a, const FeaturePattern& b) {
  if (a.freeLine != b.freeLine) return false;
  if (!a.freeLine && a.pointVisible != b.pointVisible) return false;
  if (a.pinVisible.size() != b.pinVisible.size()) return false;
  auto pa = a.pinVisible;
  auto pb = b.pinVisible;
  std::sort(pa.begin(), pa.end());
  std::sort(pb.begin(), pb.end());
  return pa == pb;
}

int viewCount(const std::array<bool, 3>& vis) {
  return static_cast<int>(vis[0]) + static_cast<int>(vis[1]) + static_cast<int>(vis[2]);
}

}  // namespace

const std::array<FeaturePattern, kFeatureClassCount>& featureCatalog() {
  static const auto catalog = buildCatalog();
  return catalog;
}

std::optional<int> catalogIndexOf(const FeaturePattern& pattern) {
  const auto& cat = featureCatalog();
  for (int i = 0; i < kFeatureClassCount; ++i)
    if (samePattern(cat[static_cast<size_t>(i)], pattern)) return i;
  return std::nullopt;
}

FeatureClass classifyPattern(const FeaturePattern& pattern) {
  FeatureClass fc;
  if (auto idx = catalogIndexOf(pattern)) {
    fc.kind = FeatureKind::Catalog;
    fc.catalogIndex = *idx;
    return fc;
  }
  if (pattern.freeLine) return fc;

  const int points = viewCount(pattern.pointVisible);
  const auto seesPoint = [&](int v) { return pattern.pointVisible[static_cast<size_t>(v)]; };
  const auto singleView = [](const std::array<bool, 3>& vis) {
    for (int v = 0; v < 3; ++v)
      if (vis[static_cast<size_t>(v)]) return v;
    return -1;
  };

  if (pattern.pinVisible.size() == 1 && points == 2 && viewCount(pattern.pinVisible[0]) == 1) {
    const int pinView = singleView(pattern.pinVisible[0]);
    if (!seesPoint(pinView)) {
      fc.kind = FeatureKind::OnePinDangling;
      return fc;
    }
  }

  if (pattern.pinVisible.size() == 2 && points == 1) {
    const int pointView = singleView(pattern.pointVisible);
    const auto& p0 = pattern.pinVisible[0];
    const auto& p1 = pattern.pinVisible[1];
    const int n0 = viewCount(p0);
    const int n1 = viewCount(p1);
    if (n0 == 1 && n1 == 1) {
      const int v0 = singleView(p0);
      const int v1 = singleView(p1);
      if (v0 != v1 && v0 != pointView && v1 != pointView) {
        fc.kind = FeatureKind::TwoPinsBothDangling;
        return fc;
      }
    }
    if (n0 + n1 == 3 && (n0 == 1 || n1 == 1)) {
      const auto& dangling = (n0 == 1) ? p0 : p1;
      const auto& fixed = (n0 == 1) ? p1 : p0;
      const int dv = singleView(dangling);
      if (dv != pointView && !fixed[static_cast<size_t>(dv)] &&
          fixed[static_cast<size_t>(pointView)]) {
        fc.kind = FeatureKind::TwoPinsOneDangling;
        return fc;
      }
    }
  }
  return fc;
}

}  // namespace plp
