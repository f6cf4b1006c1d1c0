#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "plp/dual.hpp"
#include "plp/ffield.hpp"
#include "plp/problem.hpp"

namespace plp {

/// Raised when repeated sampling cannot find a chart-valid instance.
class ChartFailure : public std::runtime_error {
 public:
  explicit ChartFailure(const char* what) : std::runtime_error(what) {}
};

/// Local coordinates for one random (arrangement, cameras) pair.
///
/// Arrangement block, one slice per feature in localFeatures order:
///   point feature: 3 affine point coordinates, then 2 direction-chart
///   scalars per pin (direction (u, v, 1) through the point);
///   free line: 4 scalars, two anchor points (a0, a1, 0) and (b0, b1, 1).
///
/// Camera block: view 1 is fixed to [I | 0]. If view 2 is active it
/// contributes 3 rotation (Cayley) scalars plus t22, t23 with t21 = 1; if
/// view 3 is active it contributes 3 rotation scalars plus a full
/// translation. Inactive views (no observations) contribute nothing.
template <class T>
struct ChartInstance {
  std::vector<T> arrangement;
  std::vector<T> cameras;
};

struct ChartLayout {
  std::vector<LocalFeature> features;
  std::array<bool, 3> cameraActive{};
  int arrangementDim = 0;
  int cameraDim = 0;
  int imageDim = 0;
};

/// By default all three cameras carry parameters (11 in total), matching the
/// signature dimension count. With dropUnobservedCameras, views that observe
/// nothing contribute no unknowns; this keeps two-view systems square.
ChartLayout makeChartLayout(const Problem& prob, bool dropUnobservedCameras = false);

namespace detail {

template <class T>
struct Vec3 {
  T x, y, z;
};

template <class T>
Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

// Unnormalized Cayley rotation: M = (1 - |s|^2) I + 2 s s^T + 2 [s]_x with
// scale factor delta = 1 + |s|^2, so M/delta is a rotation wherever
// delta != 0. Keeping the scale avoids divisions; projective outputs cancel
// it.
template <class T>
struct ScaledCamera {
  std::array<std::array<T, 3>, 3> m;  // scaled rotation
  Vec3<T> t;                          // scaled translation
  T delta;
};

template <class T>
ScaledCamera<T> scaledCamera(const T& s1, const T& s2, const T& s3, const Vec3<T>& translation) {
  ScaledCamera<T> cam{{}, {}, zeroLike(s1)};
  const T one = oneLike(s1);
  const T norm2 = s1 * s1 + s2 * s2 + s3 * s3;
  cam.delta = one + norm2;
  const T base = one - norm2;
  const T two = one + one;
  const std::array<T, 3> s = {s1, s2, s3};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      T v = two * s[static_cast<size_t>(i)] * s[static_cast<size_t>(j)];
      if (i == j) v += base;
      cam.m[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
    }
  cam.m[0][1] -= two * s3;
  cam.m[0][2] += two * s2;
  cam.m[1][0] += two * s3;
  cam.m[1][2] -= two * s1;
  cam.m[2][0] -= two * s2;
  cam.m[2][1] += two * s1;
  cam.t.x = cam.delta * translation.x;
  cam.t.y = cam.delta * translation.y;
  cam.t.z = cam.delta * translation.z;
  return cam;
}

template <class T>
Vec3<T> apply(const ScaledCamera<T>& cam, const Vec3<T>& p) {
  return {cam.m[0][0] * p.x + cam.m[0][1] * p.y + cam.m[0][2] * p.z + cam.t.x,
          cam.m[1][0] * p.x + cam.m[1][1] * p.y + cam.m[1][2] * p.z + cam.t.y,
          cam.m[2][0] * p.x + cam.m[2][1] * p.y + cam.m[2][2] * p.z + cam.t.z};
}

template <class T>
T chartDiv(const T& a, const T& b) {
  if (isZeroExact(b)) throw DegenerateEvaluation("zero chart denominator");
  return a / b;
}

}  // namespace detail

/// Evaluates the joint camera map: every observed point yields two affine
/// image coordinates, every line seen without its point two affine dual-line
/// coordinates, and every pin seen together with its point the slope of its
/// image line. Output order: features in layout order, views in order within
/// a feature, point coordinates before pin coordinates within a view.
///
/// Throws DegenerateEvaluation on a zero denominator. If `denominators` is
/// given, every chart denominator (Cayley scale, projection third
/// coordinates, line and slope pivots) is appended to it.
template <class T>
std::vector<T> evalPhi(const ChartLayout& layout, const ChartInstance<T>& inst,
                       std::vector<T>* denominators = nullptr) {
  using detail::Vec3;
  if (inst.cameras.empty() && inst.arrangement.empty()) return {};
  const T model = inst.cameras.empty() ? inst.arrangement.at(0) : inst.cameras.at(0);
  const T zero = zeroLike(model);
  const T one = oneLike(model);

  const auto note = [&](const T& d) {
    if (denominators) denominators->push_back(d);
  };

  // cameras; view 1 is the identity frame
  std::array<detail::ScaledCamera<T>, 3> cams;
  cams[0].m = {{{one, zero, zero}, {zero, one, zero}, {zero, zero, one}}};
  cams[0].t = {zero, zero, zero};
  cams[0].delta = one;
  size_t ci = 0;
  if (layout.cameraActive[1]) {
    const T s1 = inst.cameras[ci++], s2 = inst.cameras[ci++], s3 = inst.cameras[ci++];
    const T t22 = inst.cameras[ci++], t23 = inst.cameras[ci++];
    cams[1] = detail::scaledCamera(s1, s2, s3, Vec3<T>{one, t22, t23});
    note(cams[1].delta);
  }
  if (layout.cameraActive[2]) {
    const T s1 = inst.cameras[ci++], s2 = inst.cameras[ci++], s3 = inst.cameras[ci++];
    const T t1 = inst.cameras[ci++], t2 = inst.cameras[ci++], t3 = inst.cameras[ci++];
    cams[2] = detail::scaledCamera(s1, s2, s3, Vec3<T>{t1, t2, t3});
    note(cams[2].delta);
  }

  std::vector<T> out;
  out.reserve(static_cast<size_t>(layout.imageDim));
  size_t ai = 0;
  for (const auto& feature : layout.features) {
    const auto& pat = feature.pattern;
    if (pat.freeLine) {
      const Vec3<T> a{inst.arrangement[ai], inst.arrangement[ai + 1], zero};
      const Vec3<T> b{inst.arrangement[ai + 2], inst.arrangement[ai + 3], one};
      ai += 4;
      for (int v = 0; v < 3; ++v) {
        if (!pat.pinVisible[0][static_cast<size_t>(v)]) continue;
        const auto& cam = cams[static_cast<size_t>(v)];
        const Vec3<T> line = detail::cross(detail::apply(cam, a), detail::apply(cam, b));
        note(line.z);
        out.push_back(detail::chartDiv(line.x, line.z));
        out.push_back(detail::chartDiv(line.y, line.z));
      }
      continue;
    }
    const Vec3<T> point{inst.arrangement[ai], inst.arrangement[ai + 1], inst.arrangement[ai + 2]};
    ai += 3;
    std::vector<Vec3<T>> dirs;
    dirs.reserve(pat.pinVisible.size());
    for (size_t k = 0; k < pat.pinVisible.size(); ++k) {
      dirs.push_back({inst.arrangement[ai], inst.arrangement[ai + 1], one});
      ai += 2;
    }
    for (int v = 0; v < 3; ++v) {
      const auto& cam = cams[static_cast<size_t>(v)];
      const bool seesPoint = pat.pointVisible[static_cast<size_t>(v)];
      Vec3<T> imgPoint{zero, zero, zero};
      bool havePoint = false;
      const auto pointImage = [&]() -> const Vec3<T>& {
        if (!havePoint) {
          imgPoint = detail::apply(cam, point);
          havePoint = true;
        }
        return imgPoint;
      };
      if (seesPoint) {
        const Vec3<T>& h = pointImage();
        note(h.z);
        out.push_back(detail::chartDiv(h.x, h.z));
        out.push_back(detail::chartDiv(h.y, h.z));
      }
      for (size_t k = 0; k < pat.pinVisible.size(); ++k) {
        if (!pat.pinVisible[k][static_cast<size_t>(v)]) continue;
        const Vec3<T>& h = pointImage();
        const Vec3<T> q{point.x + dirs[k].x, point.y + dirs[k].y, point.z + dirs[k].z};
        const Vec3<T> line = detail::cross(h, detail::apply(cam, q));
        if (seesPoint) {
          // image line through the already-output point; one slope scalar
          // with direction (-line.y, line.x)
          const T pivot = -line.y;
          note(pivot);
          out.push_back(detail::chartDiv(line.x, pivot));
        } else {
          note(line.z);
          out.push_back(detail::chartDiv(line.x, line.z));
          out.push_back(detail::chartDiv(line.y, line.z));
        }
      }
    }
  }
  return out;
}

/// Copy of an instance with dual scalars, seeded with derivative one on the
/// given unknown (arrangement coordinates first, then camera coordinates).
template <class T>
ChartInstance<Dual<T>> dualInstance(const ChartInstance<T>& inst, int direction) {
  ChartInstance<Dual<T>> out;
  out.arrangement.reserve(inst.arrangement.size());
  out.cameras.reserve(inst.cameras.size());
  int idx = 0;
  for (const T& v : inst.arrangement) {
    Dual<T> d(v);
    if (idx++ == direction) d.deriv = oneLike(v);
    out.arrangement.push_back(d);
  }
  for (const T& v : inst.cameras) {
    Dual<T> d(v);
    if (idx++ == direction) d.deriv = oneLike(v);
    out.cameras.push_back(d);
  }
  return out;
}

namespace detail {

inline bool denominatorTooSmall(const FieldElement& d) { return d.isZero(); }
inline bool denominatorTooSmall(const std::complex<double>& d) { return std::abs(d) < 1e-6; }

}  // namespace detail

/// Uniform random instance with resampling until every chart denominator is
/// usable. Deterministic given the seed. Throws ChartFailure after
/// `maxAttempts` rejected draws.
template <class T, class DrawScalar>
ChartInstance<T> sampleInstanceWith(const ChartLayout& layout, DrawScalar&& draw,
                                    int maxAttempts = 100) {
  for (int attempt = 0; attempt < maxAttempts; ++attempt) {
    ChartInstance<T> inst;
    inst.arrangement.reserve(static_cast<size_t>(layout.arrangementDim));
    inst.cameras.reserve(static_cast<size_t>(layout.cameraDim));
    for (int i = 0; i < layout.arrangementDim; ++i) inst.arrangement.push_back(draw());
    for (int i = 0; i < layout.cameraDim; ++i) inst.cameras.push_back(draw());
    try {
      std::vector<T> denoms;
      evalPhi(layout, inst, &denoms);
      bool ok = true;
      for (const T& d : denoms)
        if (detail::denominatorTooSmall(d)) {
          ok = false;
          break;
        }
      if (ok) return inst;
    } catch (const DegenerateEvaluation&) {
    }
  }
  throw ChartFailure("no chart-valid instance found");
}

ChartInstance<FieldElement> sampleFieldInstance(const ChartLayout& layout, std::uint64_t q,
                                                std::uint64_t seed, int maxAttempts = 100);
ChartInstance<std::complex<double>> sampleComplexInstance(const ChartLayout& layout,
                                                          std::uint64_t seed,
                                                          int maxAttempts = 100);

/// Normalized Cayley rotation (divides by the scale), for chart validation.
template <class T>
std::array<std::array<T, 3>, 3> cayleyRotation(const T& s1, const T& s2, const T& s3) {
  auto cam = detail::scaledCamera(s1, s2, s3, detail::Vec3<T>{zeroLike(s1), zeroLike(s1), zeroLike(s1)});
  std::array<std::array<T, 3>, 3> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          detail::chartDiv(cam.m[static_cast<size_t>(i)][static_cast<size_t>(j)], cam.delta);
  return r;
}

}  // namespace plp
