#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace plp {

/// Number of observed local-feature classes counted by a signature.
inline constexpr int kFeatureClassCount = 27;

/// Coordinate indices of the signature vector. The order is fixed repo-wide:
/// points with 7..3 pins (fully observed), then points with two pins, one
/// pin, zero pins, and finally free lines, with the variant letters a.. of
/// each partially-observed class enumerating the view assignments defined in
/// feature_catalog.hpp.
enum SigIndex : int {
  kC7 = 0,
  kC6,
  kC5,
  kC4,
  kC3,
  kC20,
  kC21a,
  kC21b,
  kC21c,
  kC10,
  kC11a,
  kC11b,
  kC11c,
  kC12a,
  kC12b,
  kC12c,
  kC12d,
  kC12e,
  kC12f,
  kC13a,
  kC13b,
  kC13c,
  kC00,
  kC01a,
  kC01b,
  kC01c,
  kFree,
};

/// Count vector of observed local features; the complete combinatorial
/// identity of a reduced point-line problem in three views.
struct Signature {
  std::array<std::int64_t, kFeatureClassCount> counts{};

  std::int64_t& operator[](int i) { return counts[static_cast<size_t>(i)]; }
  std::int64_t operator[](int i) const { return counts[static_cast<size_t>(i)]; }

  auto operator<=>(const Signature&) const = default;
};

/// Degrees of freedom of a local feature in 3-space, per signature coordinate.
/// A point with k pins has 3 + 2k, a free line has 4.
inline constexpr std::array<std::int64_t, kFeatureClassCount> kDim3dWeights = {
    17, 15, 13, 11, 9,          // c7..c3
    7,  7,  7,  7,              // c20, c21a..c
    5,                          // c10
    5,  5,  5,                  // c11a..c
    5,  5,  5,  5,  5, 5,       // c12a..f
    5,  5,  5,                  // c13a..c
    3,                          // c00
    3,  3,  3,                  // c01a..c
    4,                          // f
};

/// Degrees of freedom of the observations of a local feature in the three
/// views: 2 per observed point, 2 per observed line seen without its point,
/// 1 per pin seen together with its point.
inline constexpr std::array<std::int64_t, kFeatureClassCount> kDim2dWeights = {
    27, 24, 21, 18, 15,         // c7..c3
    12, 8,  8,  8,              // c20, c21a..c
    9,                          // c10
    8,  8,  8,                  // c11a..c
    7,  7,  7,  7,  7, 7,       // c12a..f
    6,  6,  6,                  // c13a..c
    6,                          // c00
    4,  4,  4,                  // c01a..c
    6,                          // f
};

/// Per-coordinate excess of image DOF over space DOF. A signature is
/// balanced exactly when these weights sum to 11, the dimension of the
/// normalized three-camera configuration space.
inline constexpr std::array<std::int64_t, kFeatureClassCount> kBalanceWeights = {
    10, 9, 8, 7, 6,             // c7..c3
    5,  1, 1, 1,                // c20, c21a..c
    4,                          // c10
    3,  3, 3,                   // c11a..c
    2,  2, 2, 2, 2, 2,          // c12a..f
    1,  1, 1,                   // c13a..c
    3,                          // c00
    1,  1, 1,                   // c01a..c
    2,                          // f
};

inline constexpr std::int64_t kCameraDim = 11;

struct DimensionReport {
  std::int64_t dim3d = 0;
  std::int64_t dim2d = 0;
  std::int64_t cameraDim = kCameraDim;
  std::int64_t deficit = 0;
};

std::int64_t dim3d(const Signature& sig);
std::int64_t dim2d(const Signature& sig);
std::int64_t balanceDeficit(const Signature& sig);
DimensionReport dimensionReport(const Signature& sig);
bool isBalanced(const Signature& sig);

/// Streams every non-negative integer solution of the balance equation in
/// strictly decreasing lexicographic order of the 27-vector. Resumable; a
/// fixed prefix restricts the stream to its completions, which lets callers
/// fan the enumeration out by leading coordinate.
class BalancedEnumerator {
 public:
  BalancedEnumerator();
  explicit BalancedEnumerator(std::span<const std::int64_t> prefix);

  /// Next signature in lex-decreasing order, or nullopt when exhausted.
  std::optional<Signature> next();

 private:
  bool descend();

  Signature current_{};
  std::int64_t remaining_ = kCameraDim;
  int level_ = 0;     // first coordinate not yet fixed
  int prefixLen_ = 0;
  bool done_ = false;
  bool primed_ = false;
};

/// Runs the full balanced enumeration into a sink. Returns the stream count.
std::int64_t enumerateBalanced(const std::function<void(const Signature&)>& sink);

/// Text encoding used by the CLI and catalog files: 27 decimal integers,
/// comma-separated, no spaces.
std::string toText(const Signature& sig);
std::optional<Signature> signatureFromText(std::string_view text);

/// FNV-1a over the count vector; stable across runs, used to derive
/// per-class random seeds.
std::uint64_t signatureHash(const Signature& sig);

}  // namespace plp
