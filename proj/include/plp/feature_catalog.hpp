#pragma once

#include <array>
#include <optional>
#include <vector>

#include "plp/signature.hpp"

namespace plp {

/// How one local feature (a free line, or a point with its pins) is seen by
/// the three views.
struct FeaturePattern {
  bool freeLine = false;
  std::array<bool, 3> pointVisible{};               // unused for free lines
  std::vector<std::array<bool, 3>> pinVisible{};    // one entry per pin
  // free line visibility is stored as a single "pin" entry

  int pinCount() const { return freeLine ? 0 : static_cast<int>(pinVisible.size()); }
};

/// The static table of observed local features behind the 27 signature
/// coordinates. View-assignment conventions for the variant letters:
///   c21: letter a/b/c = the view seeing point+both pins is view 1/2/3; the
///        other two views, in increasing order, see one pin each.
///   c11: letter = the view NOT seeing the point (pin seen everywhere).
///   c12: roles (point+pin | point only | pin only) assigned to views; the
///        six letters are a=(1,2,3), b=(2,1,3), c=(1,3,2), d=(3,1,2),
///        e=(2,3,1), f=(3,2,1) as (point+pin view, point view, pin view).
///        Letters sharing the pin-only view form the three swap pairs
///        (a,b), (c,d), (e,f); the first letter of each pair is the
///        canonical sink for swap moves.
///   c13: letter = the view seeing the point (pin seen in the other two).
///   c01: letter = the view NOT seeing the point.
const std::array<FeaturePattern, kFeatureClassCount>& featureCatalog();

/// Swap-pair coordinate indices: each pair shares the pin-only view and
/// differs in which point-view also sees the pin. First member is the
/// canonical (lex-preferred) sink.
inline constexpr std::array<std::array<int, 2>, 3> kSwapPairs = {{
    {kC12a, kC12b},
    {kC12c, kC12d},
    {kC12e, kC12f},
}};

/// Feature classification, covering the catalog kinds plus the three
/// dangling kinds that occur only in camera-minimal problems.
enum class FeatureKind {
  Catalog,              // one of the 27 table entries
  OnePinDangling,       // point seen twice, its only pin seen once elsewhere
  TwoPinsOneDangling,   // one pin seen once alone, the other twice (once with
                        // the point, which is seen exactly once)
  TwoPinsBothDangling,  // point seen once alone, each pin seen once alone
  Other,                // anything else (reducible or invalid)
};

struct FeatureClass {
  FeatureKind kind = FeatureKind::Other;
  int catalogIndex = -1;  // valid when kind == Catalog
};

/// Matches a pattern against the catalog and the dangling kinds. Pins are
/// unordered: patterns equal up to pin relabeling classify identically.
FeatureClass classifyPattern(const FeaturePattern& pattern);

/// Exact catalog lookup (up to pin reordering).
std::optional<int> catalogIndexOf(const FeaturePattern& pattern);

}  // namespace plp
