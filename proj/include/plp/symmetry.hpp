#pragma once

#include <array>
#include <functional>

#include "plp/signature.hpp"

namespace plp {

/// One of the six relabelings of the three views; map[v] is the new label of
/// view v.
struct ViewPermutation {
  std::array<int, 3> map{0, 1, 2};

  int operator()(int view) const { return map[static_cast<size_t>(view)]; }

  static ViewPermutation identity() { return {}; }
  /// All six elements, identity first.
  static const std::array<ViewPermutation, 6>& all();

  ViewPermutation compose(const ViewPermutation& inner) const;  // this ∘ inner
  ViewPermutation inverse() const;

  bool operator==(const ViewPermutation&) const = default;
};

/// Relabels the views of a signature. Variant-letter coordinates move within
/// their block; everything else is fixed. Dimension counts are invariant.
Signature applyPermutation(const Signature& sig, const ViewPermutation& g);

/// The induced permutation of the 27 signature coordinates, derived from the
/// feature catalog.
const std::array<int, kFeatureClassCount>& coordinatePermutation(const ViewPermutation& g);

enum class SwapDirection { SinkToMate, MateToSink };

/// Moves one unit between the two coordinates of a swap pair (the ordered
/// point-with-pin features sharing a pin-only view). Throws std::domain_error
/// if the source coordinate is zero.
Signature applySwap(const Signature& sig, int pairIndex,
                    SwapDirection dir = SwapDirection::MateToSink);

enum class CanonicalMode { LabelOnly, SwapAndLabel };

/// Lexicographically greatest signature of the equivalence class: over the
/// view-relabeling orbit alone, or over relabelings combined with arbitrary
/// swap moves (realized by pushing each swap pair's total onto its sink
/// coordinate after relabeling). Idempotent and constant on classes.
Signature canonicalForm(const Signature& sig, CanonicalMode mode);

/// Number of distinct signatures in the view-relabeling orbit (1, 2, 3, or 6).
int labelOrbitSize(const Signature& sig);

/// Streams one canonical representative per equivalence class of balanced
/// signatures, in lex-decreasing order. Returns the class count.
std::int64_t enumerateClasses(CanonicalMode mode,
                              const std::function<void(const Signature&)>& sink);

}  // namespace plp
