#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plp/feature_catalog.hpp"
#include "plp/signature.hpp"
#include "plp/symmetry.hpp"

namespace plp {

struct ViewObservations {
  std::vector<int> points;  // sorted ascending
  std::vector<int> lines;   // sorted ascending

  bool seesPoint(int i) const;
  bool seesLine(int j) const;
  bool operator==(const ViewObservations&) const = default;
};

/// A point-line problem in three views: p points and l lines in space, an
/// incidence relation between them, and per-view observation lists. Every
/// line is incident to at most one point, and a view seeing two lines through
/// the same point also sees the point.
struct Problem {
  int pointCount = 0;
  int lineCount = 0;
  std::vector<std::pair<int, int>> incidences;  // (point, line), lex sorted
  std::array<ViewObservations, 3> views;

  bool operator==(const Problem&) const = default;
};

/// Validates and normalizes (sorts observation lists, orders incidences).
/// Throws std::invalid_argument on out-of-range indices, a line incident to
/// two points, or an observation set violating completeness.
Problem makeProblem(int pointCount, int lineCount, std::vector<std::pair<int, int>> incidences,
                    std::array<ViewObservations, 3> views);

/// A local feature of a problem: one point with all its pins, or a free line.
struct LocalFeature {
  int point = -1;               // -1 for a free line
  std::vector<int> lines;       // pin indices, or the single free-line index
  FeaturePattern pattern;       // observation pattern
};

std::vector<LocalFeature> localFeatures(const Problem& prob);

/// Builds the problem with one local feature per signature count, using
/// the static catalog. Fresh indices are assigned in signature order.
Problem expand(const Signature& sig);

/// Rebuilds a problem from feature patterns (points first, then lines, in
/// feature order).
Problem assembleProblem(const std::vector<FeaturePattern>& features);

enum class ReduceMode { Minimal, CameraMinimal };

/// Removes features and observations that impose no camera constraint until
/// no rule applies. Minimal mode uses only the minimality-preserving rules
/// (pins seen twice with their point, free lines seen twice, points seen
/// once together with a twice-seen pin); camera-minimal mode additionally
/// drops unobserved and once-seen features. Idempotent.
Problem reduce(const Problem& prob, ReduceMode mode);

/// Adds one image observation per dangling pin so that every feature becomes
/// uniquely reconstructible; camera solutions are unchanged. For a point with
/// one dangling pin the pin image goes to the lower-indexed view seeing the
/// point. Throws std::invalid_argument if the problem contains a feature
/// outside the catalog and dangling kinds.
Problem liftToMinimal(const Problem& prob);

/// True when none of the three observed kinds that a camera-equivalent
/// simpler problem exists for occurs: a point whose pin is seen with it and
/// once elsewhere (the swap-pair kind), a point seen with both pins, and a
/// point with two pins exactly one of which dangles.
bool isTerminal(const Problem& prob);

/// Strips pin observations (the lift replacements read backwards) until the
/// problem is terminal. Camera-degree preserving.
Problem terminalize(const Problem& prob);

/// Signature of a problem whose features are all catalog kinds.
std::optional<Signature> signatureOf(const Problem& prob);

/// Relabels the views.
Problem permuteViews(const Problem& prob, const ViewPermutation& g);

/// True when both problems have the same feature multiset (equality up to
/// renumbering points, lines, and features).
bool equivalentProblems(const Problem& a, const Problem& b);

/// Text block with p, l, incidence pairs, and the three observation lists.
std::string toText(const Problem& prob);
std::optional<Problem> problemFromText(std::string_view text);

/// The two-view validation target: five points seen by the first two views.
Problem fivePointProblem();

}  // namespace plp
