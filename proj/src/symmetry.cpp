#include "plp/symmetry.hpp"

#include <algorithm>
#include <stdexcept>

#include "plp/feature_catalog.hpp"

namespace plp {

namespace {

FeaturePattern permutePattern(const FeaturePattern& p, const ViewPermutation& g) {
  FeaturePattern out;
  out.freeLine = p.freeLine;
  for (int v = 0; v < 3; ++v)
    if (p.pointVisible[static_cast<size_t>(v)])
      out.pointVisible[static_cast<size_t>(g(v))] = true;
  out.pinVisible.resize(p.pinVisible.size());
  for (size_t k = 0; k < p.pinVisible.size(); ++k)
    for (int v = 0; v < 3; ++v)
      if (p.pinVisible[k][static_cast<size_t>(v)])
        out.pinVisible[k][static_cast<size_t>(g(v))] = true;
  return out;
}

std::array<int, kFeatureClassCount> buildCoordinatePermutation(const ViewPermutation& g) {
  std::array<int, kFeatureClassCount> perm{};
  const auto& cat = featureCatalog();
  for (int i = 0; i < kFeatureClassCount; ++i) {
    auto image = catalogIndexOf(permutePattern(cat[static_cast<size_t>(i)], g));
    if (!image) throw std::logic_error("catalog not closed under view relabeling");
    perm[static_cast<size_t>(i)] = *image;
  }
  return perm;
}

int permutationOrdinal(const ViewPermutation& g) {
  const auto& all = ViewPermutation::all();
  for (size_t i = 0; i < all.size(); ++i)
    if (all[i] == g) return static_cast<int>(i);
  throw std::logic_error("not a view permutation");
}

Signature collapseSwapPairs(Signature sig) {
  for (const auto& pair : kSwapPairs) {
    sig[pair[0]] += sig[pair[1]];
    sig[pair[1]] = 0;
  }
  return sig;
}

}  // namespace

const std::array<ViewPermutation, 6>& ViewPermutation::all() {
  static const std::array<ViewPermutation, 6> perms = {{
      {{0, 1, 2}},
      {{0, 2, 1}},
      {{1, 0, 2}},
      {{1, 2, 0}},
      {{2, 0, 1}},
      {{2, 1, 0}},
  }};
  return perms;
}

ViewPermutation ViewPermutation::compose(const ViewPermutation& inner) const {
  ViewPermutation out;
  for (int v = 0; v < 3; ++v) out.map[static_cast<size_t>(v)] = (*this)(inner(v));
  return out;
}

ViewPermutation ViewPermutation::inverse() const {
  ViewPermutation out;
  for (int v = 0; v < 3; ++v) out.map[static_cast<size_t>((*this)(v))] = v;
  return out;
}

const std::array<int, kFeatureClassCount>& coordinatePermutation(const ViewPermutation& g) {
  static const auto tables = [] {
    std::array<std::array<int, kFeatureClassCount>, 6> t{};
    for (size_t i = 0; i < 6; ++i) t[i] = buildCoordinatePermutation(ViewPermutation::all()[i]);
    return t;
  }();
  return tables[static_cast<size_t>(permutationOrdinal(g))];
}

Signature applyPermutation(const Signature& sig, const ViewPermutation& g) {
  const auto& perm = coordinatePermutation(g);
  Signature out;
  for (int i = 0; i < kFeatureClassCount; ++i) out[perm[static_cast<size_t>(i)]] = sig[i];
  return out;
}

Signature applySwap(const Signature& sig, int pairIndex, SwapDirection dir) {
  if (pairIndex < 0 || pairIndex >= 3) throw std::domain_error("swap pair index out of range");
  const auto& pair = kSwapPairs[static_cast<size_t>(pairIndex)];
  const int from = (dir == SwapDirection::MateToSink) ? pair[1] : pair[0];
  const int to = (dir == SwapDirection::MateToSink) ? pair[0] : pair[1];
  if (sig[from] == 0) throw std::domain_error("swap source coordinate is zero");
  Signature out = sig;
  out[from] -= 1;
  out[to] += 1;
  return out;
}

Signature canonicalForm(const Signature& sig, CanonicalMode mode) {
  Signature best;
  bool first = true;
  for (const auto& g : ViewPermutation::all()) {
    Signature cand = applyPermutation(sig, g);
    if (mode == CanonicalMode::SwapAndLabel) cand = collapseSwapPairs(cand);
    if (first || cand > best) {
      best = cand;
      first = false;
    }
  }
  return best;
}

int labelOrbitSize(const Signature& sig) {
  std::array<Signature, 6> orbit;
  int n = 0;
  for (const auto& g : ViewPermutation::all()) {
    Signature img = applyPermutation(sig, g);
    bool seen = false;
    for (int i = 0; i < n; ++i)
      if (orbit[static_cast<size_t>(i)] == img) {
        seen = true;
        break;
      }
    if (!seen) orbit[static_cast<size_t>(n++)] = img;
  }
  return n;
}

std::int64_t enumerateClasses(CanonicalMode mode,
                              const std::function<void(const Signature&)>& sink) {
  // A signature is its class representative exactly when canonicalization
  // fixes it; the lex-decreasing balanced stream then yields representatives
  // already in order, with no dedup state.
  BalancedEnumerator it;
  std::int64_t n = 0;
  while (auto sig = it.next()) {
    if (canonicalForm(*sig, mode) == *sig) {
      ++n;
      sink(*sig);
    }
  }
  return n;
}

}  // namespace plp
