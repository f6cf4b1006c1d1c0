#include "plp/signature.hpp"

#include <charconv>
#include <stdexcept>

namespace plp {

namespace {

std::int64_t weightedSum(const Signature& sig,
                         const std::array<std::int64_t, kFeatureClassCount>& w) {
  std::int64_t total = 0;
  for (int i = 0; i < kFeatureClassCount; ++i) total += w[static_cast<size_t>(i)] * sig[i];
  return total;
}

}  // namespace

std::int64_t dim3d(const Signature& sig) { return weightedSum(sig, kDim3dWeights); }

std::int64_t dim2d(const Signature& sig) { return weightedSum(sig, kDim2dWeights); }

std::int64_t balanceDeficit(const Signature& sig) {
  return weightedSum(sig, kBalanceWeights) - kCameraDim;
}

DimensionReport dimensionReport(const Signature& sig) {
  DimensionReport r;
  r.dim3d = dim3d(sig);
  r.dim2d = dim2d(sig);
  r.deficit = r.dim2d - r.dim3d - r.cameraDim;
  return r;
}

bool isBalanced(const Signature& sig) { return balanceDeficit(sig) == 0; }

BalancedEnumerator::BalancedEnumerator() = default;

BalancedEnumerator::BalancedEnumerator(std::span<const std::int64_t> prefix) {
  if (prefix.size() > kFeatureClassCount)
    throw std::invalid_argument("enumeration prefix longer than signature");
  for (size_t i = 0; i < prefix.size(); ++i) {
    if (prefix[i] < 0) throw std::invalid_argument("negative enumeration prefix entry");
    current_[static_cast<int>(i)] = prefix[i];
    remaining_ -= kBalanceWeights[i] * prefix[i];
  }
  prefixLen_ = static_cast<int>(prefix.size());
  level_ = prefixLen_;
  if (remaining_ < 0) done_ = true;
}

// Depth-first search over coordinate assignments. Each coordinate takes its
// greatest feasible value first (floor of the remainder by its weight) and is
// decremented on backtracking, so complete assignments with zero remainder
// appear in strictly decreasing lexicographic order.
std::optional<Signature> BalancedEnumerator::next() {
  if (done_) return std::nullopt;
  for (;;) {
    if (level_ < kFeatureClassCount) {
      const std::int64_t w = kBalanceWeights[static_cast<size_t>(level_)];
      current_[level_] = remaining_ / w;
      remaining_ -= current_[level_] * w;
      ++level_;
      continue;
    }
    const bool hit = (remaining_ == 0);
    const Signature out = current_;
    // Backtrack to the deepest coordinate that can still be decremented.
    int i = kFeatureClassCount - 1;
    while (i >= prefixLen_ && current_[i] == 0) --i;
    if (i < prefixLen_) {
      done_ = true;
    } else {
      current_[i] -= 1;
      remaining_ += kBalanceWeights[static_cast<size_t>(i)];
      level_ = i + 1;
    }
    if (hit) return out;
    if (done_) return std::nullopt;
  }
}

std::int64_t enumerateBalanced(const std::function<void(const Signature&)>& sink) {
  BalancedEnumerator it;
  std::int64_t n = 0;
  while (auto sig = it.next()) {
    ++n;
    sink(*sig);
  }
  return n;
}

std::string toText(const Signature& sig) {
  std::string out;
  out.reserve(kFeatureClassCount * 3);
  for (int i = 0; i < kFeatureClassCount; ++i) {
    if (i) out.push_back(',');
    out += std::to_string(sig[i]);
  }
  return out;
}

std::optional<Signature> signatureFromText(std::string_view text) {
  Signature sig;
  const char* p = text.data();
  const char* end = text.data() + text.size();
  for (int i = 0; i < kFeatureClassCount; ++i) {
    if (i) {
      if (p == end || *p != ',') return std::nullopt;
      ++p;
    }
    std::int64_t v = 0;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc{} || v < 0) return std::nullopt;
    sig[i] = v;
    p = next;
  }
  if (p != end) return std::nullopt;
  return sig;
}

std::uint64_t signatureHash(const Signature& sig) {
  std::uint64_t h = 1469598103934665603ull;
  for (int i = 0; i < kFeatureClassCount; ++i) {
    auto v = static_cast<std::uint64_t>(sig[i]);
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xff;
      h *= 1099511628211ull;
    }
  }
  return h;
}

}  // namespace plp
