#pragma once

#include <optional>
#include <utility>

#include "plp/problem.hpp"
#include "plp/signature.hpp"

namespace plp {

/// Membership criteria for the five-point extension and camera registration
/// subfamilies. The defaults are the project's operational reading of those
/// notions; they are kept behind this interface so the published counts can
/// drive reconciliation if an alternative reading is needed.
struct SubfamilyCriteria {
  virtual ~SubfamilyCriteria() = default;

  /// Lex-first view pair {v, w} with at least five points observed in both.
  virtual std::optional<std::pair<int, int>> fivePointPair(const Problem& prob) const;

  /// The remaining view u, if every point it observes is observed by both
  /// views of the pair (so it is triangulable without u) and every line it
  /// observes is seen in at least two views in total. The residual problem
  /// then constrains only camera u.
  virtual std::optional<int> registrationView(const Problem& prob,
                                              std::pair<int, int> pair) const;
};

const SubfamilyCriteria& defaultCriteria();

/// Only points without pins and free lines.
bool isPL0PSignature(const Signature& sig);

/// At most one pin per point.
bool isOnePinSignature(const Signature& sig);

std::optional<std::pair<int, int>> detectFivePointExtension(const Problem& prob);
std::optional<int> detectRegistration(const Problem& prob, std::pair<int, int> pair);

}  // namespace plp
