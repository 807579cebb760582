#pragma once

#include <string>
#include <vector>

#include "gdpp/types.hpp"

namespace gdpp {

/// Ordered sampled nodes and their reweighting values (the diagonal of P).
/// An empty `weights` means unweighted (P = I). Duplicates only come from
/// the i.i.d. sampler.
struct SamplingSet {
  std::vector<Index> nodes;
  std::vector<double> weights;
  std::string method;

  std::size_t size() const noexcept { return nodes.size(); }
  bool weighted() const noexcept { return !weights.empty(); }

  /// Throws OutOfRange / ShapeMismatch / InvalidParams when the invariants
  /// (indices in [0, n), weights > 0 and one per node) do not hold.
  void validate(Index n) const;
};

}  // namespace gdpp
