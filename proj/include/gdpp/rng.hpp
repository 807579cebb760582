#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace gdpp {

using Rng = std::mt19937_64;

/// Mixes a master seed with a path of stream coordinates (graph, signal,
/// sampler, ...) into an independent seed. Distinct paths give unrelated
/// streams, so adding a coordinate never perturbs the others.
std::uint64_t derive_seed(std::uint64_t master,
                          std::initializer_list<std::uint64_t> path);

/// Stable 64-bit tag for a name (FNV-1a), used as a stream coordinate.
std::uint64_t stream_tag(std::string_view name);

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace gdpp
