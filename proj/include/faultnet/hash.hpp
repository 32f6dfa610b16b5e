#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace faultnet {

// 64-bit FNV-1a. Used for config/manifest/bundle fingerprints, which must be
// stable across platforms and standard library implementations.
std::uint64_t fnv1a64(std::string_view bytes,
                      std::uint64_t basis = 0xcbf29ce484222325ULL) noexcept;

std::string hex64(std::uint64_t value);

// SplitMix64 finalizer; mixes a base seed with a cell key into a child seed.
std::uint64_t mix_seed(std::uint64_t base, std::string_view key) noexcept;

}  // namespace faultnet
