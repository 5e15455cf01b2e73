#pragma once

#include <cstdint>

#include "conduit/rate_matrix.hpp"
#include "conduit/registry.hpp"

namespace conduit {

enum class SyntheticProfile { Uniform, PlantedCommunities, ZeroHeavy };

SyntheticProfile synthetic_profile_from_string(std::string_view text);

/// Deterministic test-fixture matrices: the same (n, seed, profile, blocks)
/// always yields the same matrix.
///   uniform:             rates uniform on a 6-decimal grid in [0, 40]
///   planted_communities: `blocks` equal-ish blocks; intra-block rates in
///                        [0, 4], inter-block rates in [8, 35] — every
///                        intra is below every inter, threshold 5 separates
///   zero_heavy:          60% of cells exactly 0 (by count), rest uniform
RateMatrix generate_synthetic(int n, std::uint64_t seed, SyntheticProfile profile,
                              IncomeType income_type = IncomeType::Dividends,
                              int blocks = 3);

/// Ground truth for planted_communities: block of vertex v.
int planted_block_of(int vertex, int n, int blocks);

/// Registry with codes J000, J001, ... matching a synthetic matrix.
JurisdictionRegistry synthetic_registry(int n);

} // namespace conduit
