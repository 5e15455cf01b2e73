#include "conduit/synthetic.hpp"

#include <algorithm>
#include <random>

#include "conduit/errors.hpp"

namespace conduit {

SyntheticProfile synthetic_profile_from_string(std::string_view text) {
    if (text == "uniform") return SyntheticProfile::Uniform;
    if (text == "planted" || text == "planted_communities")
        return SyntheticProfile::PlantedCommunities;
    if (text == "zero_heavy") return SyntheticProfile::ZeroHeavy;
    throw ParseError("unknown synthetic profile '" + std::string(text) +
                     "' (expected uniform, planted, or zero_heavy)");
}

int planted_block_of(int vertex, int n, int blocks) {
    // Equal-ish contiguous blocks; the first n % blocks get the extra vertex.
    int base = n / blocks;
    int extra = n % blocks;
    int boundary = extra * (base + 1);
    if (vertex < boundary)
        return vertex / (base + 1);
    return extra + (vertex - boundary) / base;
}

RateMatrix generate_synthetic(int n, std::uint64_t seed, SyntheticProfile profile,
                              IncomeType income_type, int blocks) {
    if (n < 2)
        throw DomainError("synthetic matrix needs n >= 2, got " + std::to_string(n));
    if (profile == SyntheticProfile::PlantedCommunities && (blocks < 2 || blocks > n))
        throw DomainError("planted_communities needs 2 <= blocks <= n");

    std::mt19937_64 rng(seed);
    auto uniform_micro = [&](Micro lo, Micro hi) {
        return std::uniform_int_distribution<Micro>(lo, hi)(rng);
    };

    std::vector<Micro> cells(static_cast<std::size_t>(n) * n, -1);
    auto cell = [&](int i, int j) -> Micro& {
        return cells[static_cast<std::size_t>(i) * n + j];
    };

    switch (profile) {
    case SyntheticProfile::Uniform:
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j)
                    cell(i, j) = uniform_micro(0, 40 * kMicroPerPercent);
        break;

    case SyntheticProfile::PlantedCommunities:
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j)
                    continue;
                bool same = planted_block_of(i, n, blocks) == planted_block_of(j, n, blocks);
                cell(i, j) = same ? uniform_micro(0, 4 * kMicroPerPercent)
                                  : uniform_micro(8 * kMicroPerPercent, 35 * kMicroPerPercent);
            }
        break;

    case SyntheticProfile::ZeroHeavy: {
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j)
                    pairs.emplace_back(i, j);
        std::shuffle(pairs.begin(), pairs.end(), rng);
        std::size_t zeros = (pairs.size() * 3 + 4) / 5; // 60%, rounded up
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            auto [i, j] = pairs[k];
            cell(i, j) = k < zeros ? 0 : uniform_micro(1, 35 * kMicroPerPercent);
        }
        break;
    }
    }

    return RateMatrix(n, income_type, std::move(cells));
}

JurisdictionRegistry synthetic_registry(int n) {
    std::vector<JurisdictionRegistry::Entry> entries;
    entries.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        char code[16];
        std::snprintf(code, sizeof code, "J%03d", i);
        entries.push_back({code, "Synthetic jurisdiction " + std::to_string(i)});
    }
    return JurisdictionRegistry::from_entries(std::move(entries));
}

} // namespace conduit
