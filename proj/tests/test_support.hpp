#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "conduit/rate_matrix.hpp"
#include "conduit/registry.hpp"
#include "conduit/tax_graph.hpp"

namespace support {

inline std::filesystem::path fixtures_dir() {
    if (const char* env = std::getenv("CONDUIT_FIXTURES"))
        return env;
    return "tests/fixtures";
}

inline std::filesystem::path data_dir() {
    if (const char* env = std::getenv("CONDUIT_DATA"))
        return env;
    return "data";
}

inline std::filesystem::path fixture(const std::string& name) {
    return fixtures_dir() / name;
}

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Treaty-shopping triangle: A imposes 25 toward B, 0 toward C; C imposes 5 toward B.
// Remaining arcs are prohibitive.
inline conduit::RateMatrix triangle_matrix() {
    using conduit::kMicroPerPercent;
    const conduit::Micro x = 99 * kMicroPerPercent;
    std::vector<conduit::Micro> cells{
        // A            B                       C
        -1,             25 * kMicroPerPercent,  0,  // A
        x,              -1,                     x,  // B
        x,              5 * kMicroPerPercent,   -1, // C
    };
    return conduit::RateMatrix(3, conduit::IncomeType::Dividends, std::move(cells));
}

// Fork-of-forks instance: s=0, a=1, b=2, c1=3, c2=4, t=5. All three s-t paths weigh
// 3 units; the b branch forks again. Weights are raw units (no sanction), so
// the tie is real.
inline conduit::TaxGraph fork_of_forks() {
    std::vector<conduit::WeightedArc> arcs{
        {0, 1, 1}, {1, 5, 2}, {0, 2, 1}, {2, 3, 1}, {2, 4, 1}, {3, 5, 1}, {4, 5, 1},
    };
    return conduit::TaxGraph::from_arcs(6, conduit::IncomeType::Dividends, arcs);
}

// Complete digraph where every rate is `rate_percent`.
inline conduit::RateMatrix uniform_matrix(int n, conduit::Micro rate) {
    std::vector<conduit::Micro> cells(static_cast<std::size_t>(n) * n, rate);
    return conduit::RateMatrix(n, conduit::IncomeType::Dividends, std::move(cells));
}

} // namespace support
