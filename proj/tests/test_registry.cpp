#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>

#include "conduit/errors.hpp"
#include "conduit/rate_matrix.hpp"
#include "conduit/registry.hpp"
#include "conduit/synthetic.hpp"
#include "test_support.hpp"

using namespace conduit;

TEST_CASE("registry: dense ids in file order") {
    auto tmp = std::filesystem::temp_directory_path() / "conduit_reg_basic.csv";
    std::ofstream(tmp) << "code,name\nUK,United Kingdom\nUAE,United Arab Emirates\n";
    JurisdictionRegistry reg = load_registry(tmp);
    CHECK(reg.size() == 2);
    CHECK(reg.id_of("UK") == 0);
    CHECK(reg.id_of("UAE") == 1);
    CHECK(reg.name(0) == "United Kingdom");
    CHECK_FALSE(reg.id_of("uk").has_value()); // case-sensitive
}

TEST_CASE("registry: empty file is a hard error") {
    CHECK_THROWS_WITH_AS(load_registry(support::fixture("registry_empty.csv")),
                         doctest::Contains("empty registry"), ParseError);
}

TEST_CASE("registry: duplicate code names both lines") {
    try {
        load_registry(support::fixture("registry_dup.csv"));
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        std::string msg = e.what();
        CHECK(msg.find("duplicate code 'A'") != std::string::npos);
        CHECK(msg.find("line 2") != std::string::npos); // first occurrence
        CHECK(msg.find(":4:") != std::string::npos);    // second occurrence
    }
}

TEST_CASE("registry: CRLF line endings accepted") {
    auto tmp = std::filesystem::temp_directory_path() / "conduit_reg_crlf.csv";
    std::ofstream(tmp, std::ios::binary) << "code,name\r\nUK,United Kingdom\r\nUAE,UAE\r\n";
    JurisdictionRegistry reg = load_registry(tmp);
    CHECK(reg.size() == 2);
    CHECK(reg.name(0) == "United Kingdom");
}

TEST_CASE("registry: whitespace in code rejected") {
    auto tmp = std::filesystem::temp_directory_path() / "conduit_reg_ws.csv";
    std::ofstream(tmp) << "code,name\nA B,Jurisdiction\n";
    CHECK_THROWS_AS(load_registry(tmp), ParseError);
}

TEST_CASE("registry: shipped file has the 165 jurisdictions") {
    JurisdictionRegistry reg = load_registry(support::data_dir() / "jurisdictions.csv");
    CHECK(reg.size() == 165);
    // spot checks incl. names that need CSV quoting
    CHECK(reg.id_of("UK").has_value());
    CHECK(reg.id_of("UAE").has_value());
    CHECK(reg.id_of("Kuwait").has_value());
    CHECK(reg.id_of("Korea").has_value());
    CHECK(reg.name(*reg.id_of("Bonaire")) == "Bonaire, Sint Eustatius and Saba");
}

TEST_CASE("registry: write/load round trip with quoted names") {
    JurisdictionRegistry reg = load_registry(support::data_dir() / "jurisdictions.csv");
    auto tmp = std::filesystem::temp_directory_path() / "conduit_reg_rt.csv";
    {
        std::ofstream out(tmp);
        write_registry(out, reg);
    }
    JurisdictionRegistry back = load_registry(tmp);
    REQUIRE(back.size() == reg.size());
    for (int i = 0; i < reg.size(); ++i) {
        CHECK(back.code(i) == reg.code(i));
        CHECK(back.name(i) == reg.name(i));
    }
}

TEST_CASE("nearest_code suggests an existing code") {
    JurisdictionRegistry reg = load_registry(support::fixture("registry_ukafg.csv"));
    CHECK(nearest_code(reg, "UKK") == "UK");
    CHECK(nearest_code(reg, "Afganistan") == "Afghanistan");
}

TEST_CASE("matrix: UK/Afghanistan rates parse to the expected cells") {
    JurisdictionRegistry reg = load_registry(support::fixture("registry_ukafg.csv"));
    RateMatrix m =
        parse_rate_matrix(support::fixture("matrix_ukafg.csv"), reg, IncomeType::Dividends);
    CHECK(m.rate(*reg.id_of("UK"), *reg.id_of("Afghanistan")) == 0);
    CHECK(m.rate(*reg.id_of("Afghanistan"), *reg.id_of("UK")) == 20 * kMicroPerPercent);
}

TEST_CASE("matrix: negative cell reports coordinates") {
    JurisdictionRegistry reg = load_registry(support::fixture("registry_abc.csv"));
    ValidationReport r = validate_rate_file(support::fixture("matrix_bad_rate.csv"), reg);
    REQUIRE(r.errors.size() == 1);
    CHECK(r.errors[0].line == 2);
    CHECK(r.errors[0].column == 3);
    CHECK_THROWS_AS(
        parse_rate_matrix(support::fixture("matrix_bad_rate.csv"), reg, IncomeType::Dividends),
        ParseError);
}

TEST_CASE("matrix: decimal rates are stored exactly") {
    CHECK(parse_rate("12.5") == 12'500'000);
    CHECK(format_rate(12'500'000) == "12.5");
    CHECK(parse_rate("0.000001") == 1);
    CHECK(parse_rate("100") == kMaxRate);
    CHECK_THROWS_AS(parse_rate("100.000001"), ParseError);
    CHECK_THROWS_AS(parse_rate("0.1234567"), ParseError); // 7 decimals: hard error
    CHECK_THROWS_AS(parse_rate("1e-3"), ParseError);
    CHECK_THROWS_AS(parse_rate(""), ParseError);

    // round trip across the 6-decimal grid
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<Micro> dist(0, kMaxRate);
    for (int k = 0; k < 2000; ++k) {
        Micro r = dist(rng);
        CHECK(parse_rate(format_rate(r)) == r);
    }
}

TEST_CASE("matrix: missing cell, diagonal, unknown code, over-precision") {
    JurisdictionRegistry reg = load_registry(support::fixture("registry_abc.csv"));

    ValidationReport missing = validate_rate_file(support::fixture("matrix_missing_cell.csv"), reg);
    REQUIRE(missing.errors.size() == 1);
    CHECK(missing.errors[0].message == "missing rate A -> C");
    CHECK(missing.errors[0].line == 2);
    CHECK(missing.errors[0].column == 4);

    ValidationReport diag = validate_rate_file(support::fixture("matrix_diag.csv"), reg);
    REQUIRE(diag.errors.size() == 1);
    CHECK(diag.errors[0].message.find("diagonal") != std::string::npos);

    ValidationReport unknown = validate_rate_file(support::fixture("matrix_unknown_code.csv"), reg);
    CHECK_FALSE(unknown.accepted());
    bool names_x = false;
    for (const auto& e : unknown.errors)
        names_x = names_x || e.message.find("'X'") != std::string::npos;
    CHECK(names_x);

    JurisdictionRegistry ab = load_registry(support::fixture("registry_ab.csv"));
    ValidationReport overprec = validate_rate_file(support::fixture("matrix_7dec.csv"), ab);
    REQUIRE(overprec.errors.size() == 1);
    CHECK(overprec.errors[0].message.find("decimal places") != std::string::npos);
}

TEST_CASE("matrix: accepted matrix validates clean; zero row warns") {
    JurisdictionRegistry reg = load_registry(support::fixture("registry_abc.csv"));
    RateMatrix m =
        parse_rate_matrix(support::fixture("matrix_triangle.csv"), reg, IncomeType::Dividends);
    ValidationReport r = validate(m, reg);
    CHECK(r.accepted());
    CHECK(r.warnings.empty());

    // synthetic zero-rate jurisdiction: all rates out of source 0 are zero
    std::vector<Micro> cells{-1, 0, 0, 5'000'000, -1, 0, 1'000'000, 2'000'000, -1};
    RateMatrix zero_row(3, IncomeType::Interest, std::move(cells));
    ValidationReport zr = validate(zero_row, reg);
    CHECK(zr.accepted());
    REQUIRE(zr.warnings.size() == 1);
    CHECK(zr.warnings[0].location == "A");
}

TEST_CASE("matrix: parse/serialize round trip is identity") {
    JurisdictionRegistry reg = synthetic_registry(9);
    RateMatrix m = generate_synthetic(9, 42, SyntheticProfile::Uniform);
    auto tmp = std::filesystem::temp_directory_path() / "conduit_matrix_rt.csv";
    {
        std::ofstream out(tmp);
        write_rate_matrix(out, m, reg);
    }
    RateMatrix back = parse_rate_matrix(tmp, reg, IncomeType::Dividends);
    CHECK(back == m);
}

TEST_CASE("matrix: column and row order in the file is irrelevant") {
    JurisdictionRegistry reg = load_registry(support::fixture("registry_abc.csv"));
    RateMatrix base =
        parse_rate_matrix(support::fixture("matrix_triangle.csv"), reg, IncomeType::Dividends);

    auto tmp = std::filesystem::temp_directory_path() / "conduit_matrix_perm.csv";
    std::ofstream(tmp) << "source\\dest,C,A,B\n"
                          "C,,99,5\n"
                          "B,99,99,\n"
                          "A,0,,25\n";
    RateMatrix permuted = parse_rate_matrix(tmp, reg, IncomeType::Dividends);
    CHECK(permuted == base);
}

TEST_CASE("synthetic: determinism and profile shapes") {
    CHECK(generate_synthetic(2, 0, SyntheticProfile::Uniform) ==
          generate_synthetic(2, 0, SyntheticProfile::Uniform));
    CHECK_FALSE(generate_synthetic(6, 0, SyntheticProfile::Uniform) ==
                generate_synthetic(6, 1, SyntheticProfile::Uniform));
    CHECK_THROWS_AS(generate_synthetic(1, 0, SyntheticProfile::Uniform), DomainError);

    SUBCASE("planted: every intra rate below every inter rate") {
        RateMatrix m = generate_synthetic(12, 7, SyntheticProfile::PlantedCommunities,
                                          IncomeType::Dividends, 3);
        Micro max_intra = 0, min_inter = kMaxRate;
        for (int i = 0; i < 12; ++i)
            for (int j = 0; j < 12; ++j) {
                if (i == j)
                    continue;
                bool same = planted_block_of(i, 12, 3) == planted_block_of(j, 12, 3);
                if (same)
                    max_intra = std::max(max_intra, m.rate(i, j));
                else
                    min_inter = std::min(min_inter, m.rate(i, j));
            }
        CHECK(max_intra < min_inter);
    }

    SUBCASE("zero_heavy: at least half the cells are exactly zero") {
        RateMatrix m = generate_synthetic(4, 1, SyntheticProfile::ZeroHeavy);
        int zeros = 0, cells = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (i != j) {
                    ++cells;
                    if (m.rate(i, j) == 0)
                        ++zeros;
                }
        CHECK(zeros * 2 >= cells);
    }
}
