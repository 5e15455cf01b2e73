#include "conduit/rate_matrix.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "conduit/errors.hpp"
#include "csv.hpp"

namespace conduit {

RateMatrix::RateMatrix(int n, IncomeType income_type, std::vector<Micro> cells)
    : n_(n), income_type_(income_type), cells_(std::move(cells)) {
    assert(n_ >= 1);
    assert(cells_.size() == static_cast<std::size_t>(n_) * n_);
    for (int i = 0; i < n_; ++i) {
        cells_[static_cast<std::size_t>(i) * n_ + i] = -1;
        for (int j = 0; j < n_; ++j) {
            if (i == j)
                continue;
            Micro r = cells_[static_cast<std::size_t>(i) * n_ + j];
            if (r < 0 || r > kMaxRate)
                throw DomainError("rate out of range at (" + std::to_string(i) + "," +
                                  std::to_string(j) + ")");
        }
    }
}

namespace {

struct Scan {
    std::optional<RateMatrix> matrix;
    ValidationReport report;
};

Scan scan_rate_file(const std::filesystem::path& path,
                    const JurisdictionRegistry& registry, IncomeType income_type) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open rate matrix file '" + path.string() + "'");

    Scan scan;
    auto error = [&](int line, int column, std::string message) {
        scan.report.errors.push_back({line, column, std::move(message)});
    };

    const int n = registry.size();

    std::string line;
    if (!csv::read_line(in, line)) {
        error(1, 1, "empty matrix file");
        return scan;
    }

    std::vector<std::string> header;
    try {
        header = csv::split_line(line, 1);
    } catch (const ParseError& e) {
        error(1, 1, e.what());
        return scan;
    }

    // Column layout: field 1 is the `source\dest` corner, fields 2..N+1 are
    // destination codes in file order.
    std::vector<int> col_id(header.size(), -1);
    std::vector<int> col_of_id(static_cast<std::size_t>(n), -1); // id -> field index
    for (std::size_t f = 1; f < header.size(); ++f) {
        const std::string& code = header[f];
        auto id = registry.id_of(code);
        if (!id) {
            error(1, static_cast<int>(f) + 1, "unknown code '" + code + "' in header");
            continue;
        }
        if (col_of_id[static_cast<std::size_t>(*id)] != -1) {
            error(1, static_cast<int>(f) + 1, "duplicate column '" + code + "'");
            continue;
        }
        col_id[f] = *id;
        col_of_id[static_cast<std::size_t>(*id)] = static_cast<int>(f);
    }
    for (int id = 0; id < n; ++id)
        if (col_of_id[static_cast<std::size_t>(id)] == -1)
            error(1, 1, "missing column for code '" + registry.code(id) + "'");

    std::vector<std::optional<Micro>> cells(static_cast<std::size_t>(n) * n);
    std::vector<int> row_line(static_cast<std::size_t>(n), -1); // id -> file line
    int line_no = 1;
    while (csv::read_line(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        std::vector<std::string> fields;
        try {
            fields = csv::split_line(line, line_no);
        } catch (const ParseError& e) {
            error(line_no, 1, e.what());
            continue;
        }
        const std::string& code = fields[0];
        auto id = registry.id_of(code);
        if (!id) {
            error(line_no, 1, "unknown code '" + code + "'");
            continue;
        }
        int src = *id;
        if (row_line[static_cast<std::size_t>(src)] != -1) {
            error(line_no, 1, "duplicate row '" + code + "' (first on line " +
                                  std::to_string(row_line[static_cast<std::size_t>(src)]) + ")");
            continue;
        }
        row_line[static_cast<std::size_t>(src)] = line_no;
        if (fields.size() != header.size()) {
            error(line_no, 1, "expected " + std::to_string(header.size()) +
                                  " fields, got " + std::to_string(fields.size()));
            continue;
        }
        for (std::size_t f = 1; f < fields.size(); ++f) {
            int dst = col_id[f];
            if (dst < 0)
                continue; // header already reported
            const std::string& cell = fields[f];
            if (src == dst) {
                if (!cell.empty())
                    error(line_no, static_cast<int>(f) + 1,
                          "diagonal cell for '" + code + "' must be empty, got '" + cell + "'");
                continue;
            }
            if (cell.empty()) {
                error(line_no, static_cast<int>(f) + 1,
                      "missing rate " + code + " -> " + registry.code(dst));
                continue;
            }
            try {
                cells[static_cast<std::size_t>(src) * n + dst] = parse_rate(cell);
            } catch (const ParseError& e) {
                error(line_no, static_cast<int>(f) + 1, e.what());
            }
        }
    }

    for (int id = 0; id < n; ++id)
        if (row_line[static_cast<std::size_t>(id)] == -1)
            error(line_no + 1, 1, "missing row for code '" + registry.code(id) + "'");

    if (!scan.report.accepted())
        return scan;

    std::vector<Micro> values(static_cast<std::size_t>(n) * n, -1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j)
                values[static_cast<std::size_t>(i) * n + j] =
                    *cells[static_cast<std::size_t>(i) * n + j];
    scan.matrix.emplace(n, income_type, std::move(values));

    // Semantic pass: all-zero rows are accepted but flagged.
    for (const auto& w : validate(*scan.matrix, registry).warnings)
        scan.report.warnings.push_back(w);
    return scan;
}

} // namespace

RateMatrix parse_rate_matrix(const std::filesystem::path& path,
                             const JurisdictionRegistry& registry, IncomeType income_type) {
    Scan scan = scan_rate_file(path, registry, income_type);
    if (!scan.matrix) {
        std::ostringstream msg;
        msg << path.string() << ": " << scan.report.errors.size() << " error(s)";
        std::size_t shown = std::min<std::size_t>(scan.report.errors.size(), 8);
        for (std::size_t i = 0; i < shown; ++i) {
            const auto& e = scan.report.errors[i];
            msg << "\n  " << e.line << ":" << e.column << ": " << e.message;
        }
        if (shown < scan.report.errors.size())
            msg << "\n  ...";
        throw ParseError(msg.str());
    }
    return std::move(*scan.matrix);
}

ValidationReport validate_rate_file(const std::filesystem::path& path,
                                    const JurisdictionRegistry& registry) {
    return scan_rate_file(path, registry, IncomeType::Dividends).report;
}

ValidationReport validate(const RateMatrix& matrix, const JurisdictionRegistry& registry) {
    ValidationReport report;
    for (int i = 0; i < matrix.size(); ++i) {
        bool all_zero = true;
        for (int j = 0; j < matrix.size() && all_zero; ++j)
            if (i != j && matrix.rate(i, j) != 0)
                all_zero = false;
        if (all_zero && matrix.size() > 1)
            report.warnings.push_back(
                {registry.code(i), "all rates zero for source " + registry.code(i) +
                                       " (possible zero-tax jurisdiction)"});
    }
    return report;
}

void write_rate_matrix(std::ostream& out, const RateMatrix& matrix,
                       const JurisdictionRegistry& registry) {
    out << "source\\dest";
    for (int j = 0; j < matrix.size(); ++j)
        out << ',' << registry.code(j);
    out << '\n';
    for (int i = 0; i < matrix.size(); ++i) {
        out << registry.code(i);
        for (int j = 0; j < matrix.size(); ++j) {
            out << ',';
            if (i != j)
                out << format_rate(matrix.rate(i, j));
        }
        out << '\n';
    }
}

} // namespace conduit
