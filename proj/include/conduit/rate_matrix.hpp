#pragma once

#include <cassert>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "conduit/rate.hpp"
#include "conduit/registry.hpp"

namespace conduit {

/// Complete N x N withholding-tax rate matrix for one income type.
/// Every off-diagonal cell is present; the diagonal is unrepresentable.
class RateMatrix {
public:
    /// cells is row-major n*n; diagonal entries are ignored and stored as a
    /// sentinel. Off-diagonal cells must be valid rates.
    RateMatrix(int n, IncomeType income_type, std::vector<Micro> cells);

    int size() const { return n_; }
    IncomeType income_type() const { return income_type_; }

    Micro rate(int from, int to) const {
        assert(from != to);
        return cells_[static_cast<std::size_t>(from) * n_ + to];
    }

    bool operator==(const RateMatrix& other) const = default;

private:
    int n_;
    IncomeType income_type_;
    std::vector<Micro> cells_; // diagonal = -1 sentinel
};

struct ValidationIssue {
    int line = 0;   // 1-based file line, 0 when not file-backed
    int column = 0; // 1-based field index within the line
    std::string message;
};

struct ValidationWarning {
    std::string location;
    std::string message;
};

/// Empty errors <=> input accepted.
struct ValidationReport {
    std::vector<ValidationIssue> errors;
    std::vector<ValidationWarning> warnings;
    bool accepted() const { return errors.empty(); }
};

/// Strict parse: throws ParseError (message lists every problem with 1-based
/// line/column) unless the file is a complete, in-range matrix over exactly
/// the registry's codes. Row and column order in the file is irrelevant;
/// cells are reconciled to registry ids.
RateMatrix parse_rate_matrix(const std::filesystem::path& path,
                             const JurisdictionRegistry& registry,
                             IncomeType income_type);

/// Lenient scan of the same format: collects all errors and warnings instead
/// of throwing. Throws ParseError only if the file cannot be opened.
ValidationReport validate_rate_file(const std::filesystem::path& path,
                                    const JurisdictionRegistry& registry);

/// Semantic checks on an already-accepted matrix (structure errors are
/// impossible by construction). Warns on all-zero source rows, which are
/// legitimate zero-tax jurisdictions but worth flagging.
ValidationReport validate(const RateMatrix& matrix, const JurisdictionRegistry& registry);

/// Writes the canonical CSV form: header `source\dest,<codes...>` in registry
/// order, rates as minimal decimal strings, empty diagonal.
/// parse_rate_matrix(write_rate_matrix(m)) == m bit-exactly.
void write_rate_matrix(std::ostream& out, const RateMatrix& matrix,
                       const JurisdictionRegistry& registry);

} // namespace conduit
