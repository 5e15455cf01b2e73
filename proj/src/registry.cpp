#include "conduit/registry.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <ostream>

#include "conduit/errors.hpp"
#include "csv.hpp"

namespace conduit {

namespace {

bool has_whitespace(std::string_view s) {
    return std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

std::string quote_if_needed(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos)
        return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

JurisdictionRegistry JurisdictionRegistry::from_entries(std::vector<Entry> entries) {
    JurisdictionRegistry reg;
    reg.entries_ = std::move(entries);
    for (std::size_t i = 0; i < reg.entries_.size(); ++i) {
        const std::string& code = reg.entries_[i].code;
        if (code.empty())
            throw ParseError("registry entry " + std::to_string(i + 1) + ": empty code");
        if (has_whitespace(code))
            throw ParseError("registry code '" + code + "' contains whitespace");
        auto [it, inserted] = reg.index_.emplace(code, static_cast<int>(i));
        if (!inserted)
            throw ParseError("duplicate registry code '" + code + "'");
    }
    if (reg.entries_.empty())
        throw ParseError("empty registry");
    return reg;
}

std::optional<int> JurisdictionRegistry::id_of(std::string_view code) const {
    auto it = index_.find(std::string(code));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

JurisdictionRegistry load_registry(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open registry file '" + path.string() + "'");

    std::string line;
    if (!csv::read_line(in, line))
        throw ParseError("empty registry: '" + path.string() + "'");
    auto header = csv::split_line(line, 1);
    if (header.size() < 2 || header[0] != "code" || header[1] != "name")
        throw ParseError(path.string() + ":1: expected header 'code,name'");

    std::vector<JurisdictionRegistry::Entry> entries;
    std::unordered_map<std::string, int> seen_line; // code -> first line
    int line_no = 1;
    while (csv::read_line(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        auto fields = csv::split_line(line, line_no);
        if (fields.size() != 2)
            throw ParseError(path.string() + ":" + std::to_string(line_no) +
                             ": expected 2 fields, got " + std::to_string(fields.size()));
        const std::string& code = fields[0];
        if (code.empty())
            throw ParseError(path.string() + ":" + std::to_string(line_no) + ": empty code");
        if (has_whitespace(code))
            throw ParseError(path.string() + ":" + std::to_string(line_no) + ": code '" +
                             code + "' contains whitespace");
        auto [it, inserted] = seen_line.emplace(code, line_no);
        if (!inserted)
            throw ParseError(path.string() + ":" + std::to_string(line_no) +
                             ": duplicate code '" + code + "' (first defined on line " +
                             std::to_string(it->second) + ")");
        entries.push_back({code, fields[1]});
    }
    if (entries.empty())
        throw ParseError("empty registry: '" + path.string() + "'");
    return JurisdictionRegistry::from_entries(std::move(entries));
}

void write_registry(std::ostream& out, const JurisdictionRegistry& registry) {
    out << "code,name\n";
    for (const auto& e : registry.entries())
        out << quote_if_needed(e.code) << ',' << quote_if_needed(e.name) << '\n';
}

std::string nearest_code(const JurisdictionRegistry& registry, std::string_view query) {
    auto distance = [](std::string_view a, std::string_view b) {
        std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
        for (std::size_t j = 0; j <= b.size(); ++j)
            prev[j] = j;
        for (std::size_t i = 1; i <= a.size(); ++i) {
            cur[0] = i;
            for (std::size_t j = 1; j <= b.size(); ++j) {
                std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
                cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
            }
            std::swap(prev, cur);
        }
        return prev[b.size()];
    };

    std::string best;
    std::size_t best_dist = std::string::npos;
    for (const auto& e : registry.entries()) {
        std::size_t d = distance(e.code, query);
        if (d < best_dist || (d == best_dist && e.code < best)) {
            best_dist = d;
            best = e.code;
        }
    }
    return best;
}

} // namespace conduit
