#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace conduit {

/// Canonical list of jurisdictions. Ids are dense, assigned in file order:
/// the k-th entry has id k.
class JurisdictionRegistry {
public:
    struct Entry {
        std::string code; // short ASCII token, unique, no whitespace
        std::string name; // display string
    };

    /// Validates codes (unique, non-empty, no whitespace). Throws ParseError.
    static JurisdictionRegistry from_entries(std::vector<Entry> entries);

    int size() const { return static_cast<int>(entries_.size()); }
    const Entry& entry(int id) const { return entries_[static_cast<std::size_t>(id)]; }
    const std::string& code(int id) const { return entry(id).code; }
    const std::string& name(int id) const { return entry(id).name; }
    const std::vector<Entry>& entries() const { return entries_; }

    std::optional<int> id_of(std::string_view code) const;

private:
    std::vector<Entry> entries_;
    std::unordered_map<std::string, int> index_;
};

/// Loads a registry CSV (header `code,name`). Duplicate codes are a hard
/// error naming both lines; an empty registry is a hard error.
JurisdictionRegistry load_registry(const std::filesystem::path& path);

void write_registry(std::ostream& out, const JurisdictionRegistry& registry);

/// Closest registry code by edit distance, for error suggestions.
std::string nearest_code(const JurisdictionRegistry& registry, std::string_view query);

} // namespace conduit
