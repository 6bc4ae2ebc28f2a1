#pragma once

// On-disk cache for class groups (JSON) and theta coefficient tables (CSV).

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "hypercount/theta.hpp"

namespace hypercount {

/// {"d": ..., "forms": [[a, b, c], ...], "table": [[...], ...], "generators": [[index, order], ...]}
std::string class_group_to_json(const ClassGroup& G);
/// Throws std::invalid_argument on malformed documents or an inconsistent table.
ClassGroup class_group_from_json(const std::string& text);

/// HYPERCOUNT_CACHE if set, else the fallback, else ~/.cache/hypercount.
std::filesystem::path cache_directory(const std::optional<std::filesystem::path>& fallback = std::nullopt);

class Cache {
public:
    explicit Cache(std::filesystem::path dir) : dir_(std::move(dir)) {}
    const std::filesystem::path& dir() const { return dir_; }

    /// Loads classgroup_<|d|>.json when present and valid, otherwise computes and stores it.
    std::shared_ptr<const ClassGroup> class_group(i64 d) const;
    /// Keyed by (d, character id, N).
    ThetaCoefficients theta(const ClassCharacter& chi, i64 N) const;

private:
    std::filesystem::path dir_;
};

} // namespace hypercount
