#pragma once

/**
 * @file store.hpp
 * @brief Tabular results, CSV/JSON rendering, run configuration and the
 * on-disk result cache.
 */

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "charlab/harness.hpp"

namespace charlab {

using Cell = std::variant<std::int64_t, double, std::string, bool>;

/// A rectangular result set with a fixed column order.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
    /// Index of a column; throws if absent.
    std::size_t column(const std::string& name) const;
    friend bool operator==(const Table&, const Table&) = default;
};

enum class Format { csv, json };

Format parse_format(const std::string& text);

/// Reals use 12 significant digits. CSV has a header line even when empty;
/// JSON is an array of objects with keys in column order.
std::string to_csv(const Table& table);
std::string to_json(const Table& table);
std::string serialize(const Table& table, Format format);

/// Splits CSV text into a header and string cells (RFC 4180 quoting).
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

// VerificationRecord rows: k,label,ell,n_xi,M,lhs,main,residual
Table records_table(const std::vector<VerificationRecord>& records);
std::vector<VerificationRecord> records_from_csv(const std::string& text);

/// Lossless encoding used for cache payloads (full double precision).
std::string encode_table(const Table& table);
Table decode_table(const std::string& payload);

// ---------------------------------------------------------------------------
// Configuration

/// Values read from a JSON config file. Every field is optional; command-line
/// flags take precedence over anything set here.
struct RunConfig {
    std::optional<std::string> command;
    std::optional<std::uint64_t> modulus;
    std::optional<std::uint64_t> k_min;
    std::optional<std::uint64_t> k_max;
    std::optional<std::uint64_t> ell;
    std::optional<std::string> parity;
    std::optional<std::uint64_t> order;
    std::optional<bool> primitive;
    std::optional<double> theta_step;
    std::optional<double> alpha_step;
    std::optional<double> rho_step;
    std::optional<double> cap;
    std::optional<double> epsilon;
    std::optional<std::string> format;
    std::optional<std::string> cache_dir;
    std::optional<unsigned> workers;
};

/// Strict parse: unknown keys, wrong types and non-positive numbers throw.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Cache

std::string sha256_hex(const std::string& data);

inline constexpr int kCacheSchemaVersion = 1;

/**
 * One JSON file per key under the cache directory. Entries whose schema,
 * key or digest do not check out are treated as misses and overwritten.
 */
class ResultCache {
public:
    explicit ResultCache(std::filesystem::path dir);

    const std::filesystem::path& directory() const { return dir_; }
    std::filesystem::path entry_path(const std::string& key) const;

    std::optional<std::string> load(const std::string& key) const;
    void store(const std::string& key, const std::string& payload) const;

    /// Returns the cached payload, or computes, stores and returns it.
    std::string get_or_compute(const std::string& key, const std::function<std::string()>& compute,
                               bool* hit = nullptr) const;

private:
    std::filesystem::path dir_;
};

/// Flag, then CHARLAB_CACHE, then config; nullopt disables caching.
std::optional<std::filesystem::path> resolve_cache_dir(const std::optional<std::string>& flag,
                                                       const std::optional<std::string>& config);

}  // namespace charlab
