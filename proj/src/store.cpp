#include "charlab/store.hpp"

#include <openssl/evp.h>

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "charlab/format.hpp"

namespace charlab {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string render_cell(const Cell& cell) {
    struct Visitor {
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(double v) const { return format_real(v); }
        std::string operator()(const std::string& v) const { return csv_field(v); }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
    };
    return std::visit(Visitor{}, cell);
}

ordered_json cell_json(const Cell& cell, bool rounded) {
    struct Visitor {
        bool rounded;
        ordered_json operator()(std::int64_t v) const { return v; }
        ordered_json operator()(double v) const {
            if (!std::isfinite(v)) return format_real(v);
            return rounded ? round_significant(v) : v;
        }
        ordered_json operator()(const std::string& v) const { return v; }
        ordered_json operator()(bool v) const { return v; }
    };
    return std::visit(Visitor{rounded}, cell);
}

std::uint64_t parse_u64(const std::string& s) {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument("not an integer: '" + s + "'");
    return v;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw std::logic_error("row width does not match the header");
    rows.push_back(std::move(row));
}

std::size_t Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) return i;
    }
    throw std::out_of_range("no column '" + name + "'");
}

Format parse_format(const std::string& text) {
    if (text == "csv") return Format::csv;
    if (text == "json") return Format::json;
    throw std::invalid_argument("unknown format '" + text + "' (expected csv or json)");
}

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += csv_field(table.columns[i]);
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += render_cell(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& table) {
    ordered_json arr = ordered_json::array();
    for (const auto& row : table.rows) {
        ordered_json obj = ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = cell_json(row[i], true);
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

std::string serialize(const Table& table, Format format) {
    return format == Format::csv ? to_csv(table) : to_json(table);
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false, field_started = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        if (c == '"' && !field_started) {
            quoted = field_started = true;
        } else if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
            field_started = false;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            row.push_back(std::move(field));
            rows.push_back(std::move(row));
            row.clear();
            field.clear();
            field_started = false;
        } else {
            field += c;
            field_started = true;
        }
    }
    if (quoted) throw std::invalid_argument("unterminated quoted CSV field");
    if (field_started || !row.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

Table records_table(const std::vector<VerificationRecord>& records) {
    Table t;
    t.columns = {"k", "label", "ell", "n_xi", "M", "lhs", "main", "residual"};
    for (const auto& r : records) {
        t.add_row({static_cast<std::int64_t>(r.k), r.label, static_cast<std::int64_t>(r.ell),
                   static_cast<std::int64_t>(r.n_xi), r.max_sum, r.lhs, r.main, r.residual});
    }
    return t;
}

std::vector<VerificationRecord> records_from_csv(const std::string& text) {
    const auto rows = parse_csv(text);
    if (rows.empty()) throw std::invalid_argument("CSV has no header");
    const std::vector<std::string> expected = {"k", "label", "ell", "n_xi", "M", "lhs", "main", "residual"};
    if (rows[0] != expected) throw std::invalid_argument("unexpected VerificationRecord header");
    std::vector<VerificationRecord> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& f = rows[i];
        if (f.size() != expected.size()) throw std::invalid_argument("CSV row " + std::to_string(i) + " has wrong width");
        VerificationRecord r;
        r.k = parse_u64(f[0]);
        r.label = f[1];
        r.ell = parse_u64(f[2]);
        r.n_xi = parse_u64(f[3]);
        r.max_sum = parse_real(f[4]);
        r.lhs = parse_real(f[5]);
        r.main = parse_real(f[6]);
        r.residual = parse_real(f[7]);
        out.push_back(std::move(r));
    }
    return out;
}

std::string encode_table(const Table& table) {
    ordered_json j;
    j["columns"] = table.columns;
    ordered_json rows = ordered_json::array();
    for (const auto& row : table.rows) {
        ordered_json r = ordered_json::array();
        for (const auto& cell : row) r.push_back(cell_json(cell, false));
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j.dump();
}

Table decode_table(const std::string& payload) {
    const ordered_json j = ordered_json::parse(payload);
    Table t;
    t.columns = j.at("columns").get<std::vector<std::string>>();
    for (const auto& r : j.at("rows")) {
        std::vector<Cell> row;
        for (const auto& v : r) {
            if (v.is_boolean()) {
                row.emplace_back(v.get<bool>());
            } else if (v.is_number_integer()) {
                row.emplace_back(v.get<std::int64_t>());
            } else if (v.is_number_float()) {
                row.emplace_back(v.get<double>());
            } else {
                const auto s = v.get<std::string>();
                // Non-finite reals travel as strings.
                if (s == "nan" || s == "inf" || s == "-inf") {
                    row.emplace_back(parse_real(s));
                } else {
                    row.emplace_back(s);
                }
            }
        }
        t.add_row(std::move(row));
    }
    return t;
}

// ---------------------------------------------------------------------------
// Configuration

RunConfig parse_run_config(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");

    RunConfig c;
    auto positive_int = [](const std::string& key, const ordered_json& v) -> std::uint64_t {
        if (!v.is_number_integer() || v.get<std::int64_t>() <= 0) {
            throw std::invalid_argument("config key '" + key + "' must be a positive integer");
        }
        return v.get<std::uint64_t>();
    };
    auto positive_real = [](const std::string& key, const ordered_json& v) -> double {
        if (!v.is_number() || !(v.get<double>() > 0.0)) {
            throw std::invalid_argument("config key '" + key + "' must be a positive number");
        }
        return v.get<double>();
    };
    auto string_value = [](const std::string& key, const ordered_json& v) -> std::string {
        if (!v.is_string()) throw std::invalid_argument("config key '" + key + "' must be a string");
        return v.get<std::string>();
    };

    for (const auto& [key, v] : j.items()) {
        if (key == "command") c.command = string_value(key, v);
        else if (key == "modulus") c.modulus = positive_int(key, v);
        else if (key == "kmin") c.k_min = positive_int(key, v);
        else if (key == "kmax") c.k_max = positive_int(key, v);
        else if (key == "ell") c.ell = positive_int(key, v);
        else if (key == "order") c.order = positive_int(key, v);
        else if (key == "workers") c.workers = static_cast<unsigned>(positive_int(key, v));
        else if (key == "theta_step") c.theta_step = positive_real(key, v);
        else if (key == "alpha_step") c.alpha_step = positive_real(key, v);
        else if (key == "rho_step") c.rho_step = positive_real(key, v);
        else if (key == "cap") c.cap = positive_real(key, v);
        else if (key == "epsilon") c.epsilon = positive_real(key, v);
        else if (key == "cache_dir") c.cache_dir = string_value(key, v);
        else if (key == "format") {
            c.format = string_value(key, v);
            parse_format(*c.format);
        } else if (key == "parity") {
            c.parity = string_value(key, v);
            if (*c.parity != "even" && *c.parity != "odd") {
                throw std::invalid_argument("config key 'parity' must be \"even\" or \"odd\"");
            }
        } else if (key == "primitive") {
            if (!v.is_boolean()) throw std::invalid_argument("config key 'primitive' must be a boolean");
            c.primitive = v.get<bool>();
        } else {
            throw std::invalid_argument("unknown config key '" + key + "'");
        }
    }
    return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    return parse_run_config(read_file(path));
}

// ---------------------------------------------------------------------------
// Cache

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 digest failed");
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path ResultCache::entry_path(const std::string& key) const {
    return dir_ / (sha256_hex(key) + ".json");
}

std::optional<std::string> ResultCache::load(const std::string& key) const {
    const auto path = entry_path(key);
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) return std::nullopt;
    try {
        const auto j = ordered_json::parse(read_file(path));
        if (j.at("schema").get<int>() != kCacheSchemaVersion) return std::nullopt;
        if (j.at("key").get<std::string>() != key) return std::nullopt;
        std::string payload = j.at("payload").get<std::string>();
        if (j.at("digest").get<std::string>() != sha256_hex(payload)) return std::nullopt;
        return payload;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void ResultCache::store(const std::string& key, const std::string& payload) const {
    std::filesystem::create_directories(dir_);
    ordered_json j;
    j["schema"] = kCacheSchemaVersion;
    j["key"] = key;
    j["digest"] = sha256_hex(payload);
    j["payload"] = payload;

    const auto final_path = entry_path(key);
    std::random_device rd;
    auto tmp = final_path;
    tmp += ".tmp" + std::to_string(rd());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write cache entry " + tmp.string());
        out << j.dump();
        if (!out) throw std::runtime_error("cannot write cache entry " + tmp.string());
    }
    std::filesystem::rename(tmp, final_path);
}

std::string ResultCache::get_or_compute(const std::string& key, const std::function<std::string()>& compute,
                                        bool* hit) const {
    if (auto cached = load(key)) {
        if (hit) *hit = true;
        return *cached;
    }
    if (hit) *hit = false;
    std::string payload = compute();
    store(key, payload);
    return payload;
}

std::optional<std::filesystem::path> resolve_cache_dir(const std::optional<std::string>& flag,
                                                       const std::optional<std::string>& config) {
    if (flag && !flag->empty()) return std::filesystem::path(*flag);
    if (const char* env = std::getenv("CHARLAB_CACHE"); env && *env) return std::filesystem::path(env);
    if (config && !config->empty()) return std::filesystem::path(*config);
    return std::nullopt;
}

}  // namespace charlab
