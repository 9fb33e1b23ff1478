#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace binomcoll::cli {

enum class Format { Jsonl, Csv, Table };

Format parse_format(const std::string& name);

using ExtraValue = std::variant<std::string, std::int64_t, bool>;

// One line of command output. Exact values are always decimal strings.
struct OutputRecord {
    explicit OutputRecord(std::string record_type = {}) : type(std::move(record_type)) {}

    std::string type; // collision | near | survivor | stat | verify
    std::optional<std::uint64_t> n, k, m, l;
    std::optional<std::string> d;
    std::optional<std::string> value;
    std::vector<std::pair<std::string, ExtraValue>> extras;

    OutputRecord& extra(std::string key, ExtraValue v)
    {
        extras.emplace_back(std::move(key), std::move(v));
        return *this;
    }
};

class RecordWriter {
public:
    // CSV writes its header immediately.
    RecordWriter(Format format, std::ostream& out);

    void write(const OutputRecord& record);
    std::uint64_t count() const noexcept { return count_; }

private:
    Format format_;
    std::ostream& out_;
    std::uint64_t count_ = 0;
};

std::string to_jsonl(const OutputRecord& record);
std::string to_csv(const OutputRecord& record);

inline constexpr const char* kCsvHeader = "type,n,k,m,l,d,value";

} // namespace binomcoll::cli
