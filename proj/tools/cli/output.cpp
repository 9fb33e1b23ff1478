#include "cli/output.hpp"

#include <stdexcept>

#include <json.hpp>

namespace binomcoll::cli {

Format parse_format(const std::string& name)
{
    if (name == "jsonl") {
        return Format::Jsonl;
    }
    if (name == "csv") {
        return Format::Csv;
    }
    if (name == "table") {
        return Format::Table;
    }
    throw std::invalid_argument("unknown format '" + name + "'");
}

std::string to_jsonl(const OutputRecord& r)
{
    nlohmann::ordered_json j;
    j["type"] = r.type;
    auto put = [&](const char* key, const std::optional<std::uint64_t>& v) {
        if (v) {
            j[key] = *v;
        }
    };
    put("n", r.n);
    put("k", r.k);
    put("m", r.m);
    put("l", r.l);
    if (r.d) {
        j["d"] = *r.d;
    }
    if (r.value) {
        j["value"] = *r.value;
    }
    if (!r.extras.empty()) {
        nlohmann::ordered_json extras = nlohmann::ordered_json::object();
        for (const auto& [key, v] : r.extras) {
            std::visit([&](const auto& x) { extras[key] = x; }, v);
        }
        j["extras"] = std::move(extras);
    }
    return j.dump();
}

std::string to_csv(const OutputRecord& r)
{
    auto num = [](const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : std::string(); };
    return r.type + "," + num(r.n) + "," + num(r.k) + "," + num(r.m) + "," + num(r.l) + ","
           + r.d.value_or("") + "," + r.value.value_or("");
}

namespace {

std::string to_table(const OutputRecord& r)
{
    auto cell = [](const std::string& s, std::size_t width) {
        return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
    };
    auto num = [](const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : std::string("-"); };
    std::string line = cell(r.type, 10) + cell(num(r.n), 11) + cell(num(r.k), 8) + cell(num(r.m), 11)
                       + cell(num(r.l), 8) + cell(r.d.value_or("-"), 6) + r.value.value_or("-");
    for (const auto& [key, v] : r.extras) {
        line += "  " + key + "=";
        std::visit(
            [&](const auto& x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, std::string>) {
                    line += x;
                }
                else if constexpr (std::is_same_v<T, bool>) {
                    line += x ? "true" : "false";
                }
                else {
                    line += std::to_string(x);
                }
            },
            v);
    }
    return line;
}

} // namespace

RecordWriter::RecordWriter(Format format, std::ostream& out) : format_(format), out_(out)
{
    if (format_ == Format::Csv) {
        out_ << kCsvHeader << '\n';
    }
    else if (format_ == Format::Table) {
        out_ << "type      n          k       m          l       d     value\n";
    }
}

void RecordWriter::write(const OutputRecord& record)
{
    switch (format_) {
    case Format::Jsonl:
        out_ << to_jsonl(record) << '\n';
        break;
    case Format::Csv:
        out_ << to_csv(record) << '\n';
        break;
    case Format::Table:
        out_ << to_table(record) << '\n';
        break;
    }
    ++count_;
}

} // namespace binomcoll::cli
