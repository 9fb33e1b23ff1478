#include "binomcoll/checkpoint.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace binomcoll {

namespace {

constexpr const char* kFormat = "binomcoll-sieve-checkpoint";

std::string words_to_hex(const std::vector<std::uint64_t>& words)
{
    std::string out;
    out.reserve(words.size() * 16);
    char buf[17];
    for (std::uint64_t w : words) {
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(w));
        out += buf;
    }
    return out;
}

std::vector<std::uint64_t> hex_to_words(const std::string& hex)
{
    if (hex.size() % 16 != 0) {
        throw SieveError("checkpoint bitmap length is not a multiple of 16 hex digits");
    }
    std::vector<std::uint64_t> out;
    out.reserve(hex.size() / 16);
    for (std::size_t i = 0; i < hex.size(); i += 16) {
        const std::string chunk = hex.substr(i, 16);
        if (chunk.find_first_not_of("0123456789abcdef") != std::string::npos) {
            throw SieveError("checkpoint bitmap contains a non-hex character");
        }
        out.push_back(std::stoull(chunk, nullptr, 16));
    }
    return out;
}

} // namespace

std::string checkpoint_to_string(const SieveState& state)
{
    nlohmann::ordered_json j;
    j["format"] = kFormat;
    j["version"] = kCheckpointVersion;
    j["plan"] = {
        {"k", state.plan().k},
        {"l", state.plan().l},
        {"max_value", state.plan().max_value.get_str()},
        {"prime_bound", state.plan().prime_bound},
    };
    j["m_min"] = state.m_min();
    j["m_max"] = state.m_max();
    j["primes_done"] = state.primes_done();
    j["survivor_count"] = state.survivor_count();
    j["survivors_hex"] = words_to_hex(state.words());
    return j.dump() + "\n";
}

SieveState checkpoint_from_string(const std::string& text)
{
    try {
        const auto j = nlohmann::json::parse(text);
        if (j.at("format").get<std::string>() != kFormat) {
            throw SieveError("not a sieve checkpoint");
        }
        if (j.at("version").get<int>() != kCheckpointVersion) {
            throw SieveError("unsupported checkpoint version " + j.at("version").dump());
        }
        const auto& p = j.at("plan");
        SievePlan plan{p.at("k").get<std::uint32_t>(), p.at("l").get<std::uint32_t>(),
                       mpz_class(p.at("max_value").get<std::string>(), 10),
                       p.at("prime_bound").get<std::uint32_t>()};
        SieveState state(plan, j.at("m_min").get<std::uint64_t>(), j.at("m_max").get<std::uint64_t>(),
                         hex_to_words(j.at("survivors_hex").get<std::string>()),
                         j.at("primes_done").get<std::vector<std::uint32_t>>());
        if (state.survivor_count() != j.at("survivor_count").get<std::uint64_t>()) {
            throw SieveError("checkpoint survivor count does not match its bitmap");
        }
        return state;
    }
    catch (const nlohmann::json::exception& e) {
        throw SieveError(std::string("malformed checkpoint: ") + e.what());
    }
    catch (const std::invalid_argument& e) {
        throw SieveError(std::string("malformed checkpoint: ") + e.what());
    }
}

void write_checkpoint(const std::filesystem::path& path, const SieveState& state)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << checkpoint_to_string(state);
        out.flush();
        if (!out) {
            throw SieveError("cannot write checkpoint " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

SieveState read_checkpoint(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw SieveError("cannot read checkpoint " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return checkpoint_from_string(buf.str());
}

} // namespace binomcoll
