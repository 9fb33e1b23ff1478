#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli/commands.hpp"
#include "cli/output.hpp"

using binomcoll::cli::run;
using nlohmann::json;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;

    std::vector<json> records() const
    {
        std::vector<json> rs;
        std::istringstream in(out);
        for (std::string line; std::getline(in, line);) {
            rs.push_back(json::parse(line));
        }
        return rs;
    }

    std::vector<json> of_type(const std::string& type) const
    {
        std::vector<json> rs;
        for (auto& r : records()) {
            if (r["type"] == type) {
                rs.push_back(r);
            }
        }
        return rs;
    }
};

Result cli(const std::vector<std::string>& args)
{
    std::ostringstream out;
    std::ostringstream err;
    Result r;
    r.code = run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::filesystem::path temp_file(const std::string& name)
{
    return std::filesystem::temp_directory_path() / ("binomcoll_cli_" + name);
}

} // namespace

TEST(Cli, ScanSmall)
{
    const Result r = cli({"scan", "--max-index", "20", "--mode", "collisions", "--format", "jsonl"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rs = r.records();
    ASSERT_EQ(rs.size(), 3u);
    EXPECT_EQ(rs[0]["value"], "120");
    EXPECT_EQ(rs[1]["value"], "210");
    EXPECT_EQ(rs[2]["value"], "3003");
    EXPECT_NE(r.err.find("collisions=3"), std::string::npos);
}

TEST(Cli, ScanEmpty)
{
    const Result r = cli({"scan", "--max-index", "1"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
}

TEST(Cli, ScanNear)
{
    const Result r = cli({"scan", "--max-index", "60", "--mode", "near"});
    ASSERT_EQ(r.code, 0);
    std::set<std::string> d1;
    for (const auto& rec : r.of_type("near")) {
        if (rec["d"] == "1") {
            d1.insert(rec["value"].get<std::string>());
        }
    }
    for (const char* v : {"21", "36", "56", "253", "496", "561", "1771"}) {
        EXPECT_TRUE(d1.count(v)) << v;
    }
}

TEST(Cli, ScanBigValuesStayExact)
{
    const Result r = cli({"scan", "--max-index", "250"});
    ASSERT_EQ(r.code, 0);
    const auto rs = r.records();
    ASSERT_EQ(rs.size(), 10u);
    EXPECT_EQ(rs.back()["value"], "61218182743304701891431482520");
}

TEST(Cli, CsvHeader)
{
    const Result r = cli({"scan", "--max-index", "20", "--format", "csv"});
    ASSERT_EQ(r.code, 0);
    std::istringstream in(r.out);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "type,n,k,m,l,d,value");
    EXPECT_NE(r.out.find("collision,16,2,10,3,,120\n"), std::string::npos);
}

TEST(Cli, TableFormat)
{
    const Result r = cli({"scan", "--max-index", "20", "--format", "table"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("3003"), std::string::npos);
}

TEST(Cli, OutputFile)
{
    const auto path = temp_file("scan.jsonl");
    const Result r = cli({"scan", "--max-index", "20", "--output", path.string()});
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::stringstream text;
    text << in.rdbuf();
    EXPECT_EQ(text.str(), cli({"scan", "--max-index", "20"}).out);
    std::filesystem::remove(path);
}

TEST(Cli, Deterministic)
{
    for (const std::vector<std::string>& args : std::vector<std::vector<std::string>>{
             {"scan", "--max-index", "120", "--mode", "near"},
             {"sieve", "--k", "2", "--l", "4", "--max-value", "10^12", "--jobs", "3", "--format", "csv"},
             {"akp", "--k", "5", "--prime-range", "7..200", "--jobs", "4"},
             {"families", "catalog", "export"}}) {
        const Result a = cli(args);
        const Result b = cli(args);
        EXPECT_EQ(a.code, 0);
        EXPECT_EQ(a.out, b.out) << args[0];
    }
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(cli({"scan"}).code, 2);
    EXPECT_EQ(cli({"scan", "--max-index", "5", "--mode", "sideways"}).code, 2);
    EXPECT_EQ(cli({"scan", "--max-index", "5", "--near-exponent", "4"}).code, 2);
    EXPECT_EQ(cli({"scan", "--max-index", "5", "--precision-bits", "4"}).code, 2);
    EXPECT_EQ(cli({"scan", "--max-index", "5", "--format", "xml"}).code, 2);
    EXPECT_EQ(cli({"bogus"}).code, 2);
    EXPECT_EQ(cli({"akp", "--k", "7", "--p", "5"}).code, 2);
    EXPECT_EQ(cli({"akp", "--k", "3"}).code, 2);
    EXPECT_EQ(cli({"sieve", "--k", "3", "--l", "3", "--max-value", "100"}).code, 2);
    EXPECT_EQ(cli({"families", "eval", "--family", "9", "--x", "2"}).code, 2);
    EXPECT_EQ(cli({"families", "verify", "--family", "0", "--x-max", "2"}).code, 2);
    const Result r = cli({"scan", "--mode", "near"});
    EXPECT_NE(r.err.find("--max-index"), std::string::npos);
}

TEST(Cli, IoError)
{
    EXPECT_EQ(cli({"scan", "--max-index", "5", "--output", "/nonexistent/dir/out.jsonl"}).code, 1);
}

TEST(Cli, Sieve)
{
    const Result r = cli({"sieve", "--k", "2", "--l", "3", "--max-value", "10000000000"});
    ASSERT_EQ(r.code, 0);
    std::vector<int> ms;
    for (const auto& c : r.of_type("collision")) {
        ms.push_back(c["m"].get<int>());
    }
    EXPECT_EQ(ms, (std::vector<int>{10, 22, 36}));
    const auto stats = r.of_type("stat");
    ASSERT_GT(stats.size(), 1u);
    EXPECT_EQ(stats[1]["extras"]["prime"], 5);

    const Result empty = cli({"sieve", "--k", "3", "--l", "5", "--max-value", "1000000000000"});
    EXPECT_EQ(empty.code, 0);
    EXPECT_TRUE(empty.of_type("collision").empty());
}

TEST(Cli, SieveResume)
{
    const auto ckpt = temp_file("resume.json");
    std::filesystem::remove(ckpt);
    const std::vector<std::string> base{"sieve", "--k", "2", "--l", "4", "--max-value", "10^15"};
    const Result full = cli(base);
    ASSERT_EQ(full.code, 0);

    auto with = [&](std::vector<std::string> extra) {
        auto args = base;
        args.insert(args.end(), extra.begin(), extra.end());
        return cli(args);
    };
    const Result first = with({"--checkpoint", ckpt.string(), "--stop-after-primes", "5"});
    ASSERT_EQ(first.code, 0) << first.err;
    EXPECT_TRUE(first.of_type("collision").empty());
    ASSERT_TRUE(std::filesystem::exists(ckpt));

    const Result second = with({"--checkpoint", ckpt.string(), "--resume"});
    ASSERT_EQ(second.code, 0) << second.err;
    EXPECT_EQ(second.of_type("collision"), full.of_type("collision"));
    EXPECT_EQ(second.of_type("survivor"), full.of_type("survivor"));

    const Result mismatch = cli({"sieve", "--k", "2", "--l", "4", "--max-value", "10^14", "--checkpoint",
                                 ckpt.string(), "--resume"});
    EXPECT_EQ(mismatch.code, 2);
    std::filesystem::remove(ckpt);

    const Result missing = with({"--checkpoint", ckpt.string(), "--resume"});
    EXPECT_EQ(missing.code, 1);
    EXPECT_EQ(cli({"sieve", "--k", "2", "--l", "4", "--max-value", "100", "--resume"}).code, 2);
}

TEST(Cli, Akp)
{
    const Result r = cli({"akp", "--k", "3", "--p", "7"});
    ASSERT_EQ(r.code, 0);
    const json rec = r.records().at(0);
    EXPECT_EQ(rec["extras"]["A"], 5);
    EXPECT_EQ(rec["extras"]["density"], "5/7");
    EXPECT_EQ(rec["extras"]["closed_form"], 5);

    const Result c = cli({"akp", "--k", "4", "--p", "7", "--compare-closed-form"});
    ASSERT_EQ(c.code, 0);
    EXPECT_EQ(c.records().at(0)["extras"]["A"], 3);
    EXPECT_EQ(c.records().at(0)["extras"]["match"], true);

    EXPECT_EQ(cli({"akp", "--k", "1", "--p", "11"}).records().at(0)["extras"]["A"], 11);

    const Result range = cli({"akp", "--k", "3", "--prime-range", "5..100", "--compare-closed-form"});
    EXPECT_EQ(range.code, 0);
    EXPECT_EQ(range.records().size(), 23u);
}

TEST(Cli, Families)
{
    const Result list = cli({"families", "list"});
    EXPECT_EQ(list.code, 0);
    EXPECT_EQ(list.records().size(), 7u);

    const Result eval = cli({"families", "eval", "--family", "1", "--x", "2"});
    ASSERT_EQ(eval.code, 0);
    const json e = eval.records().at(0);
    EXPECT_EQ(e["n"], 27);
    EXPECT_EQ(e["m"], 77);
    EXPECT_EQ(e["value"], "2926");
    EXPECT_EQ(e["d"], "1");

    const Result verify = cli({"families", "verify", "--family", "1", "--x-max", "100"});
    EXPECT_EQ(verify.code, 0);
    EXPECT_EQ(verify.records().size(), 100u);

    const Result fib = cli({"families", "fib", "--max-i", "4"});
    ASSERT_EQ(fib.code, 0);
    const auto rs = fib.records();
    ASSERT_EQ(rs.size(), 4u);
    EXPECT_EQ(rs[3]["n"], 4895);
    EXPECT_EQ(rs[3]["k"], 1869);
    EXPECT_EQ(rs[3]["m"], 4894);
    EXPECT_EQ(rs[3]["l"], 1870);

    const Result cat = cli({"families", "catalog", "verify"});
    EXPECT_EQ(cat.code, 0);
    EXPECT_NE(cat.err.find("29/29"), std::string::npos);
    EXPECT_EQ(cli({"families", "catalog", "export"}).records().size(), 29u);
}

TEST(Cli, ExpandDecimal)
{
    EXPECT_EQ(binomcoll::cli::expand_decimal("10^10"), "10000000000");
    EXPECT_EQ(binomcoll::cli::expand_decimal("12345"), "12345");
    EXPECT_THROW(binomcoll::cli::expand_decimal("1e5"), std::exception);
}

TEST(OutputRecord, JsonlSchema)
{
    binomcoll::cli::OutputRecord r{"near"};
    r.n = 6;
    r.k = 3;
    r.m = 7;
    r.l = 2;
    r.d = "1";
    r.value = "21";
    EXPECT_EQ(binomcoll::cli::to_jsonl(r), R"({"type":"near","n":6,"k":3,"m":7,"l":2,"d":"1","value":"21"})");
    EXPECT_EQ(binomcoll::cli::to_csv(r), "near,6,3,7,2,1,21");
}
