#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

using namespace traitlab;

namespace {

Report sample()
{
    Report r;
    r.command = "demo";
    r.config = {{"fuel", "10"}, {"seed", "3"}};
    r.columns = {"index", "input", "note"};
    r.rows = {{"10", "a", "x"}, {"9", "b", "y,z"}, {"9", "", "say \"hi\""}, {"10", "", "w"}};
    return r;
}

std::vector<std::string> lines(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream s(text);
    for (std::string line; std::getline(s, line);)
        out.push_back(line);
    return out;
}

} // namespace

TEST_CASE("empty row set gives a header-only CSV")
{
    Report r = sample();
    r.rows.clear();
    const auto text = report_string(r, ReportFormat::Csv);
    CHECK(text == "# traitlab 0.1.0 command=demo fuel=10 seed=3\nindex,input,note\n");
}

TEST_CASE("rows are sorted by index, then input, in shortlex order")
{
    const auto l = lines(report_string(sample(), ReportFormat::Csv));
    REQUIRE(l.size() == 6);
    CHECK(l[2] == "9,,\"say \"\"hi\"\"\"");
    CHECK(l[3] == "9,b,\"y,z\"");
    CHECK(l[4] == "10,,w");
    CHECK(l[5] == "10,a,x");
}

TEST_CASE("jsonl rows keep column order")
{
    const auto text = report_string(sample(), ReportFormat::Jsonl);
    CHECK(text.back() == '\n');
    const auto l = lines(text);
    REQUIRE(l.size() == 5);
    CHECK(l[0] == R"({"tool":"traitlab","version":"0.1.0","command":"demo","config":{"fuel":"10","seed":"3"}})");
    CHECK(l[1] == R"({"index":"9","input":"","note":"say \"hi\""})");
    for (std::size_t i = 1; i < l.size(); ++i) {
        const auto j = nlohmann::ordered_json::parse(l[i]);
        std::vector<std::string> keys;
        for (const auto& [k, v] : j.items())
            keys.push_back(k);
        CHECK(keys == std::vector<std::string>{"index", "input", "note"});
    }
}

TEST_CASE("same report twice is byte-identical, and rows may arrive in any order")
{
    Report a = sample(), b = sample();
    std::reverse(b.rows.begin(), b.rows.end());
    CHECK(report_string(a, ReportFormat::Csv) == report_string(b, ReportFormat::Csv));
    CHECK(report_string(a, ReportFormat::Jsonl) == report_string(b, ReportFormat::Jsonl));

    const auto dir = std::filesystem::temp_directory_path();
    const auto p1 = (dir / "traitlab_report_a.csv").string();
    const auto p2 = (dir / "traitlab_report_b.csv").string();
    write_report(a, ReportFormat::Csv, p1);
    write_report(b, ReportFormat::Csv, p2);
    std::ifstream f1(p1, std::ios::binary), f2(p2, std::ios::binary);
    const std::string s1((std::istreambuf_iterator<char>(f1)), {}), s2((std::istreambuf_iterator<char>(f2)), {});
    CHECK(s1 == s2);
    CHECK(s1 == report_string(a, ReportFormat::Csv));
}

TEST_CASE("report errors")
{
    CHECK_THROWS_AS(write_report(sample(), ReportFormat::Csv, "/nonexistent-dir/x.csv"), Error);
    Report r = sample();
    r.rows.push_back({"1"});
    CHECK_THROWS_AS(report_string(r, ReportFormat::Csv), DomainError);
}
