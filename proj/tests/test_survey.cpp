#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sys/wait.h>

#include "fpcoh/errors.hpp"
#include "fpcoh/reports.hpp"
#include "fpcoh/survey.hpp"

using namespace fpcoh;
using namespace fpcoh::survey;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name)
{
    fs::path d = fs::temp_directory_path() / ("fpcoh_test_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

int run_cli(const std::string& args)
{
    std::string cmd = std::string(FPCOH_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::vector<CorpusEntry> shipped()
{
    return load_corpus(std::string(FPCOH_CORPUS_DIR) + "/corpus.json");
}

} // namespace

TEST_CASE("CSV quoting")
{
    CHECK(reports::csv_field("plain") == "plain");
    CHECK(reports::csv_field("a,b") == "\"a,b\"");
    CHECK(reports::csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(reports::csv_field("two\nlines") == "\"two\nlines\"");
    CHECK(reports::csv_record({"SL2(O-2)", "x,y", ""}) == "SL2(O-2),\"x,y\",\r\n");
}

TEST_CASE("SHA-256 and the result cache")
{
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");

    auto dir = scratch_dir("cache");
    ResultCache cache(dir.string());
    auto key = ResultCache::key("request");
    CHECK(key != ResultCache::key("request "));
    CHECK_FALSE(cache.get(key));
    cache.put(key, "payload\n");
    CHECK(cache.get(key) == std::optional<std::string>("payload\n"));
    CHECK_FALSE(ResultCache().get(key));

    RunOptions opt;
    opt.cache_dir = dir.string();
    auto e = builtin_entry("F2");
    CohomRequest req;
    req.p = 3;
    auto first = cmd_cohom(e, req, opt);
    std::size_t files = 0;
    for (const auto& f : fs::directory_iterator(dir)) files += f.path().extension() == ".json";
    CHECK(files == 2);
    CHECK(cmd_cohom(e, req, opt) == first);
    CHECK(cmd_cohom(e, req, RunOptions{}) == first);
    fs::remove_all(dir);
}

TEST_CASE("cohomology JSON for the built-ins")
{
    for (const std::string name : {"Z2", "F2"}) {
        INFO(name);
        auto j = json::parse(cmd_cohom(builtin_entry(name), CohomRequest{}, RunOptions{}));
        CHECK(j["entry"] == name);
        CHECK(j["dims"]["h1"]["provenance"] == "computed");
        if (name == "Z2") CHECK(j["dims"]["h1"]["value"] == 2);
        else CHECK(j["dims"]["h1"]["value"] == j["module_dim"]["value"].get<int>() + 1);
    }
    CohomRequest full;
    full.subgroup = "full";
    auto j = json::parse(cmd_cohom(builtin_entry("F2"), full, RunOptions{}));
    CHECK(j["dims"]["h1"]["value"] == 2);
    CohomRequest bad;
    bad.subgroup = "principal:0x";
    CHECK_THROWS_AS(cmd_cohom(builtin_entry("F2"), bad, RunOptions{}), ValidationError);
}

TEST_CASE("survey output does not depend on the job count")
{
    SurveyRequest req;
    req.p_min = 5;
    req.p_max = 11;
    RunOptions one, four;
    four.jobs = 4;
    auto a = cmd_survey(shipped(), req, one);
    auto b = cmd_survey(shipped(), req, four);
    CHECK(a.csv == b.csv);
    CHECK(a.json == b.json);
    REQUIRE(a.rows.size() == shipped().size());
    for (const auto& r : a.rows)
        for (const auto& d : r.details) {
            CHECK(d.error.empty());
            if (d.surjective) CHECK(d.measured.size() == d.p);
        }
    CHECK(a.csv.rfind("label,", 0) == 0);
}

TEST_CASE("survey edge cases")
{
    auto empty = cmd_survey({}, SurveyRequest{}, RunOptions{});
    CHECK(empty.rows.empty());
    CHECK(std::count(empty.csv.begin(), empty.csv.end(), '\n') == 1);

    SurveyRequest req;
    req.p_min = 7;
    req.p_max = 7;
    auto one = cmd_survey({shipped().at(1)}, req, RunOptions{});
    REQUIRE(one.rows.size() == 1);
    CHECK(one.rows[0].label == "figure-eight");
    CHECK(one.rows[0].primes_tested == one.rows[0].details.size());
    CHECK(std::count(one.csv.begin(), one.csv.end(), '\n') == 2);
}

TEST_CASE("verify41 reports the presentation source")
{
    std::string status;
    auto j = json::parse(cmd_verify41(shipped().at(0), 1, RunOptions{}, &status));
    CHECK(status == "inconclusive");
    CHECK(j["presentation_sourced"] == true);
    CHECK_FALSE(j["presentation_source"].get<std::string>().empty());
}

TEST_CASE("CLI exit codes")
{
    CHECK(run_cli("cohom --entry Z2 --p 3") == 0);
    CHECK(run_cli("weights --kind bn --p 7") == 0);

    // a relator that fails under the given images
    auto dir = scratch_dir("cli");
    auto j = json::parse(std::ifstream(std::string(FPCOH_CORPUS_DIR) + "/corpus.json"));
    j["entries"][1]["relators"] = json::array({"xyXY"});
    auto bad = (dir / "bad.json").string();
    std::ofstream(bad) << j.dump();
    CHECK(run_cli("cohom --corpus " + bad + " --entry figure-eight --p 7") == 1);
    CHECK(run_cli("cohom --entry F2 --p 4") == 1);

    CHECK(run_cli("--max-dim 700 tower --entry F2 --p 3 --k-max 3") == 2);
    CHECK(run_cli("--max-dim 10 cohom --entry F2 --p 3 --k 2") == 2);
    fs::remove_all(dir);
}
