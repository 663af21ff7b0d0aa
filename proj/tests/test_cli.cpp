#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cache.hpp"
#include "cli.hpp"
#include "rtl/graph6.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>
#include <unistd.h>

using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = rtl::cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> v;
    std::istringstream s(text);
    for (std::string l; std::getline(s, l);)
        if (!l.empty()) v.push_back(l);
    return v;
}

std::string temp_path(const std::string& stem) {
    const auto p = std::filesystem::temp_directory_path() /
                   (stem + "-" + std::to_string(::getpid()) + ".jsonl");
    std::filesystem::remove(p);
    return p.string();
}

}  // namespace

TEST_CASE("count and formats") {
    ::unsetenv("RTL_CACHE");
    const auto r = call({"count", "-g", "C~", "-r", "6"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["count"] == "45936");
    CHECK(j["k"] == 4);
    const auto brute = json::parse(call({"count", "-g", "C~", "-r", "6", "--brute"}).out);
    CHECK(brute["count"] == "45936");

    const auto csv = lines(call({"--format", "csv", "count", "-g", "C~", "-r", "7"}).out);
    REQUIRE(csv.size() == 2);
    CHECK(csv[0].find("count") != std::string::npos);
    CHECK(csv[1].find("112609") != std::string::npos);

    const auto search = json::parse(call({"search", "-n", "4", "-r", "12"}).out);
    CHECK(search["best_count"] == "2320704");
    CHECK(search["best_graph6"] == "C~");
    CHECK(search["classes"] == 11);
    const auto scsv = lines(call({"--format", "csv", "search", "-n", "4", "-r", "12"}).out);
    CHECK(scsv.size() == 12);

    const auto poly = json::parse(call({"poly", "-g", "C~", "--at", "6"}).out);
    CHECK(poly.dump().find("45936") != std::string::npos);
}

TEST_CASE("large decimals survive a round trip") {
    const auto r = call({"container-threshold", "-r", "12"});
    REQUIRE(r.code == 0);
    const std::string pinned = "25948915593563941081964526723956484834936";
    CHECK(r.out.find(pinned) != std::string::npos);
    const auto at = json::parse(call({"container-stats", "-n", pinned, "-r", "12"}).out);
    CHECK(at.dump().find(pinned) != std::string::npos);
    CHECK(at["passes"] == true);
    const auto below = json::parse(call({"container-stats", "-n", "25948915593563941081964526723956484834935", "-r", "12"}).out);
    CHECK(below["passes"] == false);
}

TEST_CASE("errors map to exit codes") {
    auto bad = call({"count", "-g", "!!", "-r", "6"});
    CHECK(bad.code == rtl::cli::kExitParse);
    const json j = json::parse(bad.out);
    CHECK(j["error"] == "parse-error");
    CHECK(j["offset"] == 0);
    CHECK(call({"count", "-r", "6"}).code == rtl::cli::kExitUsage);
    CHECK(call({"nonsense"}).code == rtl::cli::kExitUsage);
    CHECK(call({"--partition-cap", "3", "poly", "-g", "C~"}).code == rtl::cli::kExitCap);
    CHECK(call({"--oracle-cap", "10", "count", "-g", "C~", "-r", "6", "--brute"}).code == rtl::cli::kExitCap);
    CHECK(call({"template-stats", "--template", R"({"graph":"C~","r":6,"lists":[[1],[2],[3],[4],[5],[9]]})"}).code ==
          rtl::cli::kExitParse);
    CHECK(call({"template-stats", "--template", "{not json"}).code == rtl::cli::kExitParse);
    CHECK(call({"search", "-n", "9", "-r", "6"}).code == rtl::cli::kExitUsage);
    CHECK(call({"count", "-g", "C~", "-r", "65"}).code == rtl::cli::kExitUsage);
}

TEST_CASE("batch mode matches single-shot runs at any worker count") {
    std::string input;
    for (const auto& g : rtl::enumerate_graphs(5)) input += rtl::write_graph6(g) + "\n";
    const auto one = call({"--workers", "1", "count", "-i", "-", "-r", "6"}, input);
    const auto three = call({"--workers", "3", "count", "-i", "-", "-r", "6"}, input);
    CHECK(one.code == 0);
    CHECK(one.out == three.out);
    const auto recs = lines(one.out);
    REQUIRE(recs.size() == 34);
    std::size_t i = 0;
    for (const auto& g : rtl::enumerate_graphs(5)) {
        const auto single = call({"count", "-g", rtl::write_graph6(g), "-r", "6"});
        CHECK(lines(single.out).at(0) == recs[i++]);
    }
    // A bad record becomes an error record in place.
    const auto mixed = lines(call({"count", "-i", "-", "-r", "6"}, "C~\n!!\nCr\n").out);
    REQUIRE(mixed.size() == 3);
    CHECK(json::parse(mixed[1])["error"] == "parse-error");
    CHECK(json::parse(mixed[1])["index"] == 1);
    CHECK(json::parse(mixed[2])["count"] == "1296");
}

TEST_CASE("cache hits, corruption and versioning") {
    const std::string path = temp_path("rtl-cache-test");
    const auto first = json::parse(call({"--cache", path, "count", "-g", "C~", "-r", "7"}).out);
    CHECK_FALSE(first.contains("cached"));
    const auto second = json::parse(call({"--cache", path, "count", "-g", "C~", "-r", "7"}).out);
    CHECK(second["cached"] == true);
    CHECK(second["count"] == first["count"]);
    CHECK_FALSE(json::parse(call({"--cache", path, "--no-cache", "count", "-g", "C~", "-r", "7"}).out).contains("cached"));

    {
        std::ofstream f(path, std::ios::app);
        f << "{\"fingerprint\": truncated\n";
    }
    const auto after = call({"--cache", path, "count", "-g", "C~", "-r", "7"});
    CHECK(json::parse(after.out)["cached"] == true);
    CHECK(after.err.find("corrupt") != std::string::npos);

    // The same parameters under another version never match.
    std::ostringstream warn;
    rtl::cli::ResultCache cache(path, warn);
    const json params = {{"graph", "C~"}};
    const std::string fp = rtl::cli::ResultCache::fingerprint("probe", params);
    CHECK(fp.find(rtl::cli::kVersion) != std::string::npos);
    cache.store(fp, "probe", json{{"v", 1}});
    CHECK(cache.lookup(fp).has_value());
    std::string other = fp;
    other.replace(other.find(rtl::cli::kVersion), std::string(rtl::cli::kVersion).size(), "rtl-0.9.0");
    CHECK_FALSE(cache.lookup(other).has_value());
    std::filesystem::remove(path);
}

TEST_CASE("concurrent writers keep whole lines") {
    const std::string path = temp_path("rtl-cache-threads");
    std::ostringstream warn;
    const rtl::cli::ResultCache cache(path, warn);
    std::vector<std::thread> threads;
    const std::string payload(5000, 'x');
    for (int w = 0; w < 4; ++w)
        threads.emplace_back([&, w] {
            for (int i = 0; i < 50; ++i)
                cache.store(rtl::cli::ResultCache::fingerprint("t", {{"w", w}, {"i", i}}), "t",
                            json{{"blob", payload}});
        });
    for (auto& t : threads) t.join();
    std::ifstream f(path);
    std::size_t n = 0;
    for (std::string line; std::getline(f, line); ++n) CHECK_NOTHROW(json::parse(line));
    CHECK(n == 200);
    CHECK(cache.lookup(rtl::cli::ResultCache::fingerprint("t", {{"w", 3}, {"i", 49}})).has_value());
    std::filesystem::remove(path);
}

TEST_CASE("stability and supersaturation commands") {
    const std::string tmpl = R"({"graph":"E~~w","r":12,"lists":[[1,2,3,4,5,6,7,8,9,10,11,12],[3,4,5],[1,2],[1,2],[1,2],[6,7],[1,2],[1,2],[1,2],[1,2],[1,2],[1,2],[1,2],[1,2],[1,2]]})";
    const auto cleaned = call({"clean", "--template", tmpl, "--xi", "1/100", "--priority", "2,1"});
    REQUIRE_MESSAGE(cleaned.code == 0, cleaned.out);
    const json c = json::parse(cleaned.out);
    CHECK(c["replay_ok"] == true);

    const std::string trace_path = temp_path("rtl-trace");
    std::ofstream(trace_path) << c["trace"].dump();
    const auto replay = call({"clean", "--template", tmpl, "--replay", trace_path});
    CHECK(replay.code == 0);
    CHECK(json::parse(replay.out)["replay_ok"] == true);
    std::filesystem::remove(trace_path);

    const auto sup = json::parse(call({"supersat", "-n", "6", "-t", "1", "-k", "3", "-e", "15"}).out);
    const double approx = std::stod(sup["value"]["approx"].get<std::string>());
    CHECK(approx == doctest::Approx(0.0595).epsilon(0.001));
    const auto supg = json::parse(call({"supersat", "-g", "E~~w", "-t", "1"}).out);
    CHECK(supg["holds"] == true);
    const auto close = json::parse(call({"closeness", "-g", "E~~w", "-k", "3"}).out);
    CHECK(close.dump().find("3") != std::string::npos);
    const auto bc = json::parse(call({"bounds-compare", "-r", "12"}).out);
    CHECK(bc["winner"] == "turan");
    const auto cl = json::parse(call({"cliques", "-g", "E~~w", "-k", "4"}).out);
    CHECK(cl["count"] == "15");
}
