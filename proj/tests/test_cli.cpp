#include "jigsaw/serialize.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace jigsaw;

namespace {

namespace fs = std::filesystem;

struct Run {
    int code;
    std::string out;
};

fs::path scratch_dir()
{
    const fs::path d = fs::temp_directory_path() / ("jigsaw_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
}

Run run(const std::string& args)
{
    const fs::path out = scratch_dir() / "stdout.txt";
    const std::string cmd = std::string("\"") + JIGSAW_CLI_PATH + "\" " + args + " > \"" + out.string() + "\" 2>/dev/null";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string rows_without_timing(const Json& report)
{
    Json rows = report.at("rows");
    for (auto& r : rows) r.erase("seconds");
    return rows.dump();
}

}  // namespace

TEST_CASE("cli: certificates round trip through verify")
{
    const fs::path f = scratch_dir() / "thm2.json";
    CHECK(run("certify-thm2 16 --out \"" + f.string() + "\"").code == 0);
    CHECK(run("verify \"" + f.string() + "\"").code == 0);

    Json j = read_json(f);
    j["word"] = "2.0.1";
    write_json_atomic(f, j);
    CHECK(run("verify \"" + f.string() + "\"").code == 1);
}

TEST_CASE("cli: cover proofs and descents verify")
{
    const fs::path cover = scratch_dir() / "cover.json";
    CHECK(run("cover \"J 1 2\" --out \"" + cover.string() + "\"").code == 0);
    CHECK(run("verify \"" + cover.string() + "\"").code == 0);

    const fs::path trace = scratch_dir() / "trace.json";
    CHECK(run("reduce \"W 4\" 999/1000 --out \"" + trace.string() + "\"").code == 0);
    CHECK(run("verify \"" + trace.string() + "\"").code == 0);
}

TEST_CASE("cli: usage errors and undetermined exit codes")
{
    CHECK(run("certify-thm2 5").code == 2);
    CHECK(run("hunt \"Q 4\"").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("hunt \"W 3\" --max-word-len banana").code == 2);
    CHECK(run("render \"W 3\" --render-layers tangency").code == 2);
    CHECK(run("verify /nonexistent/file.json").code == 2);
    // budgets far too small to decide W 17
    CHECK(run("hunt \"W 17\" --max-word-len 2 --max-height 1 --max-orbit 10 --cover-word-len 2").code == 3);
}

TEST_CASE("cli: render layers")
{
    const Run empty = run("render \"J 1 1\" --lo 3 --hi 3");
    CHECK(empty.code == 0);
    CHECK(empty.out.find("<svg") != std::string::npos);
    CHECK(empty.out.find("<path") == std::string::npos);

    const Run tiles = run("render \"J 1 1\" --lo 0 --hi 6");
    CHECK(tiles.code == 0);
    CHECK(tiles.out.find("data-left=\"1\" data-right=\"5\"") != std::string::npos);

    const Run killers = run("render \"J 1 1 shift -1\" --lo=-1 --hi 5 --render-layers killers");
    CHECK(killers.code == 0);
    for (const char* k : {"data-lo=\"-1\" data-hi=\"1\"", "data-lo=\"1\" data-hi=\"5/3\"",
                          "data-lo=\"3/2\" data-hi=\"5/2\"", "data-lo=\"7/3\" data-hi=\"3\"",
                          "data-lo=\"11/4\" data-hi=\"13/4\"", "data-lo=\"3\" data-hi=\"5\""}) {
        CAPTURE(k);
        CHECK(killers.out.find(k) != std::string::npos);
    }

    const Run tangency = run("render \"J 2 1\" --lo 0 --hi 12 --render-layers tangency");
    CHECK(tangency.code == 0);
    CHECK(tangency.out.find("data-x=") != std::string::npos);
}

TEST_CASE("cli: a resumed survey matches an uninterrupted one")
{
    const fs::path dir = scratch_dir();
    const std::string budgets = " --max-word-len 8 --max-height 12";
    const fs::path plain = dir / "plain.json", resumed = dir / "resumed.json", ck = dir / "ck.json";
    fs::remove(ck);
    REQUIRE(run("survey \"W 1..7\" --out \"" + plain.string() + "\"" + budgets).code == 0);
    REQUIRE(run("survey \"W 1..7\" --resume \"" + ck.string() + "\" --out \"" + resumed.string() + "\"" + budgets)
                .code == 0);
    CHECK(rows_without_timing(read_json(plain)) == rows_without_timing(read_json(resumed)));

    // cut the checkpoint back to an interrupted state and finish it
    Json j = read_json(ck);
    auto& rows = j.at("rows");
    rows.erase(rows.begin() + 3, rows.end());
    j["completed"] = 3;
    j["next_candidate"] = 5;
    write_json_atomic(ck, j);
    REQUIRE(run("survey \"W 1..7\" --resume \"" + ck.string() + "\" --out \"" + resumed.string() + "\"" + budgets)
                .code == 0);
    CHECK(rows_without_timing(read_json(plain)) == rows_without_timing(read_json(resumed)));
    CHECK(run("verify \"" + resumed.string() + "\"").code == 0);

    // a checkpoint for other budgets is refused
    CHECK(run("survey \"W 1..7\" --resume \"" + ck.string() + "\" --max-word-len 6").code == 2);
    fs::remove_all(dir);
}
