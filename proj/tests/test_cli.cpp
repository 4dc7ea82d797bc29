#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include <json.hpp>

#include "support.hpp"
#include "synchro/io.hpp"

using namespace support;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& input = "")
{
    std::string cmd = std::string(SYNCHRO_CLI_PATH) + " " + args + " 2>&1";
    if (!input.empty()) cmd = "printf '" + input + "' | " + cmd;
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe)) r.out += buf.data();
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string model(int k) { return corpus_dir() + "/stage" + std::to_string(k) + ".model"; }

fs::path scratch(const std::string& name)
{
    auto dir = fs::temp_directory_path() / ("synchro_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("validate exit codes")
{
    CHECK(run("validate " + model(7)).code == 0);
    CHECK(run("validate /nonexistent/file.model").code == 2);
    auto dir = scratch("validate");
    std::ofstream(dir / "bad.model") << "alphabet { a }\nsystem { Missing }\n";
    auto r = run("validate " + (dir / "bad.model").string());
    CHECK(r.code == 2);
    CHECK(r.out.find("Missing") != std::string::npos);
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
}

TEST_CASE("refine reports verdicts as exit codes and JSON")
{
    auto ok = run("refine " + model(2) + " " + model(3));
    CHECK(ok.code == 0);
    auto j = nlohmann::json::parse(ok.out);
    CHECK(j["holds"] == true);
    CHECK(j["components"][0]["witness"]["non_awake"] == nlohmann::json::array({"na"}));

    auto bad = run("refine " + model(4) + " " + model(5));
    CHECK(bad.code == 1);
    auto k = nlohmann::json::parse(bad.out);
    CHECK(k["holds"] == false);
    CHECK_FALSE(k["components"][2]["unmatched_transitions"].empty());
    CHECK(run("refine " + model(4) + " /nonexistent").code == 2);
}

TEST_CASE("include and simulates")
{
    CHECK(run("include " + model(1) + " " + model(2)).code == 0);
    auto r = run("include " + model(2) + " " + model(3));
    CHECK(r.code == 1);
    CHECK(r.out.find("counterexample \"tau,nostress\"") != std::string::npos);
    CHECK(run("include " + model(2) + " " + model(3) + " --project").code == 0);
    CHECK(run("include " + model(2) + " " + model(3) + " --tau-epsilon").code == 1);
    CHECK(run("simulates " + model(1) + " " + model(2)).code == 0);
    CHECK(run("simulates " + model(2) + " " + model(3)).code == 1);
    CHECK(run("simulates " + model(2) + " " + model(3) + " --project").code == 0);
}

TEST_CASE("simulate modes")
{
    auto a = run("simulate " + model(7) + " --steps 25 --seed 12345678901234567890");
    auto b = run("simulate " + model(7) + " --steps 25 --seed 12345678901234567890");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("(na,f,x_ge1000,rho,phi)", 0) == 0);

    auto w = run("simulate " + model(3) + " --word tau,s,nostress,tau");
    CHECK(w.code == 0);
    CHECK(parse_trace(w.out) == corpus::reference_traces(3).front());
    auto blocked = run("simulate " + model(3) + " --word s");
    CHECK(blocked.code == 1);
    CHECK(blocked.out.find("blocked") != std::string::npos);

    CHECK(run("simulate " + model(3)).code == 2);
    CHECK(run("simulate " + model(3) + " --steps 4").code == 2);
    CHECK(run("simulate " + model(3) + " --steps 4 --seed -1").code == 2);
    CHECK(run("simulate " + model(3) + " --word zz").code == 2);

    auto i = run("simulate " + model(3) + " --interactive", "1\\nq\\n");
    CHECK(i.code == 0);
    CHECK(i.out.find("1: --tau--> (a,f)") != std::string::npos);
    CHECK(i.out.find("(na,f) --tau--> (a,f)") != std::string::npos);
}

TEST_CASE("check-trace")
{
    for (int k = 3; k <= 6; ++k) {
        auto trace = corpus_dir() + "/traces/stage" + std::to_string(k) + ".trace";
        CHECK(run("check-trace " + model(k) + " --trace " + trace).code == 0);
    }
    auto dir = scratch("trace");
    std::ofstream(dir / "bad.trace") << "(na,f) --s--> (a,f)\n";
    auto r = run("check-trace " + model(3) + " --trace " + (dir / "bad.trace").string());
    CHECK(r.code == 1);
    CHECK(r.out.find("step 1") != std::string::npos);
    std::ofstream(dir / "garbage.trace") << "(na,f) --s-->\n";
    CHECK(run("check-trace " + model(3) + " --trace " + (dir / "garbage.trace").string()).code == 2);
}

TEST_CASE("corpus emission reproduces the shipped files")
{
    auto dir = scratch("corpus");
    CHECK(run("corpus --stage 5 --emit " + dir.string()).code == 2);
    CHECK(run("corpus --stage 9 --params money --emit " + dir.string()).code == 2);
    CHECK(run("corpus --params money --examples --emit " + dir.string()).code == 0);
    for (const auto& entry : fs::recursive_directory_iterator(corpus_dir())) {
        if (!entry.is_regular_file()) continue;
        auto rel = fs::relative(entry.path(), corpus_dir());
        std::ifstream shipped(entry.path());
        std::ifstream fresh(dir / rel);
        REQUIRE_MESSAGE(fresh.good(), rel.string());
        std::string x((std::istreambuf_iterator<char>(shipped)), {});
        std::string y((std::istreambuf_iterator<char>(fresh)), {});
        CHECK_MESSAGE(x == y, rel.string());
    }
}

TEST_CASE("unfold, product and export-dot")
{
    auto u = run("unfold " + model(7) + " --automaton A74");
    CHECK(u.code == 0);
    auto doc = parse_document(u.out);
    REQUIRE(doc.ok());
    CHECK(doc.document->automata.at("A74").states.size() == 5);
    CHECK(run("unfold " + model(7) + " --automaton Nope").code == 2);

    auto p = run("product " + model(3));
    CHECK(p.code == 0);
    CHECK(p.out.find("states 2\n") != std::string::npos);
    CHECK(p.out.find("transitions 6\n") != std::string::npos);
    CHECK(run("product " + model(7)).out.find("states 120\n") != std::string::npos);

    auto d = run("export-dot " + model(4) + " --automaton A43");
    CHECK(d.code == 0);
    CHECK(d.out.find("doublecircle") != std::string::npos);
    auto du = run("export-dot " + model(4) + " --automaton A43 --unfolded");
    CHECK(du.out.find("doublecircle") == std::string::npos);
    CHECK(du.out.find("x_ge1000") != std::string::npos);
}
