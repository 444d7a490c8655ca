#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + SODDY_CLI_PATH + " " + args + " 2>/tmp/soddy_cli_test_err";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), buf.size(), p)) r.out += buf.data();
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string last_stderr() {
    std::ifstream f("/tmp/soddy_cli_test_err");
    return {std::istreambuf_iterator<char>(f), {}};
}

int data_lines(const std::string& csv) {
    int n = 0;
    std::size_t pos = 0;
    bool header_seen = false;
    while (pos < csv.size()) {
        const auto end = csv.find('\n', pos);
        const std::string line = csv.substr(pos, end - pos);
        pos = end == std::string::npos ? csv.size() : end + 1;
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        ++n;
    }
    return n;
}

nlohmann::json result(const Run& r) { return nlohmann::json::parse(r.out).at("result"); }

}  // namespace

TEST_CASE("curvatures") {
    const auto r85 = run("curvatures --bound 85 --format csv");
    CHECK(r85.code == 0);
    CHECK(data_lines(r85.out) == 31);
    CHECK(r85.out.find("# seed=1") != std::string::npos);
    CHECK(r85.out.find("\n-11,1\n") != std::string::npos);
    CHECK(data_lines(run("curvatures --bound 28 --format csv").out) == 5);
    const auto j = result(run("curvatures --bound 85"));
    CHECK(j["distinct"] == 31);
    CHECK(j["quintuples"] == 55);
}

TEST_CASE("invalid roots exit with 2") {
    CHECK(run("curvatures --root 1,1,1,1,1 --bound 85").code == 2);
    CHECK(last_stderr().find("-10") != std::string::npos);
    CHECK(run("curvatures --root -22,42,50,54,56").code == 2);
    CHECK(run("curvatures --root 1,2,3").code == 2);
    CHECK(run("exceptions --root a,b,c,d,e").code == 2);
}

TEST_CASE("usage errors") {
    CHECK(run("").code != 0);
    CHECK(run("no-such-command").code != 0);
    CHECK(run("curvatures --format xml").code != 0);
}

TEST_CASE("exceptions") {
    const auto j = result(run("exceptions --bound 85"));
    CHECK(j["count"] == 27);
    CHECK(j["largest"] == 76);
    CHECK(j["exceptions"].back() == 76);
    const auto empty = run("exceptions --bound 0");
    CHECK(empty.code == 0);
    CHECK(result(empty)["exceptions"].empty());
}

TEST_CASE("outputs are byte-identical across runs and carry metadata") {
    const auto a = run("curvatures --bound 500 --workers 3");
    const auto b = run("curvatures --bound 500 --workers 3");
    CHECK(a.out == b.out);
    const auto meta = nlohmann::json::parse(a.out)["meta"];
    CHECK(meta["version"] == "1.0.0");
    CHECK(meta["config"]["workers"] == 3);
    CHECK(meta["seed"] == 1);
    CHECK_FALSE(meta.contains("elapsed_seconds"));
    CHECK(nlohmann::json::parse(run("curvatures --bound 85 --timing").out)["meta"].contains("elapsed_seconds"));
    CHECK(nlohmann::json::parse(run("curvatures --bound 85", "SODDY_WORKERS=2").out)["meta"]["config"]["workers"] == 2);
    // Results do not depend on the worker count.
    CHECK(result(run("curvatures --bound 500 --workers 1")) == result(a));
}

TEST_CASE("output files") {
    const std::string path = "/tmp/soddy_cli_test_out.csv";
    CHECK(run("exceptions --bound 85 --format csv --out " + path).code == 0);
    std::ifstream f(path);
    const std::string text{std::istreambuf_iterator<char>(f), {}};
    CHECK(data_lines(text) == 27);
}

TEST_CASE("spin-verify") {
    const auto ok = run("spin-verify --seed 7");
    CHECK(ok.code == 0);
    CHECK(result(ok)["all_passed"] == true);
    CHECK(result(ok)["seed"] == 7);
    const auto bad = run("spin-verify --inject-fault jcong");
    CHECK(bad.code == 4);
    CHECK(last_stderr().find("Jcong") != std::string::npos);
}

TEST_CASE("represent and verify-witness") {
    const std::string path = "/tmp/soddy_cli_test_witness.json";
    const auto r28 = run("represent --n 28 --out " + path);
    CHECK(r28.code == 0);
    CHECK(run("verify-witness --witness " + path).code == 0);

    const auto r118 = run("represent --n 118");
    CHECK(r118.code == 0);
    const auto w = result(r118)["witness"];
    CHECK(w["n"] == 118);
    CHECK(w["pivot"] == -11);
    CHECK(w["quintuple"].size() == 5);

    auto tampered = w;
    tampered["gamma"][0] = tampered["gamma"][0].get<int>() + 1;
    {
        std::ofstream f(path);
        f << tampered.dump();
    }
    const auto rej = run("verify-witness --witness " + path);
    CHECK(rej.code == 7);
    CHECK(result(rej)["valid"] == false);

    const auto r23 = run("represent --n 23");
    CHECK(r23.code == 6);
    CHECK(last_stderr().find("not admissible") != std::string::npos);

    const auto r22 = run("represent --n 22");
    CHECK(r22.code == 0);
    CHECK(result(r22)["found"] == false);

    CHECK(run("represent --n 997 --effort 2").code == 3);
}

TEST_CASE("other commands") {
    const auto census = result(run("census-mod9"));
    CHECK(census["classes"] == 140);
    CHECK(census["reductions_mod3"].size() == 2);

    const auto scan = result(run("obstruction-scan --q-max 6"));
    CHECK(scan["reports"].size() == 6);
    CHECK(scan["reports"][2]["admissible_residues"] == nlohmann::json::array({0, 1}));
    CHECK(result(run("obstruction-scan --modulus 9"))["reports"][0]["orbit_size"] == 81);

    const auto adm = run("admissible --n 21,22,23 --format csv");
    CHECK(adm.out.find("n,admissible,represented\n21,1,1\n22,1,0\n23,0,0\n") != std::string::npos);

    const auto geo = result(run("geometry-export --bound 28"));
    CHECK(geo["scene"].size() == 5);
    CHECK(geo["approximate"] == false);
    CHECK(result(run("geometry-export --bound 28 --approximate"))["approximate"] == true);

    const auto st = result(run("stability-scan --bound 85"));
    CHECK(st["largest_exception"] == 76);
    CHECK(st["stable"] == false);

    const auto fit = result(run("counts-fit --bounds 500,1000,2000"));
    CHECK(fit["counts"] == nlohmann::json::array({4462, 24951, 137811}));
    CHECK(fit["slope"].get<double>() > 2.3);
    const auto cfit = result(run("counts-fit --bounds 500,1000,2000 --convention census"));
    CHECK(cfit["counts"][0] == 2862);
}
