// End-to-end checks of the command-line tool: spec parsing, report schema,
// exit codes, and byte determinism. Takes the binary path as argv[1].
#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

int g_failures = 0;

void check(bool ok, const std::string& what) {
    std::printf("%s  %s\n", ok ? "PASS" : "FAIL", what.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& cmd) {
    RunResult result;
    FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!pipe) return result;
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        result.output.append(buf.data(), got);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <isoval-binary>\n");
        return 1;
    }
    const std::string bin = argv[1];

    {
        RunResult r = run(bin + " compute --body cube --measure discrete:0.5 --p 1");
        check(r.exit_code == 0, "compute exits cleanly");
        nlohmann::json j = nlohmann::json::parse(r.output);
        check(j["schema"] == "isoval/1", "compute report carries the schema tag");
        const double pv = j["polar_volume"];
        check(std::abs(pv - 4.0 / 3.0) < 2e-3, "cube polar volume near 4/3");
    }
    {
        RunResult r = run(bin + " compute --body ball:1 --measure equatorial:0.5 --p 1");
        nlohmann::json j = nlohmann::json::parse(r.output);
        const double lo = j["phi"]["min"], hi = j["phi"]["max"];
        check(std::abs(lo - 3.14159265358979) < 1e-7 && std::abs(hi - 3.14159265358979) < 1e-7,
              "equatorial valuation of the ball is the constant pi");
    }
    {
        RunResult r = run(bin + " compute --body ball:1 --measure lebesgue:0.5 --p 1");
        nlohmann::json j = nlohmann::json::parse(r.output);
        const double lo = j["phi"]["min"];
        check(std::abs(lo - 3.14159265358979) < 1e-9,
              "lebesgue valuation of the ball is omega_2 = pi");
    }
    {
        RunResult r = run(bin + " --grid-level 1 verify thm2 --trials 6 --seed 42");
        check(r.exit_code == 0, "verify thm2 exits 0 with no violations");
        nlohmann::json j = nlohmann::json::parse(r.output);
        check(j["summary"]["violations"] == 0, "thm2 report shows zero violations");
    }
    {
        RunResult r = run(bin + " --grid-level 1 verify lemma41 --trials 2 --seed 7");
        check(r.exit_code == 0, "verify lemma41 exits 0");
        nlohmann::json j = nlohmann::json::parse(r.output);
        double worst = 0.0;
        for (const auto& t : j["trials"]) worst = std::max(worst, std::abs((double)t["margin"]));
        check(worst <= 1e-6, "lemma41 residuals at most 1e-6");
    }
    {
        RunResult r = run(bin + " verify thm1 --body ball:1 --measure equatorial:0.5");
        check(r.exit_code == 0, "single-body thm1 verify exits 0");
        nlohmann::json j = nlohmann::json::parse(r.output);
        check(j["trials"][0]["note"] == "equality case", "ball flagged as equality case");
        check(std::abs((double)j["trials"][0]["margin"]) <= 1e-6, "ball margin at most 1e-6");
    }
    {
        RunResult r = run(bin + " sobolev char --body ball:1 --measure discrete:0.5");
        check(r.exit_code == 0, "sobolev char exits 0");
        nlohmann::json j = nlohmann::json::parse(r.output);
        const double expect = std::pow(2.0 * 3.14159265358979 * 3.14159265358979, 1.0 / 3.0);
        check(std::abs((double)j["lhs"] - expect) / expect < 1e-5,
              "Sobolev-Zhang lhs equals (2 pi^2)^{1/3}");
        check(std::abs((double)j["rhs"] - expect) / expect < 1e-5,
              "Sobolev-Zhang rhs equals (2 pi^2)^{1/3}");
    }
    {
        RunResult r = run(bin +
                          " sobolev grid --profile gaussian --p 2 --measure lebesgue:1"
                          " --samples 32 --half-width 8 --grid-level 1");
        check(r.exit_code == 0, "sobolev grid exits 0");
        nlohmann::json j = nlohmann::json::parse(r.output);
        check((double)j["margin"] > 0.0, "gaussian margin is strictly positive");
    }
    {
        RunResult r = run(bin +
                          " extremize --measure equatorial:0.5 --start ellipsoid:2,1,0.5"
                          " --steps 120 --seed 1");
        check(r.exit_code == 0, "extremize exits 0");
        std::istringstream lines(r.output);
        std::string line, last;
        std::getline(lines, line);
        check(line == "step,a,b,c,product", "trajectory csv header");
        while (std::getline(lines, line))
            if (!line.empty()) last = line;
        const double product = std::stod(last.substr(last.rfind(',') + 1));
        check(std::abs(product - 64.0 / 27.0) < 1e-4 * (64.0 / 27.0),
              "extremize converges to the ball product");
    }
    {
        // byte determinism, independent of the worker count
        const std::string cmd = " --grid-level 1 verify thm1 --trials 4 --seed 5";
        RunResult a = run(bin + " --jobs 1" + cmd);
        RunResult b = run(bin + " --jobs 2" + cmd);
        RunResult c = run(bin + cmd);
        check(!a.output.empty() && a.output == b.output && b.output == c.output,
              "identical reports for any --jobs value");
    }
    {
        RunResult r = run(bin + " grid --n 3 --grid-level 1");
        std::istringstream lines(r.output);
        std::string header;
        std::getline(lines, header);
        int rows = 0;
        std::string line;
        while (std::getline(lines, line))
            if (!line.empty()) ++rows;
        check(header == "u1,u2,u3,w" && rows == 32 * 64, "grid csv export shape");
    }
    {
        RunResult r = run(bin + " compute --body ball:notanumber --measure discrete:0.5");
        check(r.exit_code == 2, "spec validation failure exits 2");
        RunResult r2 = run(bin + " compute --body cube --measure nosuch:1");
        check(r2.exit_code == 2, "unknown measure exits 2");
    }
    std::printf("%s\n", g_failures == 0 ? "ALL CLI CHECKS PASSED" : "CLI CHECKS FAILED");
    return g_failures == 0 ? 0 : 1;
}
