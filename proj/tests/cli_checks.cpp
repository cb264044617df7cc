// End-to-end checks of the command-line tool. argv[1] is the binary,
// argv[2] the fixtures directory. Prints one line per check; exits nonzero
// if any fails.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

int g_failures = 0;

void expect(bool ok, const std::string& what) {
    std::cout << (ok ? "[ok]   " : "[FAIL] ") << what << "\n";
    if (!ok) ++g_failures;
}

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr interleaved
};

RunResult run(const std::string& command) {
    RunResult r;
    FILE* pipe = popen((command + " 2>&1").c_str(), "r");
    if (!pipe) {
        r.output = "popen failed";
        return r;
    }
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe))
        r.output.append(buf, got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = (std::filesystem::temp_directory_path() / name).string();
    std::ofstream(path, std::ios::binary) << content;
    return path;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: cli_checks <pdss-binary> <fixtures-dir>\n";
        return 2;
    }
    const std::string bin = argv[1];
    const std::string fx = argv[2];

    {
        const RunResult r = run(bin + " goodmatrix 5");
        expect(r.exit_code == 0 && r.output == slurp(fx + "/goodmatrix_b5.txt"),
               "goodmatrix 5 prints the frozen schedule");
    }
    {
        const RunResult r = run(bin + " goodmatrix 6");
        expect(r.exit_code == 0 && r.output == slurp(fx + "/goodmatrix_b6.txt"),
               "goodmatrix 6 prints the frozen schedule");
    }
    {
        const RunResult r = run(bin + " goodmatrix 2");
        expect(r.exit_code != 0, "goodmatrix 2 is rejected");
    }
    {
        const RunResult r =
            run(bin + " store --config " + fx + "/demo.cfg --file " + fx + "/store_b3.bin");
        expect(r.exit_code == 0 && r.output == slurp(fx + "/store_b3_snapshot.txt"),
               "store writes the frozen snapshot for the 3-bit demo file");
    }
    {
        const std::string bad = write_temp("pdss_cli_two_bytes.bin", "ab");
        const RunResult r = run(bin + " store --config " + fx + "/demo.cfg --file " + bad);
        expect(r.exit_code != 0 && contains(r.output, "3"),
               "store rejects a wrong-length file and names the required count");
        std::remove(bad.c_str());
    }
    {
        const RunResult r =
            run(bin + " run --config " + fx + "/demo.cfg --scenario " + fx + "/demo.scn");
        expect(r.exit_code == 0 && contains(r.output, "result: pass") &&
                   contains(r.output, "ledger: total elements=31"),
               "run executes the demo scenario and passes");
    }
    {
        const std::string scn =
            write_temp("pdss_cli_fail.scn", "store random\nassert alive-count 6\n");
        const RunResult r = run(bin + " run --config " + fx + "/demo.cfg --scenario " + scn);
        expect(r.exit_code == 1 && contains(r.output, "result: fail"),
               "run exits 1 when an assertion fails");
        std::remove(scn.c_str());
    }
    {
        const std::string scn = write_temp("pdss_cli_seed.scn", "store random\n");
        const RunResult r = run(bin + " run --config " + fx + "/demo.cfg --scenario " + scn +
                                " --seed 99");
        expect(r.exit_code == 0 && contains(r.output, "seed=99"),
               "--seed overrides the configured seed in the report");
        std::remove(scn.c_str());
    }
    {
        const std::string scn = write_temp("pdss_cli_json.scn", "store random\n");
        const std::string json_path =
            (std::filesystem::temp_directory_path() / "pdss_cli_report.json").string();
        const RunResult r = run(bin + " run --config " + fx + "/demo.cfg --scenario " + scn +
                                " --output " + json_path);
        const std::string json = slurp(json_path);
        expect(r.exit_code == 0 && contains(json, "\"format\": \"pdss-report-v1\"") &&
                   contains(json, "\"pass\": true"),
               "run --output writes the versioned JSON report");
        std::remove(scn.c_str());
        std::remove(json_path.c_str());
    }
    {
        const RunResult r =
            run(bin + " verify-assignment --config " + fx + "/resilient.cfg --t 2");
        expect(r.exit_code == 0 && contains(r.output, "result: pass"),
               "verify-assignment certifies the 11-vector set at t=2");
    }
    {
        const RunResult r =
            run(bin + " verify-assignment --config " + fx + "/resilient.cfg --t 3");
        expect(r.exit_code == 1 && contains(r.output, "result: fail") &&
                   contains(r.output, "failure set {"),
               "verify-assignment reports a witness at t=3");
    }
    {
        const RunResult r =
            run(bin + " verify-assignment --config " + fx + "/locality.cfg --t 4");
        expect(r.exit_code == 0 && contains(r.output, "result: pass"),
               "verify-assignment certifies the gf(5) locality partition at t=4");
    }
    {
        const std::string cfg = write_temp("pdss_cli_bad.cfg",
                                           "field = gf(2)\nb = 3\nwhat = ever\n");
        const RunResult r = run(bin + " run --config " + cfg + " --scenario " + fx +
                                "/demo.scn");
        expect(r.exit_code == 1 && contains(r.output, "error:") &&
                   contains(r.output, ":3:"),
               "a malformed config is reported with its file and line");
        std::remove(cfg.c_str());
    }
    {
        const RunResult r = run(bin + " gen-assignment --config " + fx + "/locality.cfg");
        expect(r.exit_code == 0 && contains(r.output, "certified") &&
                   contains(r.output, "1 0 0 0"),
               "gen-assignment prints the vectors and certifies the claim");
    }
    {
        const std::string scn = write_temp("pdss_cli_missing.scn", "store random\n");
        const RunResult r =
            run(bin + " run --config /nonexistent.cfg --scenario " + scn);
        expect(r.exit_code == 1 && contains(r.output, "error:"),
               "a missing config file is a clean error");
        std::remove(scn.c_str());
    }

    if (g_failures == 0) {
        std::cout << "cli checks: all passed\n";
        return 0;
    }
    std::cout << "cli checks: " << g_failures << " failed\n";
    return 1;
}
