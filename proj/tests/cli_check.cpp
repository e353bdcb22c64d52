// Drives the installed CLI binary end to end: exit codes, artifact layout,
// determinism of rows.csv, and the plot round trip. Takes the binary path
// and the config data directory as arguments.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef _WIN32
#include <sys/wait.h>
#endif

namespace {

int failures = 0;

int run(const std::string& cmd) {
    const int status = std::system((cmd + " >/dev/null 2>&1").c_str());
    if (status == -1) return -1;
#ifdef _WIN32
    return status;
#else
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#endif
}

void expect(bool ok, const std::string& what) {
    std::printf("%s %s\n", ok ? "ok  " : "FAIL", what.c_str());
    if (!ok) ++failures;
}

void expect_exit(const std::string& cmd, int want, const std::string& what) {
    const int got = run(cmd);
    std::printf("%s %s (exit %d, want %d)\n", got == want ? "ok  " : "FAIL",
                what.c_str(), got, want);
    if (got != want) ++failures;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::fprintf(stderr, "usage: cli_check <polycrit-binary> <data-dir>\n");
        return 2;
    }
    const std::string bin = argv[1];
    const std::string data = argv[2];
    const std::string smoke = data + "/smoke.cfg";
    const std::string bad = data + "/bad.cfg";

    std::filesystem::remove_all("smoke-out");

    expect_exit(bin + " --version", 0, "--version");
    expect_exit(bin, 2, "no subcommand is a usage error");
    expect_exit(bin + " simulate", 2, "missing config path");
    expect_exit(bin + " simulate /nonexistent/config.cfg", 2, "unreadable config");
    expect_exit(bin + " simulate " + bad, 2, "unknown key under strict mode");
    expect_exit(bin + " simulate " + bad + " --no-strict", 0,
                "unknown key tolerated with --no-strict");

    expect_exit(bin + " simulate " + smoke + " --fail-on-nonconverged", 0, "smoke run");
    for (const char* name :
         {"rows.csv", "aggregate.csv", "manifest.txt", "points.csv", "timing.csv",
          "scatter.svg", "angles.svg", "convergence.svg"})
        expect(std::filesystem::exists(std::filesystem::path("smoke-out") / name),
               std::string("smoke-out/") + name + " exists");

    const std::string rows_first = slurp("smoke-out/rows.csv");
    expect_exit(bin + " simulate " + smoke, 0, "smoke rerun");
    expect(slurp("smoke-out/rows.csv") == rows_first, "rerun reproduces rows.csv bytes");
    expect_exit(bin + " simulate " + smoke + " --jobs 2", 0, "smoke rerun, 2 workers");
    expect(slurp("smoke-out/rows.csv") == rows_first,
           "parallel run reproduces rows.csv bytes");
    expect_exit(bin + " simulate " + smoke + " --seed 99", 0, "seed override run");
    expect(slurp("smoke-out/rows.csv") != rows_first, "--seed changes the sample");

    expect_exit(bin + " plot smoke-out", 0, "plot regeneration");
    expect_exit(bin + " plot no-such-report-dir", 2, "plot on a missing directory");

    expect_exit(bin + " trace-check --n 64 --k 8 --seed 3", 0, "trace check");
    expect_exit(bin + " trace-check --n 64 --k 8 --seed 3 --measure \"arc(0,0.5)\"", 0,
                "trace check on an arc measure");
    expect_exit(bin + " trace-check --n 1000 --k 4 --seed 3", 2,
                "trace check past the dense cap");

    expect_exit(bin + " limit-zeros --measure \"atomic(0:0.5,0.5:0.5)\" --r 0.5", 0,
                "limit zeros, two atoms");
    expect_exit(bin + " limit-zeros --measure uniform --r 0.5", 0,
                "limit zeros, identically-zero flag");
    expect_exit(bin + " limit-zeros --measure junk --r 0.5", 2,
                "limit zeros, bad measure");
    expect_exit(bin + " limit-zeros --measure uniform --r 1.5", 2,
                "limit zeros, radius out of range");

    if (failures == 0) std::printf("all CLI checks passed\n");
    return failures == 0 ? 0 : 1;
}
