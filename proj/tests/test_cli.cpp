#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

std::string g_cli_bin;
fs::path g_work_dir;

struct RunResult {
    int exit_code{-1};
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spit(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

// Runs the installed binary with stdout/stderr captured to files.
RunResult run_cli(const std::string& args) {
    const fs::path out_path = g_work_dir / "stdout.txt";
    const fs::path err_path = g_work_dir / "stderr.txt";
    const std::string cmd = "'" + g_cli_bin + "' " + args + " > '" + out_path.string() +
                            "' 2> '" + err_path.string() + "'";
    const int status = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out_path);
    result.err = slurp(err_path);
    return result;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

// Two files, two classes, detections identical to references.
void write_identity_fixture(const fs::path& dir) {
    spit(dir / "refs.tsv",
         "filename\tonset\toffset\tevent_label\n"
         "a.wav\t0.5\t2\tDog\n"
         "a.wav\t3\t4.25\tCat\n"
         "b.wav\t1\t9\tDog\n");
    spit(dir / "durations.tsv", "a.wav\t10\nb.wav\t12\n");
}

} // namespace

TEST_CASE("identity evaluation scores a perfect macro f1") {
    write_identity_fixture(g_work_dir);
    const auto refs = (g_work_dir / "refs.tsv").string();
    const auto durs = (g_work_dir / "durations.tsv").string();
    const RunResult r = run_cli("evaluate --refs '" + refs + "' --dets '" + refs +
                                "' --durations '" + durs + "'");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "criterion:"));
    CHECK(contains(r.out, "macro F1 1.000000"));
    CHECK(r.err.empty());
}

TEST_CASE("each criterion name selects a description") {
    write_identity_fixture(g_work_dir);
    const auto refs = (g_work_dir / "refs.tsv").string();
    const auto durs = (g_work_dir / "durations.tsv").string();
    const std::string base = "evaluate --refs '" + refs + "' --dets '" + refs +
                             "' --durations '" + durs + "' --criterion ";
    for (const std::string name : {"collar", "collar-onset", "segment", "intersection"}) {
        const RunResult r = run_cli(base + name);
        CHECK(r.exit_code == 0);
        CHECK(contains(r.out, "macro F1 1.000000"));
    }
    // an invalid value is rejected by the option parser as a usage error
    const RunResult bad = run_cli(base + "bogus");
    CHECK(bad.exit_code == 2);
    CHECK(contains(bad.err, "--criterion"));
    CHECK(contains(bad.err, "bogus"));
}

TEST_CASE("a missing input file exits with the parse code and names the path") {
    write_identity_fixture(g_work_dir);
    const auto refs = (g_work_dir / "refs.tsv").string();
    const RunResult r = run_cli("evaluate --refs '" + refs + "' --dets '" + refs +
                                "' --durations '" + (g_work_dir / "nope.tsv").string() + "'");
    CHECK(r.exit_code == 2);
    CHECK(contains(r.err, "nope.tsv"));
    CHECK(contains(r.err, "error:"));
}

TEST_CASE("a malformed table reports its line number") {
    write_identity_fixture(g_work_dir);
    spit(g_work_dir / "broken.tsv", "a.wav\t0\t1\tDog\na.wav\t5\t3\tDog\n");
    const RunResult r = run_cli(
        "evaluate --refs '" + (g_work_dir / "broken.tsv").string() + "' --dets '" +
        (g_work_dir / "broken.tsv").string() + "' --durations '" +
        (g_work_dir / "durations.tsv").string() + "'");
    CHECK(r.exit_code == 2);
    CHECK(contains(r.err, "line 2"));
}

TEST_CASE("detections in unknown files are a domain error") {
    write_identity_fixture(g_work_dir);
    spit(g_work_dir / "stray.tsv", "ghost.wav\t0\t1\tDog\n");
    const RunResult r = run_cli(
        "evaluate --refs '" + (g_work_dir / "refs.tsv").string() + "' --dets '" +
        (g_work_dir / "stray.tsv").string() + "' --durations '" +
        (g_work_dir / "durations.tsv").string() + "'");
    CHECK(r.exit_code == 1);
    CHECK(contains(r.err, "ghost.wav"));
}

TEST_CASE("unknown flags exit with the usage code") {
    const RunResult r = run_cli("evaluate --frobnicate");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("help exits cleanly") {
    CHECK(run_cli("--help").exit_code == 0);
    const RunResult r = run_cli("evaluate --help");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "--criterion"));
}

TEST_CASE("csv tables round through the same pipeline") {
    spit(g_work_dir / "refs.csv",
         "filename,onset,offset,event_label\na.wav,0.5,2,Dog\n");
    spit(g_work_dir / "durations.csv", "a.wav,10\n");
    const auto refs = (g_work_dir / "refs.csv").string();
    const RunResult r = run_cli("evaluate --csv --refs '" + refs + "' --dets '" + refs +
                                "' --durations '" + (g_work_dir / "durations.csv").string() +
                                "'");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "macro F1 1.000000"));
}

TEST_CASE("evaluate writes a machine-readable score table") {
    write_identity_fixture(g_work_dir);
    const auto refs = (g_work_dir / "refs.tsv").string();
    const auto out_path = g_work_dir / "scores.tsv";
    const RunResult r = run_cli("evaluate --refs '" + refs + "' --dets '" + refs +
                                "' --durations '" + (g_work_dir / "durations.tsv").string() +
                                "' --out '" + out_path.string() + "'");
    CHECK(r.exit_code == 0);
    const std::string table = slurp(out_path);
    CHECK(contains(table, "class\ttp\tfp\tfn\ttn\tn_ref\tprecision\trecall\tf1"));
    CHECK(contains(table, "# macro_f1\t1"));
}

TEST_CASE("synth writes corpora that evaluate cleanly end to end") {
    const fs::path dir = g_work_dir / "synth_out";
    const RunResult s = run_cli("synth --out '" + dir.string() +
                                "' --files 3 --file-duration 30 --seed 5 --dets "
                                "--onset-jitter-abs 0.2 --insert-rate 10");
    CHECK(s.exit_code == 0);
    CHECK(contains(s.out, "wrote "));
    CHECK(fs::exists(dir / "refs.tsv"));
    CHECK(fs::exists(dir / "durations.tsv"));
    CHECK(fs::exists(dir / "dets.tsv"));

    const RunResult e = run_cli("evaluate --refs '" + (dir / "refs.tsv").string() +
                                "' --dets '" + (dir / "dets.tsv").string() +
                                "' --durations '" + (dir / "durations.tsv").string() + "'");
    CHECK(e.exit_code == 0);
    CHECK(contains(e.out, "macro F1"));

    const RunResult c = run_cli("compare --refs '" + (dir / "refs.tsv").string() +
                                "' --dets '" + (dir / "dets.tsv").string() +
                                "' --durations '" + (dir / "durations.tsv").string() +
                                "' --matrix '" + (g_work_dir / "matrix.tsv").string() + "'");
    CHECK(c.exit_code == 0);
    CHECK(contains(slurp(g_work_dir / "matrix.tsv"), "# macro_f1"));
}

TEST_CASE("psds consumes a directory of operating points") {
    const fs::path dir = g_work_dir / "sweep_out";
    const RunResult s = run_cli("synth --out '" + dir.string() +
                                "' --files 4 --file-duration 60 --seed 11 --ops 5 "
                                "--onset-jitter-abs 0.1");
    CHECK(s.exit_code == 0);
    CHECK(fs::exists(dir / "ops" / "op_00.tsv"));

    const fs::path roc_path = g_work_dir / "roc.tsv";
    const RunResult p = run_cli("psds --refs '" + (dir / "refs.tsv").string() +
                                "' --durations '" + (dir / "durations.tsv").string() +
                                "' --ops '" + (dir / "ops").string() + "' --roc '" +
                                roc_path.string() + "'");
    CHECK(p.exit_code == 0);
    CHECK(contains(p.out, "operating points: 5"));
    CHECK(contains(p.out, "PSDS "));
    CHECK(contains(slurp(roc_path), "efpr"));

    // an empty sweep directory is a parse error
    const fs::path empty = g_work_dir / "empty_ops";
    fs::create_directories(empty);
    const RunResult bad = run_cli("psds --refs '" + (dir / "refs.tsv").string() +
                                  "' --durations '" + (dir / "durations.tsv").string() +
                                  "' --ops '" + empty.string() + "'");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("synth rejects unknown profiles but accepts a profile file") {
    const RunResult bad = run_cli("synth --out '" + (g_work_dir / "x").string() +
                                  "' --profile punk");
    CHECK(bad.exit_code == 1);
    CHECK(contains(bad.err, "unknown profile"));

    spit(g_work_dir / "tiny_profile.tsv", "Beep\t1\t0.2\t1\t3\n");
    const fs::path dir = g_work_dir / "tiny_out";
    const RunResult ok = run_cli("synth --out '" + dir.string() + "' --profile-file '" +
                                 (g_work_dir / "tiny_profile.tsv").string() +
                                 "' --files 2 --file-duration 20 --seed 1");
    CHECK(ok.exit_code == 0);
    CHECK(contains(slurp(dir / "refs.tsv"), "Beep"));
}

namespace {

int protected_main(int argc, char** argv) {
    doctest::Context ctx;
    std::vector<char*> pass_through;
    for (int i = 0; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg.rfind("--cli-bin=", 0) == 0) {
            g_cli_bin = arg.substr(10);
        } else {
            pass_through.push_back(argv[i]);
        }
    }
    if (g_cli_bin.empty()) {
        std::fprintf(stderr, "usage: pass --cli-bin=/path/to/sedscore\n");
        return 1;
    }
    ctx.applyCommandLine(static_cast<int>(pass_through.size()), pass_through.data());

    g_work_dir = fs::temp_directory_path() /
                 ("sedscore_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(g_work_dir);
    const int rc = ctx.run();
    std::error_code ec;
    fs::remove_all(g_work_dir, ec);
    return rc;
}

} // namespace

int main(int argc, char** argv) { return protected_main(argc, argv); }
