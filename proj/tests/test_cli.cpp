#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args)
{
    const std::string cmd = std::string(ADISO_CLI) + " " + args + " 2>/dev/null";
    Run r{0, {}};
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0)
        r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("adiso_cli_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string line_starting(const std::string& text, const std::string& prefix)
{
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (line.rfind(prefix, 0) == 0)
            return line;
    return {};
}

} // namespace

TEST_CASE("modes reports the matched impedances")
{
    const Run r = run("modes");
    CHECK(r.code == 0);
    CHECK(r.out.find("\"z_e_ohm\": 49.99") != std::string::npos);
    CHECK(r.out.find("\"degenerate\": false") != std::string::npos);
}

TEST_CASE("degenerate modes produce a warning")
{
    const fs::path dir = scratch("degenerate");
    fs::create_directories(dir);
    std::ofstream(dir / "c.yaml") << "circuit:\n  lm_pH: 0\n  cm_fF: 0\n";
    const std::string cmd = std::string(ADISO_CLI) + " --config " + (dir / "c.yaml").string() + " modes 2>&1 >/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    char buf[1024] = {};
    const std::size_t n = fread(buf, 1, sizeof buf - 1, pipe);
    pclose(pipe);
    CHECK(std::string(buf, n).find("warning") != std::string::npos);
}

TEST_CASE("malformed config exits nonzero and writes nothing")
{
    const fs::path dir = scratch("bad");
    fs::create_directories(dir);
    std::ofstream(dir / "bad.yaml") << "sweep:\n  pointz: 3\n";
    const Run r = run("--config " + (dir / "bad.yaml").string() + " --out " + (dir / "out").string() + " sweep");
    CHECK(r.code != 0);
    CHECK_FALSE(fs::exists(dir / "out"));
}

TEST_CASE("dispersion table")
{
    const fs::path dir = scratch("dispersion");
    const Run r = run("--out " + dir.string() + " --grid 81 dispersion");
    REQUIRE(r.code == 0);
    const std::string csv = slurp(dir / "dispersion.csv");
    CHECK(csv.rfind("f_GHz,k_e,k_o,k_e_linear,k_o_linear\n", 0) == 0);
    CHECK(line_starting(csv, "0.000000000e+00") == "0.000000000e+00,0.000000000e+00,0.000000000e+00,0.000000000e+00,0.000000000e+00");
    // 6 GHz is row 61 of 81 points over [0, 8] GHz.
    CHECK(line_starting(csv, "6.000000000e+00").find(",1.516610") != std::string::npos);
}

TEST_CASE("profile table")
{
    const fs::path dir = scratch("profile");
    REQUIRE(run("--out " + dir.string() + " --stride 100 profile").code == 0);
    const std::string csv = slurp(dir / "profile_2000.csv");
    CHECK(csv.rfind("x,k_p,m,kappa,dk_f,dk_b\n", 0) == 0);
    CHECK(line_starting(csv, "0.000000000e+00,").find(",0.000000000e+00,0.000000000e+00,") != std::string::npos);
    CHECK(line_starting(csv, "2.000000000e+03,").find(",0.000000000e+00,0.000000000e+00,") != std::string::npos);
}

TEST_CASE("simulate converts forward and passes backward")
{
    const fs::path dir = scratch("simulate");
    REQUIRE(run("--out " + dir.string() + " --stride 200 simulate --freq 6").code == 0);
    const std::string fwd = slurp(dir / "simulate_rwa_forward_6.000GHz_2000.json");
    CHECK(fwd.find("\"exit_O_power\": 0.99") != std::string::npos);

    REQUIRE(run("--out " + dir.string() + " --stride 200 simulate --freq 6 --direction backward").code == 0);
    const std::string bwd = slurp(dir / "simulate_rwa_backward_6.000GHz_2000.json");
    CHECK(bwd.find("\"exit_E_power\": 0.99") != std::string::npos);
    CHECK(fs::exists(dir / "simulate_rwa_backward_6.000GHz_2000.csv"));
}

TEST_CASE("sweep output is deterministic")
{
    const fs::path a = scratch("sweep");
    const Run ra = run("--out " + a.string() + " --length 600 --grid 21 sweep");
    REQUIRE(ra.code == 0);
    CHECK(ra.out.find("sweep_rwa_600.csv") != std::string::npos);
    const std::string csv = slurp(a / "sweep_rwa_600.csv");
    const std::string json = slurp(a / "sweep_rwa_600.json");
    REQUIRE(run("--out " + a.string() + " --length 600 --grid 21 sweep").code == 0);
    CHECK(slurp(a / "sweep_rwa_600.csv") == csv);
    CHECK(slurp(a / "sweep_rwa_600.json") == json);
    CHECK(csv.rfind("f_GHz,isolation_dB,backward_transmission_dB,insertion_loss_dB,forward_residual,model\n", 0) == 0);
}

TEST_CASE("lengths, adiabatic and compare-rwa write their tables")
{
    const fs::path dir = scratch("others");
    REQUIRE(run("--out " + dir.string() + " --grid 11 lengths --lengths 300 600").code == 0);
    CHECK(fs::exists(dir / "lengths_rwa.csv"));
    REQUIRE(run("--out " + dir.string() + " --length 500 --stride 50 adiabatic --freq 6").code == 0);
    CHECK(fs::exists(dir / "adiabatic_6.000GHz_500.csv"));
    CHECK(fs::exists(dir / "adiabatic_500.json"));
    REQUIRE(run("--out " + dir.string() + " --length 300 --grid 5 compare-rwa").code == 0);
    CHECK(fs::exists(dir / "compare_rwa_300.csv"));
    CHECK(fs::exists(dir / "compare_rwa_300.json"));
}

TEST_CASE("params echoes the resolved configuration")
{
    const Run r = run("--params --model full --length 900");
    CHECK(r.code == 0);
    CHECK(r.out.find("length_cells: 900") != std::string::npos);
    CHECK(r.out.find("model: full") != std::string::npos);
    CHECK(r.out.find("k_center_per_cell: 0.1546") != std::string::npos);
}

TEST_CASE("failing command leaves no partial files")
{
    const fs::path dir = scratch("fail");
    // 60 GHz lies above the plasma frequency; the sweep must fail.
    std::ofstream cfg(fs::temp_directory_path() / "adiso_cli_fail.yaml");
    cfg << "sweep:\n  f_min_GHz: 50\n  f_max_GHz: 60\n";
    cfg.close();
    const Run bad = run("--config " + (fs::temp_directory_path() / "adiso_cli_fail.yaml").string() + " --out " +
                        dir.string() + " --length 100 --grid 3 sweep");
    CHECK(bad.code != 0);
    CHECK((!fs::exists(dir) || fs::is_empty(dir)));
}
