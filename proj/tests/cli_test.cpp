#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "pblock/config.hpp"
#include "pblock/csvio.hpp"
#include "pblock/manifest.hpp"
#include "pblock/sweep.hpp"

using namespace pblock;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path temp_dir() {
    static int counter = 0;
    fs::path dir = fs::temp_directory_path() /
                   ("pblock_test_" + std::to_string(::getpid()) + "_" +
                    std::to_string(counter++));
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("config parsing") {
    const Config cfg = Config::from_string(
        "# comment\n"
        "delta = 0.29  # trailing comment\n"
        "j = 10\n"
        "name = fig2\n"
        "flag = true\n"
        "temps = 0, 0.04, 0.1\n");
    CHECK(cfg.get_double("delta") == 0.29);
    CHECK(cfg.get_int("j") == 10);
    CHECK(cfg.get_string("name") == "fig2");
    CHECK(cfg.get_bool("flag", false));
    CHECK(cfg.get_double_list("temps") == std::vector<double>{0.0, 0.04, 0.1});
    CHECK(cfg.get_double("missing", 7.5) == 7.5);
    CHECK_THROWS_AS(cfg.get_double("missing"), ConfigError);
    CHECK_THROWS_AS(cfg.get_double("name"), ConfigError);
    CHECK_THROWS_AS(Config::from_string("not a pair\n"), ConfigError);
    CHECK_THROWS_AS(Config::load("/nonexistent/path.cfg"), ConfigError);
}

TEST_CASE("system params from config") {
    const Config cfg = Config::from_string(
        "delta = 0.2885\nj = 20\nu = 0.00096\nf = 0.01\nt_over_t0 = 0.04\n");
    const SystemParams p = system_params_from(cfg);
    CHECK(p.delta == 0.2885);
    CHECK(p.coupling_j == 20.0);
    CHECK(p.n_th == doctest::Approx(1.3887943864771144e-11));

    CHECK_THROWS_AS(
        system_params_from(Config::from_string("n_th = 0.1\nt_over_t0 = 0.1\n")),
        ConfigError);
    CHECK_THROWS_AS(system_params_from(Config::from_string("gamma = -1\n")), ConfigError);
}

TEST_CASE("axis values") {
    AxisSpec lin{"j", 1.0, 3.0, 5, false};
    const auto vl = axis_values(lin);
    CHECK(vl == std::vector<double>{1.0, 1.5, 2.0, 2.5, 3.0});

    AxisSpec lg{"u", 1e-4, 1e-2, 3, true};
    const auto vg = axis_values(lg);
    CHECK(vg[0] == doctest::Approx(1e-4));
    CHECK(vg[1] == doctest::Approx(1e-3));
    CHECK(vg[2] == doctest::Approx(1e-2));

    lg.min = -1.0;
    CHECK_THROWS_AS(axis_values(lg), ConfigError);
    lin.n_points = 1;
    CHECK_THROWS_AS(axis_values(lin), ConfigError);
}

TEST_CASE("csv number format is pinned") {
    CHECK(sci(0.0) == "0.00000000e+00");
    CHECK(sci(1.0) == "1.00000000e+00");
    CHECK(sci(-2.5e-13) == "-2.50000000e-13");
    CHECK(sci(1.3887943864771144e-11) == "1.38879439e-11");
}

TEST_CASE("degenerate 2x2 sweep emits all rows deterministically") {
    SweepSpec spec;
    spec.axis1 = {"j", 1.0, 2.0, 2, false};
    spec.axis2 = {"u", 0.01, 0.02, 2, false};
    spec.fixed = SystemParams{0.3, 0.0, 0.0, 0.05, 1.0, 0.0};
    spec.n1_max = 3;
    spec.n2_max = 3;

    const auto serial = run_sweep(spec, 1);
    REQUIRE(serial.size() == 4);
    CHECK(serial[0].axis1 == 1.0);
    CHECK(serial[0].axis2 == 0.01);
    CHECK(serial[3].axis1 == 2.0);
    CHECK(serial[3].axis2 == 0.02);
    for (const auto& pt : serial) {
        CHECK(pt.error.empty());
        CHECK(pt.residual < 1e-8);
        CHECK(pt.g2 > 0.0);
    }

    // parallel execution gathers in the same order with identical bits
    const auto parallel = run_sweep(spec, 4);
    REQUIRE(parallel.size() == 4);
    for (size_t i = 0; i < 4; ++i) {
        CHECK(parallel[i].g2 == serial[i].g2);
        CHECK(parallel[i].residual == serial[i].residual);
    }
}

TEST_CASE("sweep records per-point errors and continues") {
    SweepSpec spec;
    spec.axis1 = {"f", 0.0, 0.1, 2, false};  // f = 0 at T = 0 has no g2
    spec.axis2 = {"u", 0.0, 0.01, 2, false};
    spec.fixed = SystemParams{0.3, 1.0, 0.0, 0.0, 1.0, 0.0};
    spec.n1_max = 2;
    spec.n2_max = 2;
    const auto points = run_sweep(spec, 1);
    REQUIRE(points.size() == 4);
    CHECK(points[0].error == "VacuumDenominator");
    CHECK(points[1].error == "VacuumDenominator");
    CHECK(points[2].error.empty());
    CHECK(points[3].error.empty());
}

TEST_CASE("manifest writes config echo and per-point data") {
    const fs::path dir = temp_dir();
    RunManifest m = RunManifest::begin("sweep", {{"delta", "0.29"}, {"j", "10"}});
    m.warnings.push_back("truncation guard: n_th exceeds n_max/10");
    m.point_residuals = {1e-12, 2e-12};
    m.point_errors = {"", "NoSteadyState"};
    m.write((dir / "out.csv.manifest").string());

    const std::string text = slurp(dir / "out.csv.manifest");
    CHECK(text.find("command = sweep") != std::string::npos);
    CHECK(text.find("config.delta = 0.29") != std::string::npos);
    CHECK(text.find("warning.0 = truncation guard") != std::string::npos);
    CHECK(text.find("point.00001.error = NoSteadyState") != std::string::npos);
    CHECK(text.find("timestamp = ") != std::string::npos);
    fs::remove_all(dir);
}

#ifdef PBLOCK_CLI_PATH

namespace {

int run_cli(const std::string& args) {
    const int rc = std::system((std::string(PBLOCK_CLI_PATH) + " " + args +
                                " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(rc);
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

} // namespace

TEST_CASE("cli steady on the fig3 preset emits the population table") {
    const fs::path dir = temp_dir();
    const fs::path out = dir / "steady.txt";
    const int rc = run_cli("steady --config " + std::string(PBLOCK_CONFIG_DIR) +
                           "/fig3.cfg --out " + out.string());
    CHECK(rc == 0);
    const std::string text = slurp(out);
    CHECK(text.find("g2_zero = ") != std::string::npos);
    CHECK(text.find("poisson2 = ") != std::string::npos);
    CHECK(text.find("g2_analytic = ") != std::string::npos);

    // vacuum dominates; two-phonon population sits below the Poisson
    // reference at equal mean
    const Config rec = Config::load(out.string());
    CHECK(rec.get_double("p0") > 0.999);
    CHECK(rec.get_double("p1") > rec.get_double("p2"));
    CHECK(rec.get_double("p2") < rec.get_double("poisson2"));
    CHECK(fs::exists(dir / "steady.txt.manifest"));
    fs::remove_all(dir);
}

TEST_CASE("cli exit codes") {
    const fs::path dir = temp_dir();

    // undriven zero-T config: g2 undefined -> 4
    write_file(dir / "vac.cfg", "delta = 0.3\nj = 2\nu = 0.1\nf = 0\nn1_max = 2\nn2_max = 2\n");
    CHECK(run_cli("steady --config " + (dir / "vac.cfg").string()) == 4);

    // malformed config -> 2
    write_file(dir / "bad.cfg", "delta 0.3\n");
    CHECK(run_cli("steady --config " + (dir / "bad.cfg").string()) == 2);

    // missing config file -> 2
    CHECK(run_cli("steady --config " + (dir / "nope.cfg").string()) == 2);

    // missing --out on a csv command -> 2
    write_file(dir / "t.cfg",
               "delta = 0.2885\nj = 20\nu = 0.00096\nf = 0.01\n"
               "t_min = 0.01\nt_max = 0.1\nt_points = 3\nn1_max = 2\nn2_max = 2\n");
    CHECK(run_cli("tscan --config " + (dir / "t.cfg").string()) == 2);

    // unknown subcommand -> 2
    CHECK(run_cli("frobnicate --config x") == 2);
    fs::remove_all(dir);
}

TEST_CASE("cli sweep reruns are byte-identical and record errors in-row") {
    const fs::path dir = temp_dir();
    write_file(dir / "sweep.cfg",
               "axis1_param = f\naxis1_min = 0\naxis1_max = 0.05\naxis1_points = 2\n"
               "axis2_param = u\naxis2_min = 0\naxis2_max = 0.01\naxis2_points = 2\n"
               "delta = 0.3\nj = 1\nn1_max = 2\nn2_max = 2\n");
    const fs::path out1 = dir / "a.csv";
    const fs::path out2 = dir / "b.csv";
    CHECK(run_cli("sweep --config " + (dir / "sweep.cfg").string() + " --out " +
                  out1.string()) == 0);
    CHECK(run_cli("sweep --config " + (dir / "sweep.cfg").string() + " --out " +
                  out2.string()) == 0);
    const std::string a = slurp(out1);
    CHECK(a == slurp(out2));
    CHECK(a.find("f,u,g2_zero,log10_g2_zero,mean_phonon,residual,status\n") == 0);
    CHECK(a.find("ERR:VacuumDenominator") != std::string::npos);
    CHECK(a.find("\r") == std::string::npos);

    // serial and parallel agree bit for bit
    const fs::path out3 = dir / "c.csv";
    const int rc = std::system(("PBLOCK_WORKERS=3 " + std::string(PBLOCK_CLI_PATH) +
                                " sweep --config " + (dir / "sweep.cfg").string() +
                                " --out " + out3.string() + " > /dev/null 2>&1")
                                   .c_str());
    CHECK(WEXITSTATUS(rc) == 0);
    CHECK(slurp(out3) == a);
    fs::remove_all(dir);
}

TEST_CASE("cli tscan labels regimes") {
    const fs::path dir = temp_dir();
    write_file(dir / "ts.cfg",
               "delta = 0.2885\nj = 20\nu = 0.00096\nf = 0.01\n"
               "n1_max = 3\nn2_max = 3\n"
               "t_min = 0.005\nt_max = 0.2\nt_points = 6\nt_spacing = log\n");
    const fs::path out = dir / "ts.csv";
    CHECK(run_cli("tscan --config " + (dir / "ts.cfg").string() + " --out " +
                  out.string()) == 0);
    const std::string text = slurp(out);
    CHECK(text.find(",quantum,") != std::string::npos);
    CHECK(text.find(",thermal,") != std::string::npos);
    // T = 0 row carries n_th = 0 exactly
    write_file(dir / "t0.cfg",
               "delta = 0.2885\nj = 20\nu = 0.00096\nf = 0.01\nn1_max = 3\nn2_max = 3\n"
               "t_min = 0\nt_max = 0.1\nt_points = 2\nt_spacing = linear\n");
    CHECK(run_cli("tscan --config " + (dir / "t0.cfg").string() + " --out " +
                  (dir / "t0.csv").string()) == 0);
    const std::string t0 = slurp(dir / "t0.csv");
    CHECK(t0.find("0.00000000e+00,0.00000000e+00,") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("cli g2tau rejects a coarse grid") {
    const fs::path dir = temp_dir();
    write_file(dir / "g.cfg",
               "delta = 0.288\nj = 20\nu = 0.00096\nf = 0.01\nn1_max = 2\nn2_max = 2\n"
               "tau_max = 1\ntau_points = 5\n");
    CHECK(run_cli("g2tau --config " + (dir / "g.cfg").string() + " --out " +
                  (dir / "g.csv").string()) == 2);
    fs::remove_all(dir);
}

TEST_CASE("cli optimal and feasibility summaries") {
    const fs::path dir = temp_dir();
    write_file(dir / "opt.cfg", "j = 10\ngamma = 1\n");
    const fs::path out = dir / "opt.txt";
    CHECK(run_cli("optimal --config " + (dir / "opt.cfg").string() + " --out " +
                  out.string()) == 0);
    const Config rec = Config::load(out.string());
    CHECK(std::abs(rec.get_double("u_exact") - 0.00387) / 0.00387 < 0.01);
    CHECK(std::abs(rec.get_double("delta_exact") - 0.2874) / 0.2874 < 0.01);
    CHECK(std::abs(rec.get_double("residual_condition_1")) < 1e-10);

    write_file(dir / "feas.cfg",
               "width_d = 5e-9\nlength_l = 100e-9\ngamma = 10e6\n"
               "temperature = 0.0053\nj_over_gamma = 20\n");
    const fs::path fout = dir / "feas.txt";
    CHECK(run_cli("feasibility --config " + (dir / "feas.cfg").string() + " --out " +
                  fout.string()) == 0);
    const Config feas = Config::load(fout.string());
    CHECK(feas.get_double("frequency_hz") > 3.9e9);
    CHECK(feas.get_double("u_hz") > 380.0);
    CHECK(feas.get_double("t0_k") == doctest::Approx(0.1989).epsilon(0.01));
    // window pi/J for J = 20 gamma = 200 MHz: about 16 ns
    CHECK(feas.get_double("antibunching_window_s") == doctest::Approx(1.5708e-8).epsilon(1e-3));
    // both quality-factor conventions are reported
    CHECK(feas.get_double("q_omega0_over_gamma") ==
          doctest::Approx(2.0 * std::numbers::pi * feas.get_double("q_f0_over_gamma"))
              .epsilon(1e-9));
    fs::remove_all(dir);
}

#endif  // PBLOCK_CLI_PATH
