#include "blmhd/commands.hpp"
#include "blmhd/config.hpp"
#include "blmhd/output.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>

using namespace blmhd;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("blmhd_test_cli_" + name);
    fs::remove_all(p);
    return p;
}

std::string error_of(const std::string& text) {
    try {
        parse_config(text, "t.ini");
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("config defaults and overrides") {
    const RunConfig c = parse_config("[grid]\nnx = 16\nny = 32 # comment\n[physics]\neps = 0.2\n");
    CHECK(c.grid.nx == 16);
    CHECK(c.grid.ny == 32);
    CHECK(c.grid.y_max == 30.0);
    CHECK(c.solver.physics.eps == 0.2);
    CHECK(c.solver.physics.mu == 1.0);
    CHECK(c.experiment.ladder.size() == 4);
    CHECK(c.experiment.data == "smooth");
    CHECK(parse_alpha("tx").t_count == 1);
    CHECK(parse_alpha("tx").x_count == 1);
    CHECK_THROWS_AS(parse_alpha("ty"), ConfigError);
}

TEST_CASE("config errors name the key and the line") {
    const std::string eps = error_of("[grid]\nnx = 16\nny = 32\n[physics]\neps = -1\n");
    CHECK(eps.find("physics.eps") != std::string::npos);
    CHECK(eps.find("line 5") != std::string::npos);

    const std::string dup = error_of("[grid]\nnx = 16\nnx = 32\nny = 8\n");
    CHECK(dup.find("duplicate key 'grid.nx' on lines 2 and 3") != std::string::npos);

    CHECK(error_of("[grid]\nnx = 16\nny = 32\nfoo = 1\n").find("t.ini:4: unknown key 'grid.foo'") != std::string::npos);
    CHECK(error_of("[nope]\n").find("unknown section") != std::string::npos);
    CHECK(error_of("[grid]\nnx = 16\n").find("grid.ny is required") != std::string::npos);
    CHECK(error_of("[grid]\nnx = 4\nny = 32\n").find("grid.nx out of range") != std::string::npos);
    CHECK(error_of("[grid]\nnx = 16\nny = 32\n[experiment]\nladder = 0.1, 0.2\n").find("strictly decreasing") !=
          std::string::npos);
    CHECK(error_of("[grid]\nnx = sixteen\nny = 32\n").find("expected an integer") != std::string::npos);
}

TEST_CASE("config digest") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    const RunConfig a = parse_config("[grid]\nnx = 16\nny = 32\n");
    const RunConfig b = parse_config("# reordered\n[grid]\nny = 32\n\nnx = 16\n");
    const RunConfig c = parse_config("[grid]\nnx = 16\nny = 64\n");
    CHECK(config_digest(a) == config_digest(b));
    CHECK(config_digest(a) != config_digest(c));
    CHECK(config_digest(a).size() == 64);
}

TEST_CASE("CSV writing and parsing") {
    CHECK(to_csv(CsvTable{{"a", "b"}, {}}) == "a,b\r\n");
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");

    const CsvTable t{{"name", "value"}, {{"x,y", "1"}, {"line\nbreak", "2"}, {"q\"uote", "3"}}};
    const CsvTable back = parse_csv(to_csv(t));
    CHECK(back.header == t.header);
    CHECK(back.rows == t.rows);
    CHECK(back.column("value") == std::vector<double>{1, 2, 3});
    CHECK_THROWS(back.column("missing"));

    const double v = 0.1 + 0.2;
    CHECK(std::stod(format_double(v)) == v);
    CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
    const auto n = numeric_table({"t", "x"}, {{0.5, v}});
    CHECK(to_csv(n) == to_csv(numeric_table({"t", "x"}, {{0.5, v}})));
}

TEST_CASE("snapshot round trip") {
    const auto g = testing::grid(8, 16, 12.0, 1.0);
    const State s = make_state(Field::from_function(g, [](double x, double y) { return 0.01 * std::sin(x) * std::exp(-y); }),
                               background(g), Field::from_function(g, [](double x, double) { return 0.1 * std::cos(x); }),
                               Physics{}, 0.375);
    const std::string bytes = encode_snapshot(s);
    CHECK(bytes.substr(0, 6) == "BLMHD1");
    const Snapshot d = decode_snapshot(bytes);
    CHECK(d.nx == 8);
    CHECK(d.ny == 16);
    CHECK(d.time == 0.375);
    REQUIRE(d.rho.size() == s.rho.size());
    bool same = true;
    for (std::size_t k = 0; k < s.rho.size(); ++k)
        same = same && d.rho[k] == s.rho[k] && d.u[k] == s.u[k] && d.h[k] == s.h[k] && d.psi[k] == s.psi[k];
    CHECK(same);
    CHECK_THROWS(decode_snapshot("XXXXXX" + bytes.substr(6)));
    CHECK_THROWS(decode_snapshot(bytes.substr(0, bytes.size() - 8)));
}

TEST_CASE("simulate the outer state end to end") {
    const RunConfig cfg = load_config(fs::path(BLMHD_TEST_DATA) / "equilibrium.ini");
    const fs::path out = scratch("equilibrium");
    const CommandResult r = run_command("simulate", cfg, out);
    CHECK(r.exit_code == 0);
    CHECK(r.manifest.passed());
    CHECK(r.manifest.config_digest == config_digest(cfg));
    CHECK(fs::exists(out / "simulate.csv"));
    CHECK(fs::exists(out / "manifest.json"));
    const CsvTable t = read_csv(out / "simulate.csv");
    const auto e = t.column("E");
    REQUIRE(e.size() == 5);
    for (double v : e) CHECK(v == doctest::Approx(e.front()).epsilon(1e-10));
    const Json summary = Json::parse(read_text(out / "summary.json"));
    CHECK(summary["passed"] == true);
    CHECK(summary["verb"] == "simulate");
    CHECK_THROWS_AS(run_command("nope", cfg, out), std::invalid_argument);
}

TEST_CASE("a single-rung sweep reports no rates") {
    const RunConfig cfg = load_config(fs::path(BLMHD_TEST_DATA) / "single_rung.ini");
    const CommandResult r = run_command("sweep", cfg, scratch("single"));
    CHECK(r.exit_code == 0);
    CHECK(r.summary["result"]["rates"] == "not computed");
}

TEST_CASE("bad config file") {
    CHECK_THROWS_AS(load_config(fs::path(BLMHD_TEST_DATA) / "bad_eps.ini"), ConfigError);
    CHECK_THROWS_AS(load_config(fs::path(BLMHD_TEST_DATA) / "missing.ini"), ConfigError);
}
