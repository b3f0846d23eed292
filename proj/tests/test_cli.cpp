#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gscr/config.hpp"
#include "gscr/csv.hpp"
#include "gscr/experiments.hpp"
#include "gscr/parallel.hpp"
#include "gscr/svg.hpp"

using namespace gscr;

TEST_CASE("config parsing: sections, lists, defaults, errors") {
    std::istringstream text(R"(# experiment setup
[noise]
alpha = 1.2 1.8
rho = 0.2 0.8
gamma_g = 1.0
gamma_s = 1.0

[experiment]
gsnr_db = -4, 0, 4
modulation = qpsk

[pla]
k_main_s2 = 12
k_tail_s2 = 24

[shaping]
i_max = 120
eps_stop = 2e-4
seed = 7

[output]
dir = build/test_out
svg = false
)");
    const ExperimentConfig cfg = parse_config(text);
    REQUIRE(cfg.noise_configs.size() == 2);
    CHECK(cfg.noise_configs[0].alpha == 1.2);
    CHECK(cfg.noise_configs[1].rho == 0.8);
    REQUIRE(cfg.gsnr_grid_db.size() == 3);
    CHECK(cfg.gsnr_grid_db[1] == 0.0);
    CHECK(cfg.layout == "qpsk");
    CHECK(cfg.pla_s2.k_main == 12);
    CHECK(cfg.pla_s2.k_tail == 24);
    CHECK(cfg.shaping_i_max == 120);
    CHECK(cfg.seed == 7);
    CHECK(cfg.output_dir == "build/test_out");
    CHECK(!cfg.emit_svg);

    std::istringstream bad_key("[noise]\nalfa = 1.0\n");
    CHECK_THROWS_AS(parse_config(bad_key), std::invalid_argument);
    std::istringstream bad_pair("[noise]\nalpha = 1.2 1.8\nrho = 0.2\n");
    CHECK_THROWS_AS(parse_config(bad_pair), std::invalid_argument);
    std::istringstream bad_line("[noise]\nalpha 1.2\n");
    CHECK_THROWS_AS(parse_config(bad_line), std::invalid_argument);
}

TEST_CASE("filter block parses into a validated FilterSpec") {
    std::istringstream text(R"([filter]
coeffs = 0.25 0.5 0.25
f_c = 100
f_s = 1024
passband_b = 256
)");
    const ExperimentConfig cfg = parse_config(text);
    REQUIRE(cfg.filter.has_value());
    CHECK(cfg.filter->coeffs.size() == 3);
    CHECK(cfg.filter->f_c == 100);
    CHECK(cfg.filter->f_s == 1024);
    CHECK(cfg.filter->passband_B == 256.0);
    // round-trips into the baseband transform
    const NoiseParams bb = passband_to_baseband(cfg.noise_configs[0], *cfg.filter);
    CHECK(bb.gamma_g > 0.0);

    std::istringstream bad(R"([filter]
coeffs = 1.0
f_c = 900
f_s = 1024
passband_b = 256
)");
    CHECK_THROWS_AS(parse_config(bad), std::invalid_argument);  // f_c >= f_s/2
}

TEST_CASE("the shipped example config loads cleanly") {
    const ExperimentConfig cfg = load_config("data/configs/default.cfg");
    CHECK(cfg.noise_configs.size() == 2);
    CHECK(cfg.gsnr_grid_db.size() == 16);
    CHECK(cfg.pla_s2.k_main == 15);
    CHECK(cfg.pla_s3.k_tail == 40);
    CHECK(cfg.emit_svg);
}

TEST_CASE("default config matches the experiment setup") {
    const ExperimentConfig cfg;
    REQUIRE(cfg.noise_configs.size() == 2);
    CHECK(cfg.noise_configs[0].alpha == 1.2);
    CHECK(cfg.noise_configs[0].rho == 0.2);
    CHECK(cfg.noise_configs[1].alpha == 1.8);
    CHECK(cfg.noise_configs[1].rho == 0.8);
    CHECK(cfg.modulation_order() == 16);
}

TEST_CASE("parallel_for covers every index exactly once") {
    std::vector<int> hits(503, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
    for (int h : hits) CHECK(h == 1);
    // exceptions propagate
    CHECK_THROWS_AS(
        parallel_for(8, 3, [](std::size_t i) {
            if (i == 5) throw std::runtime_error("boom");
        }),
        std::runtime_error);
}

TEST_CASE("csv writer is schema stable and byte deterministic") {
    namespace fs = std::filesystem;
    fs::create_directories("build/test_out");
    auto write_once = [](const std::string& path) {
        CsvWriter csv(path, {"a", "b"});
        csv.row({1.0 / 3.0, 2.5e-13});
        csv.row({-17.25, 3.14159265358979});
    };
    write_once("build/test_out/csv_a.csv");
    write_once("build/test_out/csv_b.csv");
    std::ifstream a("build/test_out/csv_a.csv"), b("build/test_out/csv_b.csv");
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
    CHECK(sa.str().rfind("a,b\n", 0) == 0);
    CHECK(sa.str().find("3.33333333333e-01") != std::string::npos);
}

TEST_CASE("bounds sweep emits sandwich-consistent rows and reruns identically") {
    ExperimentConfig cfg;
    cfg.noise_configs = {{1.2, 1.0, 1.0, 0.2}};
    cfg.gsnr_grid_db = {-2.0, 6.0};
    cfg.output_dir = "build/test_out/sweep1";
    const auto files = run_bounds_sweep(cfg, 2);
    REQUIRE(files.size() == 1);

    std::ifstream in(files[0]);
    std::string header;
    std::getline(in, header);
    CHECK(header ==
          "alpha,rho,gamma_g,gamma_s,ds_norm,i1,s2_lo,s2_up,s3_lo,s3_up,z_lo,z_up,z_oracle,"
          "branch_tag");
    int rows = 0;
    std::string line;
    while (std::getline(in, line)) {
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream is(line);
        double alpha, rho, gg, gs, d, i1, s2l, s2u, s3l, s3u, zl, zu, zo, tag;
        REQUIRE((is >> alpha >> rho >> gg >> gs >> d >> i1 >> s2l >> s2u >> s3l >> s3u >> zl >>
                 zu >> zo >> tag));
        CHECK(s2l <= s2u);
        CHECK(s3l <= s3u);
        CHECK(zl <= zo * (1 + 1e-9));
        CHECK(zo <= zu * (1 + 1e-9));
        ++rows;
    }
    CHECK(rows == 2);

    cfg.output_dir = "build/test_out/sweep2";
    const auto files2 = run_bounds_sweep(cfg, 1);  // different thread count, same bytes
    std::ifstream f1(files[0]), f2(files2[0]);
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    CHECK(s1.str() == s2.str());
}

TEST_CASE("svg writer emits well-formed scatter markup") {
    const auto qam = make_square_qam(16, 8.0);
    write_constellation_svg("build/test_out/c.svg", qam, 8.0);
    std::ifstream in("build/test_out/c.svg");
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string svg = ss.str();
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);  // budget circle
    CHECK(std::count(svg.begin(), svg.end(), '\n') >= 19);     // 16 dots + frame
}

TEST_CASE("custom layout file round trips through the experiment config") {
    namespace fs = std::filesystem;
    fs::create_directories("build/test_out");
    {
        std::ofstream out("build/test_out/layout.txt");
        out << "0 1.0 0.0 0.25\n1 -1.0 0.0 0.25\n2 0.0 1.0 0.25\n3 0.0 -1.0 0.25\n";
    }
    ExperimentConfig cfg;
    cfg.layout = "custom-file";
    cfg.custom_layout_path = "build/test_out/layout.txt";
    const Constellation c = initial_layout(cfg, 6.0);
    REQUIRE(c.order() == 4);
    CHECK(c.avg_power() == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("fixture regeneration matches the committed table byte for byte") {
    const std::string tmp = "build/test_out/s_integrals_regen.txt";
    regenerate_fixtures(tmp);
    std::ifstream a("data/fixtures/s_integrals.txt", std::ios::binary);
    std::ifstream b(tmp, std::ios::binary);
    REQUIRE(a.good());
    REQUIRE(b.good());
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
}
