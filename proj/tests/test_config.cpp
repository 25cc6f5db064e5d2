#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "fovlap/config.hpp"

using namespace fovlap;

TEST_CASE("empty config resolves to the case-study defaults", "[config]") {
  const AppConfig cfg = parse_config_text("");
  CHECK(cfg.formation.h_earth_km == 6371.0);
  CHECK(cfg.formation.h_orbit_km == 500.0);
  CHECK(cfg.formation.arc_spacing_km == 100.0);
  CHECK(cfg.formation.n_cam == 10);
  CHECK(cfg.fov_wx_km == 100.0);
  CHECK(cfg.fov_wy_km == 70.0);
  const auto [wx, wy] = anchor_footprint_dims(cfg.formation.intrinsics, cfg.formation.h_orbit_km);
  CHECK(wx == Catch::Approx(100.0).margin(1e-9));
  CHECK(wy == Catch::Approx(70.0).margin(1e-9));
  CHECK(cfg.ensemble.n_mc == 100);
  CHECK(cfg.ensemble.noise.ape_deg == 2.0);
  CHECK(cfg.ensemble.noise.model == ApeModel::pointing);
  CHECK(cfg.ensemble.criteria.t_threshold == 0.8);
  CHECK(cfg.ensemble.criteria.similarity_mode == SimilarityMode::baseline);
  CHECK(cfg.ensemble.criteria.d_max_km == 200.0);
  CHECK_FALSE(cfg.ensemble.criteria.require_anchor_in_component);
  CHECK_FALSE(cfg.seed_set);
  CHECK(cfg.sweep.axis == SweepAxis::ape);
  CHECK(cfg.sweep.values == std::vector<double>{0.1, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0});
  CHECK(cfg.sweep.q_report == std::vector<int>{10});
}

TEST_CASE("full config round-trips through the ini echo", "[config]") {
  const std::string text = R"(
# formation under test
[formation]
h_earth_km = 6371
h_orbit_km = 550
arc_spacing_km = 120
n_cam = 8
fov_wx_km = 80
fov_wy_km = 60

[noise]
ape_deg = 1.25
ape_model = rotation

[graph]
t_threshold = 0.75
similarity_mode = angular
mu_max_deg = 25
d_max_km = 150
require_anchor_in_component = true

[ensemble]
n_mc = 321
master_seed = 987654321
threads = 3

[sweep]
axis = t
values = 0.5,0.6,0.7,0.8
q = 5..8
)";
  const AppConfig cfg = parse_config_text(text);
  CHECK(cfg.formation.h_orbit_km == 550.0);
  CHECK(cfg.formation.n_cam == 8);
  CHECK(cfg.ensemble.noise.ape_deg == 1.25);
  CHECK(cfg.ensemble.noise.model == ApeModel::rotation);
  CHECK(cfg.ensemble.criteria.similarity_mode == SimilarityMode::angular);
  CHECK(cfg.ensemble.criteria.mu_max_deg == 25.0);
  CHECK(cfg.ensemble.criteria.require_anchor_in_component);
  CHECK(cfg.ensemble.n_mc == 321);
  CHECK(cfg.ensemble.master_seed == 987654321ULL);
  CHECK(cfg.seed_set);
  CHECK(cfg.threads == 3);
  CHECK(cfg.sweep.axis == SweepAxis::t);
  CHECK(cfg.sweep.q_report == std::vector<int>{5, 6, 7, 8});

  const AppConfig again = parse_config_text(to_ini(cfg));
  CHECK(again.formation.h_orbit_km == cfg.formation.h_orbit_km);
  CHECK(again.ensemble.noise.ape_deg == cfg.ensemble.noise.ape_deg);
  CHECK(again.ensemble.noise.model == cfg.ensemble.noise.model);
  CHECK(again.ensemble.criteria.t_threshold == cfg.ensemble.criteria.t_threshold);
  CHECK(again.ensemble.master_seed == cfg.ensemble.master_seed);
  CHECK(again.sweep.values == cfg.sweep.values);
  CHECK(again.sweep.q_report == cfg.sweep.q_report);
  CHECK(again.fov_wx_km == Catch::Approx(cfg.fov_wx_km).margin(1e-9));
}

TEST_CASE("value list and range parsing", "[config]") {
  CHECK(parse_values("0.1,0.5,1.0") == std::vector<double>{0.1, 0.5, 1.0});
  const auto grid = parse_values("0.1:3.0:0.1");
  REQUIRE(grid.size() == 30);
  CHECK(grid.front() == Catch::Approx(0.1));
  CHECK(grid.back() == Catch::Approx(3.0));
  CHECK(parse_values("2") == std::vector<double>{2.0});
  CHECK_THROWS_AS(parse_values(""), ConfigInvalid);
  CHECK_THROWS_AS(parse_values("1:0:0.1"), ConfigInvalid);
  CHECK_THROWS_AS(parse_values("a,b"), ConfigInvalid);

  CHECK(parse_q_list("5..10") == std::vector<int>{5, 6, 7, 8, 9, 10});
  CHECK(parse_q_list("5,7,10") == std::vector<int>{5, 7, 10});
  CHECK(parse_q_list("10") == std::vector<int>{10});
  CHECK_THROWS_AS(parse_q_list("10..5"), ConfigInvalid);
}

TEST_CASE("invalid configs name the offending field", "[config]") {
  auto expect_invalid = [](const std::string& text, const std::string& field) {
    try {
      parse_config_text(text);
      FAIL("expected ConfigInvalid for " + field);
    } catch (const ConfigInvalid& e) {
      CHECK(std::string(e.what()).find(field) != std::string::npos);
    }
  };
  expect_invalid("[graph]\nt_threshold = 1.5\n", "t_threshold");
  expect_invalid("[formation]\nn_cam = 1\n", "n_cam");
  expect_invalid("[formation]\nh_orbit_km = -5\n", "h_orbit_km");
  expect_invalid("[noise]\nape_deg = -1\n", "ape_deg");
  expect_invalid("[ensemble]\nn_mc = 0\n", "n_mc");
  expect_invalid("[sweep]\nq = 0\n", "q");
  expect_invalid("[sweep]\nq = 11\n", "q");
  expect_invalid("[sweep]\nvalues = 2,1\n", "values");
  expect_invalid("[sweep]\naxis = q\nvalues = 2.5\n", "values");
  expect_invalid("[formation]\nfov_wx_km = 40\nfov_wy_km = 70\n", "fov_wy_km");
  expect_invalid("[noise]\nape_model = gaussian\n", "ape_model");
  expect_invalid("[formation]\nwarp = 1\n", "warp");
  expect_invalid("[warp]\nx = 1\n", "warp");
  expect_invalid("[formation]\nphi_x_deg = 10\n", "phi_y_deg");
  expect_invalid("[formation]\nphi_x_deg = 10\nphi_y_deg = 8\nfov_wx_km = 100\n", "mutually exclusive");
}

TEST_CASE("malformed syntax raises ConfigParse with the line number", "[config]") {
  auto expect_parse_error = [](const std::string& text, const std::string& fragment) {
    try {
      parse_config_text(text);
      FAIL("expected ConfigParse");
    } catch (const ConfigParse& e) {
      CHECK(std::string(e.what()).find(fragment) != std::string::npos);
    }
  };
  expect_parse_error("[formation\nn_cam = 4\n", "line 1");
  expect_parse_error("[formation]\nn_cam\n", "line 2");
  expect_parse_error("n_cam = 4\n", "line 1");
}

TEST_CASE("angular FOV keys replace footprint dims", "[config]") {
  const AppConfig cfg = parse_config_text("[formation]\nphi_x_deg = 90\nphi_y_deg = 90\n");
  CHECK(cfg.fov_from_angles);
  CHECK(cfg.formation.intrinsics.phi_x_deg == 90.0);
  // footprint bookkeeping follows the angles at the configured orbit
  CHECK(cfg.fov_wx_km == Catch::Approx(1000.0).margin(1e-6));
  CHECK(cfg.fov_wy_km == Catch::Approx(1000.0).margin(1e-6));
}

TEST_CASE("comments and blank lines are ignored", "[config]") {
  const AppConfig cfg = parse_config_text(
      "\n# leading comment\n[ensemble]\nn_mc = 7   # trailing comment\n; another\n\n");
  CHECK(cfg.ensemble.n_mc == 7);
}

TEST_CASE("load_config reports missing files as IoError", "[config]") {
  CHECK_THROWS_AS(load_config("/nonexistent/path/fovlap.ini"), IoError);
}
