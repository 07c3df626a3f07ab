#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "ibnls/errors.hpp"
#include "ibnls/io.hpp"

using namespace ibnls;
namespace fs = std::filesystem;

namespace {

std::string write_temp(const std::string& content) {
  static int counter = 0;
  const std::string path = (fs::temp_directory_path() / ("ibnls_io_test_" + std::to_string(counter++) + ".cfg")).string();
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("config parsing: values, comments, defaults") {
  const std::string path = write_temp(
      "# run configuration\n"
      "N = 8\n"
      "b = 2.0\n"
      "r_max = 18.0   # truncation\n"
      "n = 320\n"
      "family = ground_state_multiple\n"
      "amplitude = 1.05\n"
      "T = 0.25\n"
      "R = 6.5\n"
      "dt0 = 5e-5\n"
      "radial = false\n");
  const SimConfig config = sim_config_from_file(path);
  CHECK(config.dim == 8);
  CHECK(config.b == 2.0);
  CHECK(config.r_max == 18.0);
  CHECK(config.n == 320);
  CHECK(config.data.family == InitialDataSpec::Family::ground_state_multiple);
  CHECK(config.data.amplitude == 1.05);
  CHECK(config.horizon == 0.25);
  CHECK(config.cutoff_radius == 6.5);
  CHECK(config.dt0 == 5e-5);
  CHECK_FALSE(config.declared_radial);
  CHECK(config.dt_min == 1e-10);  // untouched default
  std::remove(path.c_str());
}

TEST_CASE("config parsing: failures are loud") {
  CHECK_THROWS_AS(sim_config_from_file("/nonexistent/p.cfg"), ConfigError);
  CHECK_THROWS_AS(sim_config_from_file(write_temp("unknown_key = 3\n")), ConfigError);
  CHECK_THROWS_AS(sim_config_from_file(write_temp("N = six\n")), ConfigError);
  CHECK_THROWS_AS(sim_config_from_file(write_temp("just a line\n")), ConfigError);
  CHECK_THROWS_AS(sim_config_from_file(write_temp("family = squares\n")), ConfigError);
}

TEST_CASE("sweep expansion: cartesian product in listed order") {
  SimConfig base;
  const std::vector<SimConfig> grid = expand_sweep(base, {"b=0.8,1.2", "amplitude=2,4"});
  REQUIRE(grid.size() == 4);
  CHECK(grid[0].b == 0.8);
  CHECK(grid[0].data.amplitude == 2.0);
  CHECK(grid[1].b == 0.8);
  CHECK(grid[1].data.amplitude == 4.0);
  CHECK(grid[2].b == 1.2);
  CHECK(grid[2].data.amplitude == 2.0);
  CHECK(grid[3].b == 1.2);
  CHECK(grid[3].data.amplitude == 4.0);
  CHECK(grid[3].dim == base.dim);
  CHECK_THROWS_AS(expand_sweep(base, {"nonsense"}), ConfigError);
  CHECK_THROWS_AS(expand_sweep(base, {"b="}), ConfigError);
}

TEST_CASE("time series CSV has the documented columns") {
  TimeSeries series;
  SeriesRecord rec;
  rec.t = 0.5;
  rec.mass = 1.25;
  series.records.push_back(rec);
  const std::string path = (fs::temp_directory_path() / "ibnls_series.csv").string();
  write_timeseries_csv(path, series);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,mass,energy,kinetic,grad_sq,potential,V_R,rate_localized,dt");
  std::string row;
  std::getline(in, row);
  CHECK(row.substr(0, 8) == "0.5,1.25");
  std::remove(path.c_str());
}
