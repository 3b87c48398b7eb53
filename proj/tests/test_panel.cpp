#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "gevpool/panel.hpp"

using namespace gevpool;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("gevpool_test_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string write(const std::string& name, const std::string& content) const {
    const fs::path p = path / name;
    std::ofstream out(p);
    out << content;
    return p.string();
  }
};

const char* kPanelCsv =
    "year,location_id,maximum,covariate\n"
    "2001,b,11.0,0.1\n"
    "2000,b,10.0,0.0\n"
    "2000,a,20.0,0.0\n"
    "2001,a,21.0,0.1\n"
    "2000,c,30.0,0.0\n"
    "2001,c,31.0,0.1\n";

const char* kCoordsCsv =
    "location_id,x,y\n"
    "a,0.0,0.0\n"
    "b,1.0,0.0\n"
    "c,0.0,1.0\n";

BlockMaximaPanel small_panel() {
  BlockMaximaPanel p;
  p.years = {2000, 2001, 2002};
  p.location_ids = {"a", "b"};
  p.maxima.resize(3, 2);
  p.maxima << 1.0, 2.0, 1.5, 2.5, 1.2, 2.2;
  p.covariate = {0.0, 0.1, 0.2};
  p.coords.resize(2, 2);
  p.coords << 0.0, 0.0, 1.0, 0.0;
  p.loi = 0;
  return p;
}

}  // namespace

TEST_CASE("panel csv parses rows with whitespace and blank lines") {
  TempDir tmp;
  const auto path = tmp.write("p.csv",
                              "year,location_id,maximum,covariate\n"
                              " 2000 , a , 1.5 , 0.25 \n"
                              "\n"
                              "2001,a,2.5,0.5\n");
  const auto rows = read_panel_csv(path);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].year == 2000);
  CHECK(rows[0].location_id == "a");
  CHECK(rows[0].maximum == doctest::Approx(1.5));
  CHECK(rows[0].covariate == doctest::Approx(0.25));
  CHECK(rows[1].year == 2001);
}

TEST_CASE("panel csv rejects malformed input") {
  TempDir tmp;
  CHECK_THROWS_AS(read_panel_csv(tmp.write("h.csv", "year,id,maximum,covariate\n2000,a,1,0\n")),
                  std::invalid_argument);
  CHECK_THROWS_AS(read_panel_csv(tmp.write("f.csv",
                                           "year,location_id,maximum,covariate\n2000,a,1\n")),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      read_panel_csv(tmp.write("y.csv", "year,location_id,maximum,covariate\nxx,a,1,0\n")),
      std::invalid_argument);
  CHECK_THROWS_AS(
      read_panel_csv(tmp.write("m.csv", "year,location_id,maximum,covariate\n2000,a,1.2.3,0\n")),
      std::invalid_argument);
  CHECK_THROWS_AS(
      read_panel_csv(tmp.write("e.csv", "year,location_id,maximum,covariate\n2000,,1,0\n")),
      std::invalid_argument);
  CHECK_THROWS_AS(read_panel_csv(tmp.write("empty.csv", "year,location_id,maximum,covariate\n")),
                  std::invalid_argument);
  CHECK_THROWS_AS(read_panel_csv((tmp.path / "missing.csv").string()), std::invalid_argument);
}

TEST_CASE("load_panel sorts years and location ids") {
  TempDir tmp;
  const auto panel =
      load_panel(tmp.write("p.csv", kPanelCsv), tmp.write("c.csv", kCoordsCsv), "b");
  CHECK(panel.n_years() == 2);
  CHECK(panel.n_locations() == 3);
  CHECK(panel.years == std::vector<int>{2000, 2001});
  CHECK(panel.location_ids == std::vector<std::string>{"a", "b", "c"});
  CHECK(panel.loi == 1);
  CHECK(panel.maxima(0, 0) == doctest::Approx(20.0));
  CHECK(panel.maxima(1, 1) == doctest::Approx(11.0));
  CHECK(panel.maxima(0, 2) == doctest::Approx(30.0));
  CHECK(panel.covariate[1] == doctest::Approx(0.1));
  CHECK(panel.coords(2, 1) == doctest::Approx(1.0));
  const auto col = panel.column(1);
  CHECK(col == std::vector<double>{10.0, 11.0});
  CHECK_THROWS_AS(panel.column(3), std::invalid_argument);
}

TEST_CASE("build_panel rejects inconsistent input") {
  TempDir tmp;
  const auto coords = tmp.write("c.csv", kCoordsCsv);

  // covariate differs within a year
  const auto bad_cov = tmp.write("bc.csv",
                                 "year,location_id,maximum,covariate\n"
                                 "2000,a,1,0.0\n2000,b,2,0.5\n");
  CHECK_THROWS_WITH_AS(load_panel(bad_cov, coords, "a"),
                       "panel: covariate disagrees within year 2000", std::invalid_argument);

  // duplicate (year, location)
  const auto dup = tmp.write("dup.csv",
                             "year,location_id,maximum,covariate\n"
                             "2000,a,1,0.0\n2000,a,2,0.0\n");
  CHECK_THROWS_AS(load_panel(dup, coords, "a"), std::invalid_argument);

  // missing cell: location b has no year 2001
  const auto hole = tmp.write("hole.csv",
                              "year,location_id,maximum,covariate\n"
                              "2000,a,1,0.0\n2000,b,2,0.0\n2001,a,3,0.1\n");
  CHECK_THROWS_WITH_AS(load_panel(hole, coords, "a"),
                       "panel: missing entry for year 2001, location b", std::invalid_argument);

  // unknown location of interest
  const auto ok = tmp.write("ok.csv",
                            "year,location_id,maximum,covariate\n"
                            "2000,a,1,0.0\n2000,b,2,0.0\n");
  CHECK_THROWS_AS(load_panel(ok, coords, "zzz"), std::invalid_argument);

  // no coordinates for one location
  const auto short_coords = tmp.write("sc.csv", "location_id,x,y\na,0,0\n");
  CHECK_THROWS_AS(load_panel(ok, short_coords, "a"), std::invalid_argument);

  // duplicate coordinates rows for one location
  const auto dup_coords = tmp.write("dc.csv", "location_id,x,y\na,0,0\nb,1,0\na,2,2\n");
  CHECK_THROWS_AS(load_panel(ok, dup_coords, "a"), std::invalid_argument);

  // coordinates for locations outside the panel are ignored
  const auto extra_coords = tmp.write("ec.csv", "location_id,x,y\na,0,0\nb,1,0\nzz,9,9\n");
  CHECK_NOTHROW(load_panel(ok, extra_coords, "a"));
}

TEST_CASE("validate_panel catches structural violations") {
  CHECK_NOTHROW(validate_panel(small_panel()));

  auto p = small_panel();
  p.years = {2000, 2000, 2001};
  CHECK_THROWS_WITH_AS(validate_panel(p), "panel: years must be strictly increasing",
                       std::invalid_argument);

  p = small_panel();
  p.location_ids = {"b", "a"};
  CHECK_THROWS_AS(validate_panel(p), std::invalid_argument);

  p = small_panel();
  p.maxima(1, 1) = std::nan("");
  CHECK_THROWS_AS(validate_panel(p), std::invalid_argument);

  p = small_panel();
  p.covariate[2] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(validate_panel(p), std::invalid_argument);

  p = small_panel();
  p.coords.row(1) = p.coords.row(0);
  CHECK_THROWS_AS(validate_panel(p), std::invalid_argument);

  p = small_panel();
  p.loi = 5;
  CHECK_THROWS_AS(validate_panel(p), std::invalid_argument);

  p = small_panel();
  p.covariate.pop_back();
  CHECK_THROWS_AS(validate_panel(p), std::invalid_argument);

  p = small_panel();
  p.coords.resize(3, 2);
  CHECK_THROWS_AS(validate_panel(p), std::invalid_argument);
}

TEST_CASE("validate_subset") {
  const auto p = small_panel();
  CHECK_NOTHROW(validate_subset(p, {0, 1}));
  CHECK_NOTHROW(validate_subset(p, {1}));
  CHECK_THROWS_AS(validate_subset(p, {}), std::invalid_argument);
  CHECK_THROWS_AS(validate_subset(p, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(validate_subset(p, {0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(validate_subset(p, {-1}), std::invalid_argument);
}
