#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace gevpool {

// Rectangular panel of block maxima: one row per year, one column per location.
// Location columns are ordered lexicographically by id. The covariate is shared
// by all locations within a year.
struct BlockMaximaPanel {
  std::vector<int> years;
  std::vector<std::string> location_ids;
  Eigen::MatrixXd maxima;      // n_years x n_locations
  std::vector<double> covariate;
  Eigen::MatrixXd coords;      // n_locations x 2
  int loi = 0;

  int n_years() const { return static_cast<int>(years.size()); }
  int n_locations() const { return static_cast<int>(location_ids.size()); }

  std::vector<double> column(int d) const;
};

// Throws std::invalid_argument with a description of the first violated rule.
void validate_panel(const BlockMaximaPanel& panel);

// Throws when A is empty, has duplicates, or indexes outside the panel.
void validate_subset(const BlockMaximaPanel& panel, const std::vector<int>& subset);

struct PanelRow {
  int year = 0;
  std::string location_id;
  double maximum = 0.0;
  double covariate = 0.0;
};

struct CoordsRow {
  std::string location_id;
  double x = 0.0;
  double y = 0.0;
};

// CSV readers; expect a header line naming exactly the documented columns.
std::vector<PanelRow> read_panel_csv(const std::string& path);
std::vector<CoordsRow> read_coords_csv(const std::string& path);

// Assembles and validates a panel from parsed rows. loi_id must be one of the
// location ids present in the panel rows.
BlockMaximaPanel build_panel(const std::vector<PanelRow>& rows,
                             const std::vector<CoordsRow>& coords,
                             const std::string& loi_id);

BlockMaximaPanel load_panel(const std::string& panel_path,
                            const std::string& coords_path,
                            const std::string& loi_id);

}  // namespace gevpool
