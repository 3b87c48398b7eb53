#include "gevpool/panel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gevpool {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double parse_double(const std::string& s, const std::string& what, int line_no) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("csv line " + std::to_string(line_no) + ": cannot parse " +
                                what + " value '" + s + "'");
  }
}

int parse_int(const std::string& s, const std::string& what, int line_no) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("csv line " + std::to_string(line_no) + ": cannot parse " +
                                what + " value '" + s + "'");
  }
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

void check_header(const std::vector<std::string>& fields,
                  const std::vector<std::string>& expected, const std::string& path) {
  if (fields != expected) {
    std::string want;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) want += ",";
      want += expected[i];
    }
    throw std::invalid_argument("file " + path + ": expected header '" + want + "'");
  }
}

}  // namespace

std::vector<double> BlockMaximaPanel::column(int d) const {
  if (d < 0 || d >= n_locations()) {
    throw std::invalid_argument("panel column index out of range");
  }
  std::vector<double> out(static_cast<std::size_t>(n_years()));
  for (int t = 0; t < n_years(); ++t) out[static_cast<std::size_t>(t)] = maxima(t, d);
  return out;
}

void validate_panel(const BlockMaximaPanel& panel) {
  const int n = panel.n_years();
  const int d = panel.n_locations();
  if (n == 0) throw std::invalid_argument("panel: no years");
  if (d == 0) throw std::invalid_argument("panel: no locations");
  if (panel.maxima.rows() != n || panel.maxima.cols() != d) {
    throw std::invalid_argument("panel: maxima matrix shape does not match years/locations");
  }
  if (static_cast<int>(panel.covariate.size()) != n) {
    throw std::invalid_argument("panel: covariate length does not match number of years");
  }
  if (panel.coords.rows() != d || panel.coords.cols() != 2) {
    throw std::invalid_argument("panel: coords shape does not match number of locations");
  }
  if (panel.loi < 0 || panel.loi >= d) {
    throw std::invalid_argument("panel: location of interest index out of range");
  }
  for (int t = 1; t < n; ++t) {
    if (panel.years[t] <= panel.years[t - 1]) {
      throw std::invalid_argument("panel: years must be strictly increasing");
    }
  }
  for (int j = 1; j < d; ++j) {
    if (!(panel.location_ids[j - 1] < panel.location_ids[j])) {
      throw std::invalid_argument("panel: location ids must be sorted and distinct");
    }
  }
  for (int t = 0; t < n; ++t) {
    if (!std::isfinite(panel.covariate[t])) {
      throw std::invalid_argument("panel: covariate for year " +
                                  std::to_string(panel.years[t]) + " is not finite");
    }
    for (int j = 0; j < d; ++j) {
      if (!std::isfinite(panel.maxima(t, j))) {
        throw std::invalid_argument("panel: maximum for year " +
                                    std::to_string(panel.years[t]) + ", location " +
                                    panel.location_ids[j] + " is not finite");
      }
    }
  }
  for (int j = 0; j < d; ++j) {
    if (!std::isfinite(panel.coords(j, 0)) || !std::isfinite(panel.coords(j, 1))) {
      throw std::invalid_argument("panel: coordinates for location " + panel.location_ids[j] +
                                  " are not finite");
    }
    for (int k = j + 1; k < d; ++k) {
      if (panel.coords(j, 0) == panel.coords(k, 0) && panel.coords(j, 1) == panel.coords(k, 1)) {
        throw std::invalid_argument("panel: locations " + panel.location_ids[j] + " and " +
                                    panel.location_ids[k] + " share the same coordinates");
      }
    }
  }
}

void validate_subset(const BlockMaximaPanel& panel, const std::vector<int>& subset) {
  if (subset.empty()) throw std::invalid_argument("subset: must not be empty");
  std::set<int> seen;
  for (int idx : subset) {
    if (idx < 0 || idx >= panel.n_locations()) {
      throw std::invalid_argument("subset: index " + std::to_string(idx) + " out of range");
    }
    if (!seen.insert(idx).second) {
      throw std::invalid_argument("subset: duplicate index " + std::to_string(idx));
    }
  }
}

std::vector<PanelRow> read_panel_csv(const std::string& path) {
  const auto lines = read_lines(path);
  if (lines.empty()) throw std::invalid_argument("file " + path + ": empty");
  check_header(split_csv_line(lines[0]), {"year", "location_id", "maximum", "covariate"}, path);
  std::vector<PanelRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    const auto fields = split_csv_line(lines[i]);
    const int line_no = static_cast<int>(i) + 1;
    if (fields.size() != 4) {
      throw std::invalid_argument("csv line " + std::to_string(line_no) +
                                  ": expected 4 fields, got " + std::to_string(fields.size()));
    }
    PanelRow row;
    row.year = parse_int(fields[0], "year", line_no);
    row.location_id = fields[1];
    if (row.location_id.empty()) {
      throw std::invalid_argument("csv line " + std::to_string(line_no) + ": empty location_id");
    }
    row.maximum = parse_double(fields[2], "maximum", line_no);
    row.covariate = parse_double(fields[3], "covariate", line_no);
    rows.push_back(row);
  }
  if (rows.empty()) throw std::invalid_argument("file " + path + ": no data rows");
  return rows;
}

std::vector<CoordsRow> read_coords_csv(const std::string& path) {
  const auto lines = read_lines(path);
  if (lines.empty()) throw std::invalid_argument("file " + path + ": empty");
  check_header(split_csv_line(lines[0]), {"location_id", "x", "y"}, path);
  std::vector<CoordsRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    const auto fields = split_csv_line(lines[i]);
    const int line_no = static_cast<int>(i) + 1;
    if (fields.size() != 3) {
      throw std::invalid_argument("csv line " + std::to_string(line_no) +
                                  ": expected 3 fields, got " + std::to_string(fields.size()));
    }
    CoordsRow row;
    row.location_id = fields[0];
    if (row.location_id.empty()) {
      throw std::invalid_argument("csv line " + std::to_string(line_no) + ": empty location_id");
    }
    row.x = parse_double(fields[1], "x", line_no);
    row.y = parse_double(fields[2], "y", line_no);
    rows.push_back(row);
  }
  return rows;
}

BlockMaximaPanel build_panel(const std::vector<PanelRow>& rows,
                             const std::vector<CoordsRow>& coords,
                             const std::string& loi_id) {
  std::set<int> year_set;
  std::set<std::string> id_set;
  for (const auto& r : rows) {
    year_set.insert(r.year);
    id_set.insert(r.location_id);
  }
  BlockMaximaPanel panel;
  panel.years.assign(year_set.begin(), year_set.end());
  panel.location_ids.assign(id_set.begin(), id_set.end());
  const int n = panel.n_years();
  const int d = panel.n_locations();

  std::map<int, int> year_index;
  for (int t = 0; t < n; ++t) year_index[panel.years[t]] = t;
  std::map<std::string, int> id_index;
  for (int j = 0; j < d; ++j) id_index[panel.location_ids[j]] = j;

  panel.maxima.resize(n, d);
  panel.covariate.assign(static_cast<std::size_t>(n),
                         std::numeric_limits<double>::quiet_NaN());
  Eigen::MatrixXi seen = Eigen::MatrixXi::Zero(n, d);
  for (const auto& r : rows) {
    const int t = year_index[r.year];
    const int j = id_index[r.location_id];
    if (seen(t, j)) {
      throw std::invalid_argument("panel: duplicate entry for year " + std::to_string(r.year) +
                                  ", location " + r.location_id);
    }
    seen(t, j) = 1;
    panel.maxima(t, j) = r.maximum;
    if (std::isnan(panel.covariate[static_cast<std::size_t>(t)])) {
      panel.covariate[static_cast<std::size_t>(t)] = r.covariate;
    } else if (panel.covariate[static_cast<std::size_t>(t)] != r.covariate) {
      throw std::invalid_argument("panel: covariate disagrees within year " +
                                  std::to_string(r.year));
    }
  }
  for (int t = 0; t < n; ++t) {
    for (int j = 0; j < d; ++j) {
      if (!seen(t, j)) {
        throw std::invalid_argument("panel: missing entry for year " +
                                    std::to_string(panel.years[t]) + ", location " +
                                    panel.location_ids[j]);
      }
    }
  }

  panel.coords.resize(d, 2);
  std::vector<bool> has_coords(static_cast<std::size_t>(d), false);
  for (const auto& c : coords) {
    const auto it = id_index.find(c.location_id);
    if (it == id_index.end()) continue;  // coordinates for unknown locations are ignored
    if (has_coords[static_cast<std::size_t>(it->second)]) {
      throw std::invalid_argument("coords: duplicate entry for location " + c.location_id);
    }
    has_coords[static_cast<std::size_t>(it->second)] = true;
    panel.coords(it->second, 0) = c.x;
    panel.coords(it->second, 1) = c.y;
  }
  for (int j = 0; j < d; ++j) {
    if (!has_coords[static_cast<std::size_t>(j)]) {
      throw std::invalid_argument("coords: no coordinates for location " + panel.location_ids[j]);
    }
  }

  const auto it = id_index.find(loi_id);
  if (it == id_index.end()) {
    throw std::invalid_argument("location of interest '" + loi_id + "' not present in panel");
  }
  panel.loi = it->second;

  validate_panel(panel);
  return panel;
}

BlockMaximaPanel load_panel(const std::string& panel_path,
                            const std::string& coords_path,
                            const std::string& loi_id) {
  return build_panel(read_panel_csv(panel_path), read_coords_csv(coords_path), loi_id);
}

}  // namespace gevpool
