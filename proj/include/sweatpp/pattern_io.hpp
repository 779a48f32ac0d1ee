#pragma once

#include <string>
#include <vector>

#include "sweatpp/geometry.hpp"

namespace sweatpp {

struct FunctionEstimate;

// Pattern CSV format: header `index,x,y`, one row per point in arrival
// order, index starting at 1, coordinates in pixels. Window dimensions live
// in a sidecar JSON {"width": ..., "height": ...} next to the CSV or are
// supplied by the caller.

PointPattern load_pattern_csv(const std::string& path, const Window& window);
void save_pattern_csv(const std::string& path, const PointPattern& pattern);

Window load_window_json(const std::string& path);
void save_window_json(const std::string& path, const Window& window);

// Generic CSV table: one header row, then numeric rows, "%.9f" formatting.
void save_table_csv(const std::string& path,
                    const std::vector<std::string>& columns,
                    const std::vector<std::vector<double>>& rows);
std::vector<std::vector<double>> load_table_csv(
    const std::string& path, std::vector<std::string>* columns = nullptr);

}  // namespace sweatpp
