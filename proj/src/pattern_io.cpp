#include "sweatpp/pattern_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace sweatpp {

namespace {

std::string strip_cr(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == '\n')) s.pop_back();
  return s;
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

double parse_double(const std::string& s, const std::string& path,
                    std::size_t line_no) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error(path + ":" + std::to_string(line_no) +
                             ": cannot parse number '" + s + "'");
  }
}

}  // namespace

PointPattern load_pattern_csv(const std::string& path, const Window& window) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open pattern file " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error(path + ": empty pattern file");
  if (strip_cr(line) != "index,x,y")
    throw std::runtime_error(path + ": expected header 'index,x,y', got '" +
                             strip_cr(line) + "'");
  PointPattern pattern;
  pattern.window = window;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto fields = split_commas(line);
    if (fields.size() != 3)
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected 3 fields, got " +
                               std::to_string(fields.size()));
    pattern.points.push_back({parse_double(fields[1], path, line_no),
                              parse_double(fields[2], path, line_no)});
  }
  validate_pattern(pattern);
  return pattern;
}

void save_pattern_csv(const std::string& path, const PointPattern& pattern) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot write pattern file " + path);
  std::fprintf(f, "index,x,y\n");
  for (std::size_t i = 0; i < pattern.points.size(); ++i)
    std::fprintf(f, "%zu,%.9f,%.9f\n", i + 1, pattern.points[i].x,
                 pattern.points[i].y);
  std::fclose(f);
}

Window load_window_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open window file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": bad window JSON: " + e.what());
  }
  if (!j.contains("width") || !j.contains("height"))
    throw std::runtime_error(path + ": window JSON needs width and height");
  Window w{j["width"].get<double>(), j["height"].get<double>()};
  if (!(w.width > 0.0) || !(w.height > 0.0))
    throw std::runtime_error(path + ": window dimensions must be positive");
  return w;
}

void save_window_json(const std::string& path, const Window& window) {
  nlohmann::json j;
  j["width"] = window.width;
  j["height"] = window.height;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write window file " + path);
  out << j.dump(2) << "\n";
}

void save_table_csv(const std::string& path,
                    const std::vector<std::string>& columns,
                    const std::vector<std::vector<double>>& rows) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot write " + path);
  for (std::size_t c = 0; c < columns.size(); ++c)
    std::fprintf(f, "%s%s", columns[c].c_str(),
                 c + 1 < columns.size() ? "," : "\n");
  for (const auto& row : rows) {
    if (row.size() != columns.size()) {
      std::fclose(f);
      throw std::invalid_argument("CSV row width does not match header");
    }
    for (std::size_t c = 0; c < row.size(); ++c)
      std::fprintf(f, "%.9f%s", row[c], c + 1 < row.size() ? "," : "\n");
  }
  std::fclose(f);
}

std::vector<std::vector<double>> load_table_csv(
    const std::string& path, std::vector<std::string>* columns) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error(path + ": empty CSV file");
  const auto header = split_commas(strip_cr(line));
  if (columns) *columns = header;
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto fields = split_commas(line);
    if (fields.size() != header.size())
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": row width does not match header");
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& fld : fields)
      row.push_back(parse_double(fld, path, line_no));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace sweatpp
