#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace selrelax::cli {

/// One rendered output value. All floating-point numbers go through %.12e so
/// CSV and JSON carry byte-identical tokens and reruns are reproducible.
class Value {
public:
  static Value number(double v);
  static Value integer(long long v);
  static Value boolean(bool v);
  static Value text(std::string v);

  const std::string& csv() const { return csv_; }
  const std::string& json() const { return json_; }

private:
  std::string csv_, json_;
};

std::string format_number(double v);  // %.12e

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;
};

struct Report {
  std::vector<std::pair<std::string, Value>> scalars;
  std::vector<Table> tables;

  void add(const std::string& key, Value v) { scalars.emplace_back(key, std::move(v)); }
};

/// Header row + one row per scalar-set/table section, sections separated by a
/// blank line.
std::string render_csv(const Report& r);

/// Single object; tables become nested objects of column arrays.
std::string render_json(const Report& r);

void write_output(const std::string& content, const std::string& path);  // path "-" = stdout

}  // namespace selrelax::cli
