#include "report.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace selrelax::cli {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

Value Value::number(double v) {
  Value out;
  out.csv_ = format_number(v);
  out.json_ = out.csv_;
  return out;
}

Value Value::integer(long long v) {
  Value out;
  out.csv_ = std::to_string(v);
  out.json_ = out.csv_;
  return out;
}

Value Value::boolean(bool v) {
  Value out;
  out.csv_ = v ? "true" : "false";
  out.json_ = out.csv_;
  return out;
}

Value Value::text(std::string v) {
  Value out;
  out.csv_ = v;
  std::string esc = "\"";
  for (char c : v) {
    if (c == '"' || c == '\\') esc += '\\';
    esc += c;
  }
  esc += '"';
  out.json_ = esc;
  return out;
}

std::string render_csv(const Report& r) {
  std::string out;
  if (!r.scalars.empty()) {
    for (std::size_t i = 0; i < r.scalars.size(); ++i) {
      if (i) out += ',';
      out += r.scalars[i].first;
    }
    out += '\n';
    for (std::size_t i = 0; i < r.scalars.size(); ++i) {
      if (i) out += ',';
      out += r.scalars[i].second.csv();
    }
    out += '\n';
  }
  for (const auto& t : r.tables) {
    if (!out.empty()) out += '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      if (i) out += ',';
      out += t.columns[i];
    }
    out += '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += row[i].csv();
      }
      out += '\n';
    }
  }
  return out;
}

std::string render_json(const Report& r) {
  std::string out = "{\n";
  bool first = true;
  for (const auto& [k, v] : r.scalars) {
    if (!first) out += ",\n";
    first = false;
    out += "  \"" + k + "\": " + v.json();
  }
  for (const auto& t : r.tables) {
    if (!first) out += ",\n";
    first = false;
    out += "  \"" + t.name + "\": {\n";
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      out += "    \"" + t.columns[c] + "\": [";
      for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (i) out += ", ";
        out += t.rows[i][c].json();
      }
      out += (c + 1 < t.columns.size()) ? "],\n" : "]\n";
    }
    out += "  }";
  }
  out += "\n}\n";
  return out;
}

void write_output(const std::string& content, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << content;
}

}  // namespace selrelax::cli
