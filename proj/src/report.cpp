#include "limitp/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace limitp {

namespace {

using nlohmann::ordered_json;

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

double parse_number(std::string_view s) {
  if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  const std::string str(s);
  double v = std::stod(str, &used);
  if (used != str.size()) throw std::invalid_argument("malformed number in report: " + str);
  return v;
}

ordered_json json_number(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  // Round-trip through the 12-digit text form so CSV and JSON agree.
  return std::stod(format_number(v));
}

double from_json(const ordered_json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (j.is_string()) return parse_number(j.get<std::string>());
  return j.get<double>();
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string format_reports(const std::vector<EmpiricalReport>& reports, OutputFormat format) {
  if (format == OutputFormat::csv) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& r : reports) {
      out += std::to_string(r.x) + ',' + format_number(r.observed) + ',' + format_number(r.predicted) + ',' +
             format_number(r.ratio) + ',' + format_number(r.tail_bound) + ',' + csv_field(r.notes) + '\n';
    }
    return out;
  }
  ordered_json arr = ordered_json::array();
  for (const auto& r : reports) {
    ordered_json row;
    row["x"] = r.x;
    row["observed"] = json_number(r.observed);
    row["predicted"] = json_number(r.predicted);
    row["ratio"] = json_number(r.ratio);
    row["tail_bound"] = json_number(r.tail_bound);
    row["notes"] = r.notes;
    arr.push_back(std::move(row));
  }
  return arr.dump(2) + '\n';
}

std::vector<EmpiricalReport> parse_reports(std::string_view text, OutputFormat format) {
  std::vector<EmpiricalReport> out;
  if (format == OutputFormat::json) {
    const auto arr = ordered_json::parse(text);
    for (const auto& row : arr) {
      EmpiricalReport r;
      r.x = row.at("x").get<std::uint64_t>();
      r.observed = from_json(row.at("observed"));
      r.predicted = from_json(row.at("predicted"));
      r.ratio = from_json(row.at("ratio"));
      r.tail_bound = from_json(row.at("tail_bound"));
      r.notes = row.at("notes").get<std::string>();
      out.push_back(std::move(r));
    }
    return out;
  }
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw std::invalid_argument("CSV report lacks the expected header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 6) throw std::invalid_argument("CSV report row has " + std::to_string(fields.size()) + " fields");
    EmpiricalReport r;
    r.x = std::stoull(fields[0]);
    r.observed = parse_number(fields[1]);
    r.predicted = parse_number(fields[2]);
    r.ratio = parse_number(fields[3]);
    r.tail_bound = parse_number(fields[4]);
    r.notes = fields[5];
    out.push_back(std::move(r));
  }
  return out;
}

int emit_report(const std::vector<EmpiricalReport>& reports, OutputFormat format, const std::string& path) {
  if (reports.empty()) {
    std::cerr << "limitp: no report rows produced\n";
    return kExitEmptyReport;
  }
  const std::string text = format_reports(reports, format);
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return std::cout ? kExitOk : kExitIo;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    std::cerr << "limitp: cannot open " << path << " for writing\n";
    return kExitIo;
  }
  file << text;
  file.close();
  if (!file) {
    std::cerr << "limitp: failed writing " << path << '\n';
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace limitp
