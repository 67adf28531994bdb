#include "tripgrade/csv.hpp"

#include <fstream>
#include <sstream>

#include "tripgrade/errors.hpp"

namespace tripgrade {

CsvTable parse_csv(const std::string& text, const std::string& file_label) {
  std::vector<std::vector<std::string>> records;
  std::vector<int> record_lines;

  std::vector<std::string> cur;
  std::string field;
  bool in_quotes = false;
  bool record_started = false;
  int line = 1;
  int record_line = 1;

  auto end_field = [&] {
    cur.push_back(field);
    field.clear();
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(cur));
    record_lines.push_back(record_line);
    cur.clear();
    record_started = false;
  };

  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (!record_started && !in_quotes && cur.empty() && field.empty()) {
      if (c == '#') {  // metadata comment line
        while (i < text.size() && text[i] != '\n') ++i;
        ++line;
        continue;
      }
      if (c == '\n') {  // blank line
        ++line;
        continue;
      }
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
        ++i;
        ++line;
        continue;
      }
      record_started = true;
      record_line = line;
    }
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;  // swallowed with \n
        field.push_back(c);
        break;
      case '\n':
        end_record();
        ++line;
        break;
      default:
        field.push_back(c);
    }
  }
  if (in_quotes) throw SchemaError(file_label, line, 1, "unterminated quoted field");
  if (record_started || !field.empty() || !cur.empty()) end_record();

  if (records.empty()) throw SchemaError(file_label, 1, 1, "missing header row");

  CsvTable t;
  t.header = records.front();
  t.rows.assign(records.begin() + 1, records.end());
  t.row_lines.assign(record_lines.begin() + 1, record_lines.end());
  return t;
}

CsvTable read_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingFileError(path.filename().string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str(), path.filename().string());
}

std::string csv_escape(const std::string& field) {
  bool needs = field.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_csv_file(const std::filesystem::path& path,
                    const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows,
                    const std::string& comment) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  if (!comment.empty()) out << "# " << comment << "\n";
  auto emit = [&](const std::vector<std::string>& row) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << csv_escape(row[i]);
    }
    out << '\n';
  };
  emit(header);
  for (const auto& r : rows) emit(r);
}

}  // namespace tripgrade
