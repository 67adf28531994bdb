#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace tripgrade {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<int> row_lines;  // 1-based source line of each data row
};

// RFC-4180-ish: quoted fields, "" escapes, embedded separators/newlines, CRLF.
// Lines starting with '#' at record start are metadata comments and skipped.
// Throws MissingFileError / SchemaError (unbalanced quote, no header).
CsvTable read_csv_file(const std::filesystem::path& path);
CsvTable parse_csv(const std::string& text, const std::string& file_label);

std::string csv_escape(const std::string& field);

// comment, when nonempty, is written first as "# <comment>"
void write_csv_file(const std::filesystem::path& path,
                    const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows,
                    const std::string& comment = "");

}  // namespace tripgrade
