#pragma once

#include <string>
#include <variant>
#include <vector>

namespace divorb {

using Cell = std::variant<std::string, long long, double>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

// Shortest round-trip-safe decimal; inf and nan spelled out.
std::string format_number(double v);

// LF line endings, header row first, fields quoted only when needed.
std::string to_csv(const Table& table);
// {"command": ..., "columns": [...], "rows": [{column: value}, ...]}; non-finite numbers become null.
std::string to_json(const Table& table, const std::string& command);

}  // namespace divorb
