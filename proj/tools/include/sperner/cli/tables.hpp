#pragma once

// CSV and JSON renderings of comparability tables and bound grids.

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sperner/bounds.hpp"
#include "sperner/search.hpp"

namespace sperner::cli {

// "4" or "2..6", inclusive. Throws std::invalid_argument.
std::pair<int, int> parse_range(const std::string& text);

std::string comp_table_csv(const std::vector<CompTable>& tables);
nlohmann::json comp_table_json(const std::vector<CompTable>& tables);

struct BoundRow {
  int n = 0;
  int k = 0;
  std::string bound_id;  // tag, or "TAG/variant"
  BoundValue value;
};

// Every entry and variant of bounds_report(n, k, m), entries first.
std::vector<BoundRow> bound_rows(const BoundsReport& report);

// Columns n,k,bound_id,value,applicable and optionally a quoted note.
std::string bounds_csv(const std::vector<BoundRow>& rows, bool with_note = false);
nlohmann::json bounds_json(const std::vector<BoundRow>& rows);

}  // namespace sperner::cli
