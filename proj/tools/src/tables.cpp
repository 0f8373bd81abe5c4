#include "sperner/cli/tables.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace sperner::cli {

using nlohmann::json;

namespace {

int parse_int(std::string_view s) {
  int v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty())
    throw std::invalid_argument("expected an integer, got \"" + std::string(s) + "\"");
  return v;
}

std::string masks_field(const Family& f) {
  std::string out;
  for (SetMask x : f.masks()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(x);
  }
  return out;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int v = parse_int(text);
    return {v, v};
  }
  const int lo = parse_int(std::string_view(text).substr(0, dots));
  const int hi = parse_int(std::string_view(text).substr(dots + 2));
  if (lo > hi) throw std::invalid_argument("empty range " + text);
  return {lo, hi};
}

std::string comp_table_csv(const std::vector<CompTable>& tables) {
  std::ostringstream out;
  out << "n,m,c_exact,lower_bound,equality,witness_masks\n";
  for (const auto& t : tables)
    for (const auto& r : t.rows)
      out << t.n << ',' << r.m << ',' << r.c_exact << ',' << r.lower_bound << ','
          << (r.equality ? "true" : "false") << ',' << masks_field(r.witness) << '\n';
  return out.str();
}

json comp_table_json(const std::vector<CompTable>& tables) {
  json rows = json::array();
  for (const auto& t : tables)
    for (const auto& r : t.rows)
      rows.push_back({{"n", t.n},
                      {"m", r.m},
                      {"c_exact", r.c_exact},
                      {"lower_bound", r.lower_bound},
                      {"equality", r.equality},
                      {"witness_masks", r.witness.masks()}});
  return rows;
}

std::vector<BoundRow> bound_rows(const BoundsReport& report) {
  std::vector<BoundRow> rows;
  for (const auto& [id, v] : report.entries) rows.push_back({report.n, report.k, std::string(to_string(id)), v});
  for (const auto& [name, v] : report.variants) rows.push_back({report.n, report.k, name, v});
  return rows;
}

std::string bounds_csv(const std::vector<BoundRow>& rows, bool with_note) {
  std::ostringstream out;
  out << "n,k,bound_id,value,applicable" << (with_note ? ",note" : "") << '\n';
  for (const auto& r : rows) {
    out << r.n << ',' << r.k << ',' << r.bound_id << ',' << r.value.render() << ','
        << (r.value.applicable ? "true" : "false");
    if (with_note) out << ',' << quoted(r.value.note);
    out << '\n';
  }
  return out.str();
}

json bounds_json(const std::vector<BoundRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    json row = {{"n", r.n},
                {"k", r.k},
                {"bound_id", r.bound_id},
                {"value", r.value.render()},
                {"approx", r.value.approx},
                {"exact", r.value.exact.has_value()},
                {"applicable", r.value.applicable},
                {"note", r.value.note}};
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace sperner::cli
