#pragma once

// Witness files: a FamilyTuple plus recomputed measures and provenance,
// stored as compact JSON with sorted keys.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "sperner/lattice.hpp"

namespace sperner::cli {

inline constexpr int kSchemaVersion = 1;

enum class Encoding { Mask, Elements };

// Malformed or schema-violating witness input.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Provenance {
  std::string source;  // "builder" or "search"
  std::string name;    // builder kind or search mode
  nlohmann::json parameters = nlohmann::json::object();
  std::optional<std::uint64_t> seed;
};

struct Witness {
  FamilyTuple tuple;
  Encoding encoding = Encoding::Mask;
  Provenance provenance;
  std::string created;  // ISO 8601, UTC
  // Measures as stored in the file; recomputed on output.
  std::optional<TupleMeasures> stored_measures;
};

std::string utc_timestamp();

// Canonicalizes the tuple, stamps the current time.
Witness make_witness(const FamilyTuple& t, Provenance provenance);

nlohmann::json to_json(const Witness& w);
std::string serialize(const Witness& w);

// Throws SchemaError naming the offending field. Families are not checked
// for being cross-Sperner or non-empty here.
Witness parse_witness(std::string_view text);

// Products fit a JSON number up to 2^64 - 1 and are strings beyond.
nlohmann::json big_to_json(const BigInt& v);

}  // namespace sperner::cli
