#include "sperner/cli/witness.hpp"

#include <chrono>
#include <ctime>
#include <limits>

namespace sperner::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw SchemaError(what); }

const json& field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(std::string("missing field \"") + key + "\"");
  return *it;
}

long long int_field(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_number_integer()) fail(std::string("field \"") + key + "\" must be an integer");
  return v.get<long long>();
}

BigInt big_from_json(const json& v, const char* what) {
  if (v.is_number_unsigned()) return BigInt(v.get<std::uint64_t>());
  if (v.is_number_integer()) return BigInt(v.get<std::int64_t>());
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      fail(std::string(what) + " must be a decimal integer");
    return BigInt(s);
  }
  fail(std::string(what) + " must be an integer or a decimal string");
}

SetMask decode_member(const json& v, int n, Encoding enc, std::size_t family) {
  const std::string where = "member of family " + std::to_string(family + 1);
  if (enc == Encoding::Mask) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
      fail(where + " must be a non-negative integer mask");
    const auto m = v.get<std::uint64_t>();
    if (m >= universe_size(n)) fail(where + " has mask " + std::to_string(m) + " outside P([" + std::to_string(n) + "])");
    return static_cast<SetMask>(m);
  }
  if (!v.is_array()) fail(where + " must be a list of elements");
  std::vector<int> elements;
  for (const json& e : v) {
    if (!e.is_number_integer()) fail(where + " has a non-integer element");
    const long long x = e.get<long long>();
    if (x < 1 || x > n) fail(where + " has element " + std::to_string(x) + " outside 1.." + std::to_string(n));
    if (!elements.empty() && x <= elements.back()) fail(where + " must list elements in strictly increasing order");
    elements.push_back(static_cast<int>(x));
  }
  return mask_from_elements(elements);
}

}  // namespace

json big_to_json(const BigInt& v) {
  if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max()) return json(v.convert_to<std::uint64_t>());
  return json(v.str());
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Witness make_witness(const FamilyTuple& t, Provenance provenance) {
  return Witness{canonicalize(t), Encoding::Mask, std::move(provenance), utc_timestamp(), std::nullopt};
}

json to_json(const Witness& w) {
  json families = json::array();
  for (const Family& f : w.tuple.families) {
    json members = json::array();
    for (SetMask x : f.masks()) {
      if (w.encoding == Encoding::Mask)
        members.push_back(x);
      else
        members.push_back(elements_of(x));
    }
    families.push_back(std::move(members));
  }
  const TupleMeasures m = measures(w.tuple);
  json out;
  out["schema_version"] = kSchemaVersion;
  out["n"] = w.tuple.n;
  out["k"] = w.tuple.k();
  out["encoding"] = w.encoding == Encoding::Mask ? "mask" : "elements";
  out["families"] = std::move(families);
  out["measures"] = {{"sum", big_to_json(m.sum)}, {"product", big_to_json(m.product)}};
  out["provenance"] = {{"source", w.provenance.source},
                       {"name", w.provenance.name},
                       {"parameters", w.provenance.parameters},
                       {"seed", w.provenance.seed ? json(*w.provenance.seed) : json(nullptr)}};
  out["created"] = w.created;
  return out;
}

std::string serialize(const Witness& w) { return to_json(w).dump() + "\n"; }

Witness parse_witness(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("top level must be an object");

  const long long version = int_field(doc, "schema_version");
  if (version != kSchemaVersion) fail("unsupported schema_version " + std::to_string(version));
  const long long n = int_field(doc, "n");
  if (n < 0 || n > kMaxGround) fail("n must be in 0.." + std::to_string(kMaxGround));
  const long long k = int_field(doc, "k");
  if (k < 1) fail("k must be at least 1");

  Witness w;
  const json& enc = field(doc, "encoding");
  if (enc == "mask")
    w.encoding = Encoding::Mask;
  else if (enc == "elements")
    w.encoding = Encoding::Elements;
  else
    fail("encoding must be \"mask\" or \"elements\"");

  const json& fams = field(doc, "families");
  if (!fams.is_array()) fail("families must be a list");
  if (static_cast<long long>(fams.size()) != k)
    fail("k=" + std::to_string(k) + " but " + std::to_string(fams.size()) + " families are listed");
  w.tuple.n = static_cast<int>(n);
  for (std::size_t i = 0; i < fams.size(); ++i) {
    if (!fams[i].is_array()) fail("family " + std::to_string(i + 1) + " must be a list");
    Family f(static_cast<int>(n));
    for (const json& v : fams[i]) {
      const SetMask x = decode_member(v, static_cast<int>(n), w.encoding, i);
      if (f.contains(x)) fail("family " + std::to_string(i + 1) + " lists a member twice");
      f.insert(x);
    }
    w.tuple.families.push_back(std::move(f));
  }

  if (auto it = doc.find("measures"); it != doc.end()) {
    if (!it->is_object()) fail("measures must be an object");
    w.stored_measures = TupleMeasures{big_from_json(field(*it, "sum"), "measures.sum"),
                                      big_from_json(field(*it, "product"), "measures.product")};
  }
  if (auto it = doc.find("provenance"); it != doc.end()) {
    if (!it->is_object()) fail("provenance must be an object");
    auto str = [&](const char* key) {
      auto f = it->find(key);
      if (f == it->end()) return std::string();
      if (!f->is_string()) fail(std::string("provenance.") + key + " must be a string");
      return f->get<std::string>();
    };
    w.provenance.source = str("source");
    w.provenance.name = str("name");
    if (auto p = it->find("parameters"); p != it->end()) w.provenance.parameters = *p;
    if (auto s = it->find("seed"); s != it->end() && !s->is_null()) {
      if (!s->is_number_unsigned()) fail("provenance.seed must be a non-negative integer or null");
      w.provenance.seed = s->get<std::uint64_t>();
    }
  }
  if (auto it = doc.find("created"); it != doc.end()) {
    if (!it->is_string()) fail("created must be a string");
    w.created = it->get<std::string>();
  }
  return w;
}

}  // namespace sperner::cli
