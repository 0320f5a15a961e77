#include "fairdiv/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace fairdiv {

using nlohmann::json;

namespace {

Rational rational_field(const json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ParseError(where + ": expected a rational string \"p/q\"");
}

template <typename T>
T required(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

std::string subset_key(GoodMask mask) {
  std::string key;
  for (Good g : from_mask(mask)) {
    if (!key.empty()) key += ",";
    key += std::to_string(g + 1);
  }
  return key;
}

GoodMask parse_subset_key(const std::string& key, std::size_t m) {
  GoodMask mask = 0;
  if (key.empty()) return mask;
  std::stringstream ss(key);
  std::string part;
  long previous = 0;
  while (std::getline(ss, part, ',')) {
    long idx = 0;
    try {
      std::size_t used = 0;
      idx = std::stol(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw ParseError("malformed subset key '" + key + "'");
    }
    if (idx < 1 || static_cast<std::size_t>(idx) > m)
      throw ParseError("subset key '" + key + "' names a good outside [1, m]");
    if (idx <= previous) throw ParseError("subset key '" + key + "' is not sorted");
    previous = idx;
    mask |= GoodMask{1} << (idx - 1);
  }
  return mask;
}

json instance_to_json(const Instance& inst) {
  json vals = json::array();
  for (const auto& v : inst.valuations()) {
    if (v.is_additive()) {
      json values = json::array();
      for (const auto& x : v.additive_values()) values.push_back(x.str());
      vals.push_back({{"kind", "additive"}, {"values", values}});
    } else {
      json table = json::object();
      for (GoodMask s = 0; s < v.table().size(); ++s) table[subset_key(s)] = v.table()[s].str();
      vals.push_back({{"kind", "explicit"}, {"subadditive", v.claims_subadditive()},
                      {"table", table}});
    }
  }
  return {{"n", inst.n()}, {"m", inst.m()}, {"scaled", inst.scaled()}, {"valuations", vals}};
}

Instance instance_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("instance must be a JSON object");
  const auto n = required<long>(j, "n");
  const auto m = required<long>(j, "m");
  const bool scaled = required<bool>(j, "scaled");
  if (n < 1) throw ParseError("n must be >= 1");
  if (m < 0) throw ParseError("m must be >= 0");
  const auto& vals = j.at("valuations");
  if (!vals.is_array() || static_cast<long>(vals.size()) != n)
    throw ParseError("'valuations' must be an array of n entries");

  std::vector<Valuation> valuations;
  for (long i = 0; i < n; ++i) {
    const auto& vj = vals[static_cast<std::size_t>(i)];
    const std::string where = "agent " + std::to_string(i + 1);
    const auto kind = required<std::string>(vj, "kind");
    if (kind == "additive") {
      const auto& arr = vj.at("values");
      if (!arr.is_array() || static_cast<long>(arr.size()) != m)
        throw ParseError(where + ": 'values' must list m rationals");
      std::vector<Rational> values;
      for (std::size_t g = 0; g < arr.size(); ++g)
        values.push_back(rational_field(arr[g], where + " good " + std::to_string(g + 1)));
      valuations.push_back(Valuation::additive(std::move(values)));
    } else if (kind == "explicit") {
      if (static_cast<std::size_t>(m) > kExplicitGoodCap)
        throw ParseError(where + ": explicit valuations support at most " +
                         std::to_string(kExplicitGoodCap) + " goods");
      const bool sub = vj.value("subadditive", false);
      const auto& tj = vj.at("table");
      if (!tj.is_object()) throw ParseError(where + ": 'table' must be an object");
      const std::size_t size = std::size_t{1} << m;
      std::vector<Rational> table(size);
      std::vector<bool> seen(size, false);
      seen[0] = true;  // empty set defaults to 0
      for (auto it = tj.begin(); it != tj.end(); ++it) {
        const GoodMask s = parse_subset_key(it.key(), static_cast<std::size_t>(m));
        table[s] = rational_field(it.value(), where + " subset {" + it.key() + "}");
        seen[s] = true;
      }
      for (GoodMask s = 0; s < size; ++s)
        if (!seen[s]) throw ParseError(where + ": table is missing subset {" + subset_key(s) + "}");
      valuations.push_back(
          Valuation::explicit_table(static_cast<std::size_t>(m), std::move(table), sub));
    } else {
      throw ParseError(where + ": unknown valuation kind '" + kind + "'");
    }
  }
  return Instance(std::move(valuations), static_cast<std::size_t>(m), scaled);
}

json allocation_to_json(const Allocation& alloc) {
  json bundles = json::array();
  for (const auto& b : alloc.bundles) {
    json arr = json::array();
    for (Good g : b) arr.push_back(g + 1);
    bundles.push_back(arr);
  }
  return {{"bundles", bundles}};
}

Allocation allocation_from_json(const json& j) {
  if (!j.is_object() || !j.contains("bundles") || !j.at("bundles").is_array())
    throw ParseError("allocation must be an object with a 'bundles' array");
  Allocation alloc;
  for (const auto& bj : j.at("bundles")) {
    if (!bj.is_array()) throw ParseError("each bundle must be an array of good indices");
    Bundle b;
    for (const auto& gj : bj) {
      if (!gj.is_number_integer() || gj.get<long>() < 1)
        throw ParseError("good indices are positive integers");
      b.push_back(static_cast<Good>(gj.get<long>() - 1));
    }
    std::sort(b.begin(), b.end());
    alloc.bundles.push_back(std::move(b));
  }
  return alloc;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_json_file(const json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

Instance load_instance(const std::filesystem::path& path) {
  return instance_from_json(read_json_file(path));
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
  write_json_file(instance_to_json(inst), path);
}

Allocation load_allocation(const std::filesystem::path& path, std::size_t n, std::size_t m) {
  Allocation alloc = allocation_from_json(read_json_file(path));
  validate_allocation(alloc, n, m);
  return alloc;
}

void save_allocation(const Allocation& alloc, const std::filesystem::path& path) {
  write_json_file(allocation_to_json(alloc), path);
}

}  // namespace fairdiv
