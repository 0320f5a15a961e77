#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "fairdiv/instance.hpp"

namespace fairdiv {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instance files use 1-based good indices, rationals as "p/q" strings and
// subset keys as sorted comma-joined indices ("" is the empty set).
nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);

nlohmann::json allocation_to_json(const Allocation& alloc);
Allocation allocation_from_json(const nlohmann::json& j);

std::string subset_key(GoodMask mask);
GoodMask parse_subset_key(const std::string& key, std::size_t m);

/// Reads and validates an instance file. Throws ParseError or InvalidInstance.
Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& inst, const std::filesystem::path& path);

Allocation load_allocation(const std::filesystem::path& path, std::size_t n, std::size_t m);
void save_allocation(const Allocation& alloc, const std::filesystem::path& path);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const nlohmann::json& j, const std::filesystem::path& path);

}  // namespace fairdiv
