#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace drad {

/// Ordered `key = value` text document used for manifests, run configs and
/// import descriptors. Lines starting with '#' and blank lines are ignored.
/// Keys keep their first-insertion order so dumps are deterministic.
class KeyValues {
 public:
  static KeyValues parse(std::string_view text);
  static KeyValues load(const std::filesystem::path& path);

  void save(const std::filesystem::path& path) const;
  std::string dump() const;

  bool contains(std::string_view key) const;
  void set(std::string_view key, std::string value);
  void erase(std::string_view key);

  /// Copies every entry of `other` over this one (other wins).
  void merge(const KeyValues& other);

  std::optional<std::string> find(std::string_view key) const;

  // Typed accessors; malformed values throw ConfigError naming the key.
  std::string get_string(std::string_view key) const;
  std::string get_string(std::string_view key, std::string fallback) const;
  std::int64_t get_int(std::string_view key) const;
  std::int64_t get_int(std::string_view key, std::int64_t fallback) const;
  std::uint64_t get_uint(std::string_view key) const;
  std::uint64_t get_uint(std::string_view key, std::uint64_t fallback) const;
  double get_double(std::string_view key) const;
  double get_double(std::string_view key, double fallback) const;
  std::vector<std::string> get_list(std::string_view key) const;
  std::vector<int> get_int_list(std::string_view key) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

/// Splits on commas and trims whitespace; empty items are dropped.
std::vector<std::string> split_list(std::string_view text);

/// Parses an integer grid either as a list ("-4,-2,0") or a MATLAB-style
/// range ("-12:2:20").
std::vector<int> parse_int_grid(std::string_view text);

std::string join(const std::vector<std::string>& items, std::string_view sep = ",");
std::string join_ints(const std::vector<int>& items, std::string_view sep = ",");

}  // namespace drad
