#include "drad/kv_file.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "drad/errors.hpp"

namespace drad {
namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ConfigError("invalid value for '" + std::string(key) + "': '" + std::string(text) + "'");
  }
  return value;
}

double parse_double(std::string_view key, std::string_view text) {
  // strtod rather than from_chars: accepts a leading '+'.
  std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ConfigError("invalid value for '" + std::string(key) + "': '" + s + "'");
  }
  return v;
}

}  // namespace

KeyValues KeyValues::parse(std::string_view text) {
  KeyValues kv;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    }
    kv.set(key, std::string(trim(line.substr(eq + 1))));
  }
  return kv;
}

KeyValues KeyValues::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void KeyValues::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError(DataError::Kind::Io, "cannot write '" + path.string() + "'");
  out << dump();
  if (!out) throw DataError(DataError::Kind::Io, "write failed for '" + path.string() + "'");
}

std::string KeyValues::dump() const {
  std::string out;
  for (const auto& [k, v] : entries_) {
    out += k;
    out += " = ";
    out += v;
    out += '\n';
  }
  return out;
}

bool KeyValues::contains(std::string_view key) const { return find(key).has_value(); }

void KeyValues::set(std::string_view key, std::string value) {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const auto& e) { return e.first == key; });
  if (it != entries_.end()) {
    it->second = std::move(value);
  } else {
    entries_.emplace_back(std::string(key), std::move(value));
  }
}

void KeyValues::erase(std::string_view key) {
  std::erase_if(entries_, [&](const auto& e) { return e.first == key; });
}

void KeyValues::merge(const KeyValues& other) {
  for (const auto& [k, v] : other.entries_) set(k, v);
}

std::optional<std::string> KeyValues::find(std::string_view key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::string KeyValues::get_string(std::string_view key) const {
  auto v = find(key);
  if (!v) throw ConfigError("missing required key '" + std::string(key) + "'");
  return *v;
}

std::string KeyValues::get_string(std::string_view key, std::string fallback) const {
  auto v = find(key);
  return v ? *v : fallback;
}

std::int64_t KeyValues::get_int(std::string_view key) const {
  return parse_number<std::int64_t>(key, get_string(key));
}

std::int64_t KeyValues::get_int(std::string_view key, std::int64_t fallback) const {
  auto v = find(key);
  return v ? parse_number<std::int64_t>(key, *v) : fallback;
}

std::uint64_t KeyValues::get_uint(std::string_view key) const {
  return parse_number<std::uint64_t>(key, get_string(key));
}

std::uint64_t KeyValues::get_uint(std::string_view key, std::uint64_t fallback) const {
  auto v = find(key);
  return v ? parse_number<std::uint64_t>(key, *v) : fallback;
}

double KeyValues::get_double(std::string_view key) const {
  return parse_double(key, get_string(key));
}

double KeyValues::get_double(std::string_view key, double fallback) const {
  auto v = find(key);
  return v ? parse_double(key, *v) : fallback;
}

std::vector<std::string> KeyValues::get_list(std::string_view key) const {
  return split_list(get_string(key));
}

std::vector<int> KeyValues::get_int_list(std::string_view key) const {
  try {
    return parse_int_grid(get_string(key));
  } catch (const ConfigError& e) {
    throw ConfigError("invalid value for '" + std::string(key) + "': " + e.what());
  }
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  while (true) {
    const auto comma = text.find(',');
    const auto item = trim(text.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return out;
}

std::vector<int> parse_int_grid(std::string_view text) {
  text = trim(text);
  if (text.find(':') != std::string_view::npos) {
    std::vector<int> parts;
    std::string_view rest = text;
    while (true) {
      const auto colon = rest.find(':');
      parts.push_back(parse_number<int>("grid", trim(rest.substr(0, colon))));
      if (colon == std::string_view::npos) break;
      rest = rest.substr(colon + 1);
    }
    if (parts.size() != 3 || parts[1] <= 0 || parts[2] < parts[0]) {
      throw ConfigError("range must be start:step:stop with step > 0");
    }
    std::vector<int> out;
    for (int v = parts[0]; v <= parts[2]; v += parts[1]) out.push_back(v);
    return out;
  }
  std::vector<int> out;
  for (const auto& item : split_list(text)) out.push_back(parse_number<int>("grid", item));
  return out;
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

std::string join_ints(const std::vector<int>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(items[i]);
  }
  return out;
}

}  // namespace drad
