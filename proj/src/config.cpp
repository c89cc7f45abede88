#include "statuspref/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "statuspref/error.hpp"

namespace statuspref {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(trim(item));
  return out;
}

double parse_number(const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end)
    fail(ErrorCode::kConfig, "'" + key + "': expected a number, got '" + value + "'");
  return out;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::string_view text,
                                     const std::string& origin) {
  KeyValueConfig cfg;
  cfg.origin_ = origin;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    const std::string where = origin + ":" + std::to_string(line_no);
    if (eq == std::string::npos)
      fail(ErrorCode::kConfig, where + ": expected 'key = value'");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) fail(ErrorCode::kConfig, where + ": empty key");
    if (value.empty())
      fail(ErrorCode::kConfig, where + ": empty value for '" + key + "'");
    if (!cfg.entries_.emplace(key, value).second)
      fail(ErrorCode::kConfig, where + ": duplicate key '" + key + "'");
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kConfig, "cannot read config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path);
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
  entries_[key] = value;
}

bool KeyValueConfig::has(const std::string& key) const {
  return entries_.count(key) > 0;
}

const std::string& KeyValueConfig::raw(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end())
    fail(ErrorCode::kConfig, "missing required key '" + key + "'");
  used_.insert(key);
  return it->second;
}

std::string KeyValueConfig::text(const std::string& key) const { return raw(key); }

std::string KeyValueConfig::text_or(const std::string& key,
                                    const std::string& fallback) const {
  return has(key) ? raw(key) : fallback;
}

double KeyValueConfig::number(const std::string& key) const {
  return parse_number(key, raw(key));
}

double KeyValueConfig::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

std::optional<double> KeyValueConfig::optional_number(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return number(key);
}

std::uint64_t KeyValueConfig::count(const std::string& key) const {
  const std::string& value = raw(key);
  std::uint64_t out = 0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end)
    fail(ErrorCode::kConfig,
         "'" + key + "': expected a nonnegative integer, got '" + value + "'");
  return out;
}

std::uint64_t KeyValueConfig::count_or(const std::string& key,
                                       std::uint64_t fallback) const {
  return has(key) ? count(key) : fallback;
}

std::vector<double> KeyValueConfig::numbers(const std::string& key) const {
  std::vector<double> out;
  for (const std::string& item : split_list(raw(key)))
    out.push_back(parse_number(key, item));
  return out;
}

std::vector<std::string> KeyValueConfig::texts(const std::string& key) const {
  auto out = split_list(raw(key));
  for (const std::string& item : out)
    if (item.empty()) fail(ErrorCode::kConfig, "'" + key + "': empty list item");
  return out;
}

void KeyValueConfig::reject_unused() const {
  for (const auto& [key, value] : entries_)
    if (!used_.count(key))
      fail(ErrorCode::kConfig, origin_ + ": unknown or unused key '" + key + "'");
}

}  // namespace statuspref
