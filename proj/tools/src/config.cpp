#include "kerrgcs/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace kerrgcs::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

double parse_plain(std::string_view text, std::string_view whole) {
  text = trim(text);
  if (text.size() > 1 && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size() || !std::isfinite(value)) {
    throw ConfigError("not a number: '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

double parse_real(std::string_view text) {
  const std::string_view whole = text;
  text = trim(text);
  const std::string low = lower(text);
  const auto at = low.find("pi");
  if (at == std::string::npos) return parse_plain(text, whole);

  std::string_view coef = trim(text.substr(0, at));
  std::string_view rest = trim(text.substr(at + 2));
  if (!coef.empty() && coef.back() == '*') coef = trim(coef.substr(0, coef.size() - 1));
  double factor = 1.0;
  if (coef == "-") {
    factor = -1.0;
  } else if (coef == "+") {
    factor = 1.0;
  } else if (!coef.empty()) {
    factor = parse_plain(coef, whole);
  }
  double divisor = 1.0;
  if (!rest.empty()) {
    if (rest.front() != '/') throw ConfigError("not a number: '" + std::string(whole) + "'");
    divisor = parse_plain(rest.substr(1), whole);
    if (divisor == 0.0) throw ConfigError("division by zero in '" + std::string(whole) + "'");
  }
  return factor * kPi / divisor;
}

std::uint64_t parse_count(std::string_view text) {
  const std::string_view whole = text;
  text = trim(text);
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
    throw ConfigError("not a non-negative integer: '" + std::string(whole) + "'");
  }
  return value;
}

cplx parse_complex(std::string_view text) {
  const std::string_view whole = text;
  text = trim(text);
  if (text.empty()) throw ConfigError("empty complex value");
  if (text.back() != 'i' && text.back() != 'j') return {parse_real(text), 0.0};
  text.remove_suffix(1);
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = text.size(); k-- > 1;) {
    if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_part = [&](std::string_view s) {
    s = trim(s);
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    if (s.back() == '*') s.remove_suffix(1);
    return parse_real(s);
  };
  try {
    if (split == std::string_view::npos) return {0.0, imag_part(text)};
    return {parse_real(text.substr(0, split)), imag_part(text.substr(split))};
  } catch (const ConfigError&) {
    throw ConfigError("not a complex number: '" + std::string(whole) + "'");
  }
}

bool parse_bool(std::string_view text) {
  const std::string v = lower(trim(text));
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("not a boolean: '" + std::string(text) + "'");
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const std::string_view item = trim(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
    if (item.empty()) throw ConfigError("empty item in list '" + std::string(text) + "'");
    items.emplace_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return items;
}

std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text, const std::string& origin) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    const auto hash = line.find('#');
    std::string_view body = trim(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    const std::string where = origin + ":" + std::to_string(number);
    if (eq == std::string_view::npos) throw ConfigError(where + ": expected key = value");
    std::string key(trim(body.substr(0, eq)));
    std::replace(key.begin(), key.end(), '_', '-');
    if (key.empty()) throw ConfigError(where + ": empty key");
    if (!seen.insert(key).second) throw ConfigError(where + ": duplicate key '" + key + "'");
    entries.emplace_back(key, std::string(trim(body.substr(eq + 1))));
  }
  return entries;
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path);
}

ResolvedConfig::ResolvedConfig(std::string command, const std::vector<ParamSpec>& specs)
    : command_(std::move(command)) {
  for (const ParamSpec& spec : specs) entries_.push_back({spec, spec.default_value, Source::Default});
}

bool ResolvedConfig::knows(std::string_view name) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const Entry& e) { return e.spec.name == name; });
}

const ResolvedConfig::Entry& ResolvedConfig::entry(std::string_view name) const {
  for (const Entry& e : entries_)
    if (e.spec.name == name) return e;
  throw ConfigError("'" + command_ + "' has no parameter '" + std::string(name) + "'");
}

ResolvedConfig::Entry& ResolvedConfig::entry(std::string_view name) {
  return const_cast<Entry&>(std::as_const(*this).entry(name));
}

void ResolvedConfig::set(std::string_view name, std::string value, Source source) {
  Entry& e = entry(name);
  if (source < e.source) return;
  if (e.spec.flag) value = parse_bool(value) ? "true" : "false";
  e.value = std::move(value);
  e.source = source;
}

bool ResolvedConfig::has(std::string_view name) const { return !entry(name).value.empty(); }
bool ResolvedConfig::user_set(std::string_view name) const { return entry(name).source != Source::Default; }

const std::string& ResolvedConfig::raw(std::string_view name) const {
  const Entry& e = entry(name);
  if (e.value.empty()) throw ConfigError("missing value for '" + std::string(name) + "'");
  return e.value;
}

template <class F>
auto with_context(std::string_view name, F&& parse) {
  try {
    return parse();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(name) + ": " + e.what());
  }
}

double ResolvedConfig::real(std::string_view name) const {
  return with_context(name, [&] { return parse_real(raw(name)); });
}

std::uint64_t ResolvedConfig::count(std::string_view name) const {
  return with_context(name, [&] { return parse_count(raw(name)); });
}

bool ResolvedConfig::flag(std::string_view name) const {
  const Entry& e = entry(name);
  return !e.value.empty() && parse_bool(e.value);
}

cplx ResolvedConfig::complex(std::string_view name) const {
  return with_context(name, [&] { return parse_complex(raw(name)); });
}

std::vector<double> ResolvedConfig::reals(std::string_view name) const {
  return with_context(name, [&] {
    std::vector<double> out;
    for (const auto& item : split_list(raw(name))) out.push_back(parse_real(item));
    return out;
  });
}

std::vector<std::uint64_t> ResolvedConfig::counts(std::string_view name) const {
  return with_context(name, [&] {
    std::vector<std::uint64_t> out;
    for (const auto& item : split_list(raw(name))) out.push_back(parse_count(item));
    return out;
  });
}

std::vector<cplx> ResolvedConfig::complexes(std::string_view name) const {
  return with_context(name, [&] {
    std::vector<cplx> out;
    for (const auto& item : split_list(raw(name))) out.push_back(parse_complex(item));
    return out;
  });
}

std::vector<std::string> ResolvedConfig::echo() const {
  std::vector<std::string> lines;
  for (const Entry& e : entries_) {
    if (e.spec.echoed && !e.value.empty()) lines.push_back(e.spec.name + " = " + e.value);
  }
  return lines;
}

}  // namespace kerrgcs::cli
