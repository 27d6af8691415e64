#include "rkm/suite.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "rkm/io.hpp"

namespace rkm {

namespace {

std::string strip(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

using Section = std::map<std::string, std::pair<std::string, std::size_t>>;

struct Reader {
  const std::string& origin;

  [[noreturn]] void fail(std::size_t line, const std::string& what) const {
    throw ParseError(origin + ":" + std::to_string(line) + ": " + what, line, 0);
  }

  template <typename T>
  T number(const Section& s, const std::string& key, T fallback) const {
    const auto it = s.find(key);
    if (it == s.end()) return fallback;
    const auto& [text, line] = it->second;
    T value{};
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size()) {
      fail(line, "bad value for " + key + ": '" + text + "'");
    }
    return value;
  }

  std::string text(const Section& s, const std::string& key, const std::string& fallback) const {
    const auto it = s.find(key);
    return it == s.end() ? fallback : it->second.first;
  }

  bool flag(const Section& s, const std::string& key) const {
    const auto it = s.find(key);
    if (it == s.end()) return false;
    const auto& v = it->second.first;
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    fail(it->second.second, "bad boolean for " + key + ": '" + v + "'");
  }

  std::vector<int> int_list(const Section& s, const std::string& key) const {
    std::vector<int> out;
    const auto it = s.find(key);
    if (it == s.end()) return out;
    std::stringstream in(it->second.first);
    std::string item;
    while (std::getline(in, item, ',')) {
      item = strip(item);
      int v = 0;
      const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
      if (ec != std::errc() || end != item.data() + item.size()) {
        fail(it->second.second, "bad list for " + key + ": '" + it->second.first + "'");
      }
      out.push_back(v);
    }
    return out;
  }
};

}  // namespace

std::vector<SuiteEntry> parse_suite(const std::string& text, const std::filesystem::path& base_dir,
                                    const std::string& origin) {
  Section defaults;
  std::vector<std::pair<std::string, Section>> sections;
  std::vector<std::size_t> section_lines;
  Reader reader{origin};

  std::stringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = strip(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) reader.fail(line_no, "malformed section header");
      sections.emplace_back(strip(line.substr(1, line.size() - 2)), Section{});
      section_lines.push_back(line_no);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) reader.fail(line_no, "expected key = value");
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    if (key.empty()) reader.fail(line_no, "empty key");
    Section& target = sections.empty() ? defaults : sections.back().second;
    target[key] = {value, line_no};
  }
  if (sections.empty()) throw ParseError(origin + ": no [dataset] sections");

  std::vector<SuiteEntry> entries;
  for (std::size_t i = 0; i < sections.size(); ++i) {
    Section merged = sections[i].second;
    merged.insert(defaults.begin(), defaults.end());  // section keys win

    SuiteEntry e;
    e.name = sections[i].first;
    const auto data_dir = base_dir / reader.text(merged, "data_dir", ".");
    const auto file = reader.text(merged, "file", e.name + ".csv");
    e.file = std::filesystem::path(file).is_absolute() ? std::filesystem::path(file) : data_dir / file;
    e.label_column = reader.number(merged, "label_column", -1);
    e.trials = reader.number(merged, "trials", 100);
    e.runs_per_trial = reader.number(merged, "runs_per_trial", 5);
    e.seed = reader.number<std::uint64_t>(merged, "seed", 0);

    const auto mode = reader.text(merged, "mode", "merge");
    if (mode == "kmeans") {
      e.spec = PipelineSpec::plain(reader.number(merged, "k", 2));
    } else if (mode == "merge") {
      e.spec = PipelineSpec::merged(reader.number(merged, "k", 2));
    } else if (mode == "tiled") {
      auto splits = reader.int_list(merged, "splits");
      if (splits.empty()) splits = {2, 2};
      e.spec = PipelineSpec::tiled(reader.number(merged, "pct", 5.0), std::move(splits));
    } else {
      reader.fail(section_lines[i], "unknown mode '" + mode + "' in [" + e.name + "]");
    }
    e.spec.filter_outliers = reader.flag(merged, "filter_outliers");
    e.spec.max_iters = reader.number(merged, "max_iters", 300);
    e.spec.tol = reader.number(merged, "tol", 1e-4);
    if (e.trials < 1 || e.runs_per_trial < 1) {
      reader.fail(section_lines[i], "trials and runs_per_trial must be positive");
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

std::vector<SuiteEntry> parse_suite(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_suite(buffer.str(), path.parent_path(), path.string());
}

}  // namespace rkm
