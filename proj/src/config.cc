#include "depthwarp/config.h"

#include <fstream>
#include <sstream>

#include "depthwarp/errors.h"

namespace depthwarp {

namespace {

std::string trim(const std::string& s) {
  const size_t begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const size_t end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::string where(const std::string& path, int line) {
  return path + ":" + std::to_string(line);
}

}  // namespace

std::vector<KeyValueEntry> parse_key_value_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidInputError("cannot open " + path + " for reading");
  }
  std::vector<KeyValueEntry> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t colon = line.find(':');
    if (colon == std::string::npos) {
      throw ParseError(where(path, line_no) + ": expected 'key: value'");
    }
    KeyValueEntry e;
    e.key = trim(line.substr(0, colon));
    e.value = trim(line.substr(colon + 1));
    e.line = line_no;
    if (e.key.empty()) {
      throw ParseError(where(path, line_no) + ": empty key");
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

std::vector<double> parse_doubles(const KeyValueEntry& entry,
                                  const std::string& path, size_t count) {
  std::istringstream ss(entry.value);
  std::vector<double> out;
  double v = 0.0;
  while (ss >> v) out.push_back(v);
  std::string extra;
  if (out.size() != count || (ss.clear(), ss >> extra)) {
    throw ParseError(where(path, entry.line) + ": key '" + entry.key +
                     "' expects " + std::to_string(count) + " numbers");
  }
  return out;
}

double parse_double(const KeyValueEntry& entry, const std::string& path) {
  return parse_doubles(entry, path, 1)[0];
}

long parse_long(const KeyValueEntry& entry, const std::string& path) {
  std::istringstream ss(entry.value);
  long v = 0;
  std::string extra;
  if (!(ss >> v) || (ss >> extra)) {
    throw ParseError(where(path, entry.line) + ": key '" + entry.key +
                     "' expects an integer");
  }
  return v;
}

}  // namespace depthwarp
