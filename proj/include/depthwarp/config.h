#pragma once

#include <string>
#include <vector>

namespace depthwarp {

// Line-oriented "key: value" text with '#' comments. Shared by the scene
// descriptor and the optimize/gradcheck configs; consumers dispatch on keys
// and must reject unknown ones.
struct KeyValueEntry {
  std::string key;
  std::string value;
  int line = 0;
};

std::vector<KeyValueEntry> parse_key_value_file(const std::string& path);

// Parse exactly `count` whitespace-separated doubles out of a value string;
// raises ParseError naming the file line otherwise.
std::vector<double> parse_doubles(const KeyValueEntry& entry,
                                  const std::string& path, size_t count);
double parse_double(const KeyValueEntry& entry, const std::string& path);
long parse_long(const KeyValueEntry& entry, const std::string& path);

}  // namespace depthwarp
