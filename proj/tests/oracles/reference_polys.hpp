#pragma once

// Reference polynomials transcribed from KnotInfo ("name: ea:ez:c ...").

#include <fstream>
#include <map>
#include <stdexcept>
#include <string>

#include "bandsurg/laurent.hpp"

namespace oracle {

inline std::map<std::string, bandsurg::LaurentPoly2> load_reference(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::map<std::string, bandsurg::LaurentPoly2> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto colon = line.find(':');
    if (line.empty() || line[0] == '#' || colon == std::string::npos) continue;
    out[line.substr(0, colon)] = bandsurg::LaurentPoly2::parse_canonical(line.substr(colon + 1));
  }
  return out;
}

}  // namespace oracle
