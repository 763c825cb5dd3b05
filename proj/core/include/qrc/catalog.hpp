#pragma once

#include <string>
#include <vector>

namespace qrc {

struct CatalogEntry {
  std::string kind;
  std::string mode;      // discrete / continuous
  std::string system;    // finite / gaussian
  std::string expected;  // expected verdict, with the telltale node when partial
  std::string summary;
};

// Built-in encodings constructible from the config schema.
const std::vector<CatalogEntry>& encoding_catalog();

}  // namespace qrc
