#pragma once

#include <string>

#include "vtr/errors.hpp"

namespace vtr {

// Splits "http://host:port/path" into the client base and the request path.
struct ParsedUrl {
  std::string base;  // scheme://host[:port]
  std::string path;  // leading '/' path, "/" when the URL has none
};

inline ParsedUrl parse_url(const std::string& url) {
  const size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("endpoint must be an http URL: " + url);
  }
  const size_t path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace vtr
