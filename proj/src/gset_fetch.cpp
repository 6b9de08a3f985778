#ifdef PROJOPT_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>

#include "projopt/errors.hpp"
#include "projopt/maxcut.hpp"

namespace projopt {

namespace {

constexpr const char* kDefaultBaseUrl =
    "https://web.stanford.edu/~yyye/yyye/Gset/";

/// Splits an absolute URL into the scheme://host[:port] part httplib wants
/// and the path prefix.
void split_url(const std::string& url, std::string& origin,
               std::string& path_prefix) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos)
    throw ValidationError("base URL must start with http:// or https://");
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) {
    origin = url;
    path_prefix = "/";
  } else {
    origin = url.substr(0, path_start);
    path_prefix = url.substr(path_start);
  }
  if (path_prefix.back() != '/') path_prefix += '/';
}

}  // namespace

std::string default_gset_base_url() {
  if (const char* env = std::getenv("PROJOPT_GSET_URL"); env && *env)
    return env;
  return kDefaultBaseUrl;
}

std::string fetch_gset(const std::string& name, const std::string& cache_dir,
                       const std::string& base_url) {
  static const std::regex kName("G[0-9]+");
  if (!std::regex_match(name, kName))
    throw ValidationError("instance name must match G<number>, got \"" + name +
                          "\"");

  namespace fs = std::filesystem;
  const fs::path dir(cache_dir);
  const fs::path target = dir / name;
  if (fs::exists(target)) return target.string();

  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create cache directory " + dir.string());

  std::string origin, path_prefix;
  split_url(base_url, origin, path_prefix);
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (origin.rfind("https://", 0) == 0)
    throw IoError("https requested but this build has no TLS support");
#endif

  httplib::Client client(origin);
  client.set_connection_timeout(10, 0);
  client.set_read_timeout(60, 0);
  client.set_follow_location(true);

  const std::string url = origin + path_prefix + name;
  auto res = client.Get(path_prefix + name);
  if (!res)
    throw IoError("network error fetching " + url + ": " +
                  httplib::to_string(res.error()));
  if (res->status != 200)
    throw IoError("HTTP " + std::to_string(res->status) + " fetching " + url);

  try {
    parse_gset(res->body);
  } catch (const ParseError& e) {
    throw IoError("downloaded payload for " + name +
                  " is not a valid graph: " + e.what());
  }

  // Validated payload only: write to a temp name, then move into place.
  const fs::path tmp = dir / (name + ".part");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << res->body;
    if (!out) throw IoError("short write to " + tmp.string());
  }
  fs::rename(tmp, target, ec);
  if (ec) throw IoError("cannot move " + tmp.string() + " into place");
  return target.string();
}

}  // namespace projopt
