#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "eqrank/catalog.hpp"

namespace eqrank::service {

struct ApiConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string catalog_path;
  /// Upper bound on any list returned by the API.
  std::size_t result_cap = 100;
  std::string cors_origin = "*";

  /// Throws DomainError for an invalid port or a zero cap.
  void validate() const;
};

/// Parses "host:port" or ":port" or "port" into `config`.
void apply_address(ApiConfig& config, std::string_view address);

struct ApiResponse {
  int status = 200;
  std::string body;
};

using QueryParams = std::multimap<std::string, std::string>;

/**
 * Request router over one immutable catalog. Pure: every response is a function of the
 * catalog and the request. A null catalog answers 503 everywhere.
 *
 *   GET /api/tree[?level=k]
 *   GET /api/themes/{level}/{index}[?offset=&limit=]
 *   GET /api/papers/{key}
 *   GET /api/search?q=...[&theme=level:index][&limit=n]
 */
class Api {
 public:
  Api(std::shared_ptr<const Catalog> catalog, ApiConfig config);

  ApiResponse handle(std::string_view method, std::string_view path,
                     const QueryParams& params) const;

  const ApiConfig& config() const noexcept { return config_; }

 private:
  ApiResponse tree(const QueryParams& params) const;
  ApiResponse theme(std::string_view level, std::string_view index,
                    const QueryParams& params) const;
  ApiResponse paper(std::string_view key) const;
  ApiResponse search(const QueryParams& params) const;

  std::shared_ptr<const Catalog> catalog_;
  ApiConfig config_;
};

/// HTTP front end for an Api. Binds in the constructor; `run` blocks until `stop`.
class Server {
 public:
  explicit Server(std::shared_ptr<const Api> api);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds host:port (port 0 picks a free port). Returns the bound port.
  int bind(const std::string& host, int port);
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace eqrank::service
