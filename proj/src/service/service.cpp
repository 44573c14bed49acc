#include "eqrank/service.hpp"

#include <httplib.h>

#include <charconv>
#include <optional>

#include "eqrank/catalog_json.hpp"
#include "eqrank/errors.hpp"

namespace eqrank::service {

using nlohmann::json;

namespace {

template <typename T>
std::optional<T> parse_number(std::string_view s) {
  T value{};
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end || s.empty()) {
    return std::nullopt;
  }
  return value;
}

const std::string* param(const QueryParams& params, const std::string& name) {
  const auto it = params.find(name);
  return it == params.end() ? nullptr : &it->second;
}

ApiResponse ok(const json& body) { return {200, body.dump()}; }

ApiResponse error(int status, const std::string& message) {
  return {status, json{{"error", message}}.dump()};
}

std::optional<ThemeId> parse_theme(std::string_view s) {
  const auto colon = s.find(':');
  if (colon == std::string_view::npos) {
    return std::nullopt;
  }
  const auto level = parse_number<std::uint32_t>(s.substr(0, colon));
  const auto index = parse_number<ThemeIndex>(s.substr(colon + 1));
  if (!level || !index) {
    return std::nullopt;
  }
  return ThemeId{*level, *index};
}

}  // namespace

void ApiConfig::validate() const {
  if (port < 0 || port > 65535) {
    throw DomainError("port " + std::to_string(port) + " is out of range");
  }
  if (result_cap < 1) {
    throw DomainError("result cap must be at least 1");
  }
}

void apply_address(ApiConfig& config, std::string_view address) {
  const auto colon = address.rfind(':');
  std::string_view port_part = address;
  if (colon != std::string_view::npos) {
    if (colon > 0) {
      config.host = std::string(address.substr(0, colon));
    }
    port_part = address.substr(colon + 1);
  }
  const auto port = parse_number<int>(port_part);
  if (!port) {
    throw DomainError("bad listen address '" + std::string(address) + "'");
  }
  config.port = *port;
}

Api::Api(std::shared_ptr<const Catalog> catalog, ApiConfig config)
    : catalog_(std::move(catalog)), config_(std::move(config)) {
  config_.validate();
}

ApiResponse Api::handle(std::string_view method, std::string_view path,
                        const QueryParams& params) const {
  if (method != "GET") {
    return error(405, "method not allowed");
  }
  if (!catalog_) {
    return error(503, "no catalog loaded");
  }
  constexpr std::string_view kThemes = "/api/themes/";
  constexpr std::string_view kPapers = "/api/papers/";
  try {
    if (path == "/api/tree") {
      return tree(params);
    }
    if (path == "/api/search") {
      return search(params);
    }
    if (path.starts_with(kThemes)) {
      const auto rest = path.substr(kThemes.size());
      const auto slash = rest.find('/');
      if (slash == std::string_view::npos) {
        return error(404, "not found");
      }
      return theme(rest.substr(0, slash), rest.substr(slash + 1), params);
    }
    if (path.starts_with(kPapers) && path.size() > kPapers.size()) {
      return paper(path.substr(kPapers.size()));
    }
  } catch (const LookupError& e) {
    return error(404, e.what());
  }
  return error(404, "not found");
}

ApiResponse Api::tree(const QueryParams& params) const {
  const ClusterTree& tree = catalog_->tree();
  auto level_json = [&](std::uint32_t k) {
    json themes = json::array();
    for (const auto& s : catalog_->summaries(k)) {
      themes.push_back(to_json(s));
    }
    return themes;
  };
  if (const auto* level = param(params, "level")) {
    const auto k = parse_number<std::uint32_t>(*level);
    if (!k || *k < 1 || *k > tree.level_count()) {
      return error(400, "level must be an integer in 1.." + std::to_string(tree.level_count()));
    }
    return ok(level_json(*k));
  }
  json all = json::array();
  for (std::uint32_t k = 1; k <= tree.level_count(); ++k) {
    all.push_back({{"level", k}, {"themes", level_json(k)}});
  }
  return ok(all);
}

ApiResponse Api::theme(std::string_view level, std::string_view index,
                       const QueryParams& params) const {
  const auto k = parse_number<std::uint32_t>(level);
  const auto t = parse_number<ThemeIndex>(index);
  if (!k || !t) {
    return error(400, "theme level and index must be integers");
  }
  const ThemeId id{*k, *t};
  if (!catalog_->tree().contains(id)) {
    return error(404, "unknown theme " + to_string(id));
  }
  std::size_t offset = 0;
  std::size_t limit = config_.result_cap;
  if (const auto* s = param(params, "offset")) {
    const auto v = parse_number<std::size_t>(*s);
    if (!v) return error(400, "offset must be a non-negative integer");
    offset = *v;
  }
  if (const auto* s = param(params, "limit")) {
    const auto v = parse_number<std::size_t>(*s);
    if (!v || *v == 0) return error(400, "limit must be a positive integer");
    limit = std::min(*v, config_.result_cap);
  }
  json body = to_json(catalog_->summary(id));
  const auto authorities = catalog_->theme_authorities(id, config_.result_cap);
  const auto hubs = catalog_->theme_hubs(id, config_.result_cap);
  body["authorities"] = to_json(std::span<const RankedPaper>(authorities));
  body["hubs"] = to_json(std::span<const RankedPaper>(hubs));
  const auto members = catalog_->members(id);
  json items = json::array();
  for (std::size_t i = offset; i < members.size() && i < offset + limit; ++i) {
    items.push_back(catalog_->key(members[i]));
  }
  body["members"] = {
      {"offset", offset}, {"limit", limit}, {"total", members.size()}, {"items", items}};
  return ok(body);
}

ApiResponse Api::paper(std::string_view key) const {
  const auto p = catalog_->find_paper(key);
  if (!p) {
    return error(404, "unknown paper '" + std::string(key) + "'");
  }
  const PaperMetadata* m = catalog_->metadata(*p);
  const auto path = catalog_->theme_path(*p);
  json body = {
      {"key", catalog_->key(*p)},
      {"title", m ? json(m->title) : json(nullptr)},
      {"authors", m ? json(m->authors) : json(nullptr)},
      {"tag", m ? json(std::string(to_string(m->tag))) : json(nullptr)},
      {"theme_path", to_json(std::span<const ThemeId>(path))},
      {"local_authority", catalog_->key(catalog_->local_authority(*p))},
      {"local_hub", catalog_->key(catalog_->local_hub(*p))},
      {"root_authority", catalog_->key(catalog_->root_authority(*p))},
      {"root_hub", catalog_->key(catalog_->root_hub(*p))},
  };
  return ok(body);
}

ApiResponse Api::search(const QueryParams& params) const {
  std::size_t limit = config_.result_cap;
  if (const auto* s = param(params, "limit")) {
    const auto v = parse_number<std::size_t>(*s);
    if (!v || *v == 0) return error(400, "limit must be a positive integer");
    limit = std::min(*v, config_.result_cap);
  }
  std::optional<ThemeId> filter;
  if (const auto* s = param(params, "theme"); s != nullptr && !s->empty()) {
    filter = parse_theme(*s);
    if (!filter) return error(400, "theme must look like level:index");
    if (!catalog_->tree().contains(*filter)) {
      return error(404, "unknown theme " + to_string(*filter));
    }
  }
  const auto* q = param(params, "q");
  const auto hits = catalog_->search(q ? *q : std::string(), filter, limit);
  return ok(to_json(std::span<const SearchHit>(hits)));
}

struct Server::Impl {
  std::shared_ptr<const Api> api;
  httplib::Server http;
};

Server::Server(std::shared_ptr<const Api> api) : impl_(std::make_unique<Impl>()) {
  impl_->api = std::move(api);
  const std::string origin = impl_->api->config().cors_origin;
  impl_->http.set_default_headers({{"Access-Control-Allow-Origin", origin},
                                   {"Access-Control-Allow-Methods", "GET, OPTIONS"},
                                   {"Access-Control-Allow-Headers", "Content-Type"}});
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    QueryParams params(req.params.begin(), req.params.end());
    const ApiResponse r = impl_->api->handle(req.method, req.path, params);
    res.status = r.status;
    res.set_content(r.body, "application/json; charset=utf-8");
  };
  impl_->http.Get(".*", handler);
  impl_->http.Options(".*", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });
}

Server::~Server() { stop(); }

int Server::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->http.bind_to_any_port(host);
    if (bound < 0) {
      throw Error("cannot bind " + host);
    }
    return bound;
  }
  if (!impl_->http.bind_to_port(host, port)) {
    throw Error("cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void Server::run() { impl_->http.listen_after_bind(); }

void Server::stop() {
  if (impl_->http.is_running()) {
    impl_->http.stop();
  }
}

}  // namespace eqrank::service
