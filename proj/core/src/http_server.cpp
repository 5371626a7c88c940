#include <httplib.h>

#include <atomic>

#include "tuxqa/service.hpp"

namespace tuxqa {

namespace {

constexpr const char* kJson = "application/json; charset=utf-8";

constexpr const char* kPlaceholderPage = R"(<!doctype html>
<html><head><meta charset="utf-8"><title>tuxqa</title></head>
<body>
<h1>tuxqa</h1>
<p>No web UI is installed. The JSON API is available:</p>
<ul>
<li><code>POST /api/query</code> with <code>{"text": "...", "debug": false}</code></li>
<li><code>GET /api/health</code></li>
</ul>
</body></html>
)";

}  // namespace

struct HttpServer::Impl {
  explicit Impl(QueryService& s) : service(s) {}
  QueryService& service;
  httplib::Server server;
  std::atomic<bool> bound{false};
};

HttpServer::HttpServer(QueryService& service, std::optional<std::filesystem::path> static_dir)
    : impl_(std::make_unique<Impl>(service)) {
  auto& server = impl_->server;
  // SO_REUSEADDR only: with SO_REUSEPORT a second instance would share the port.
  server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof(yes));
  });
  auto* svc = &impl_->service;

  server.Post("/api/query", [svc](const httplib::Request& req, httplib::Response& res) {
    const auto out = svc->query_endpoint(req.body);
    res.status = out.status;
    res.set_content(out.body, kJson);
  });
  server.Get("/api/health", [svc](const httplib::Request&, httplib::Response& res) {
    const auto out = svc->health_endpoint();
    res.status = out.status;
    res.set_content(out.body, kJson);
  });

  if (static_dir && server.set_mount_point("/", static_dir->string())) return;
  server.Get("/", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(kPlaceholderPage, "text/html; charset=utf-8");
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  int bound_port = -1;
  if (port == 0) {
    bound_port = impl_->server.bind_to_any_port(host);
  } else if (impl_->server.bind_to_port(host, port)) {
    bound_port = port;
  }
  impl_->bound = bound_port > 0;
  return impl_->bound ? bound_port : -1;
}

bool HttpServer::serve() {
  if (!impl_->bound) return false;
  return impl_->server.listen_after_bind();
}

void HttpServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

bool HttpServer::running() const { return impl_->server.is_running(); }

}  // namespace tuxqa
