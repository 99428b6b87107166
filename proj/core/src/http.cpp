// Copyright 2026 The OQR Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oqr/http.hpp"

#include <httplib.h>

#include <map>
#include <string>

#include "oqr/error.hpp"
#include "oqr/service.hpp"

namespace oqr {
namespace {

constexpr const char* kPlaceholderPage = R"(<!doctype html>
<html>
<head><meta charset="utf-8"><title>oqr</title></head>
<body>
<h1>oqr</h1>
<p>Query reformulation service. The wizard assets are not installed; start
<code>oqr serve</code> with <code>--assets DIR</code> to serve them.</p>
<p>API: <a href="/api/health">/api/health</a>, <a href="/api/classes">/api/classes</a>,
<a href="/api/concepts">/api/concepts</a>.</p>
</body>
</html>
)";

}  // namespace

struct HttpServer::Impl {
  Service& service;
  httplib::Server server;
  int port = 0;

  explicit Impl(Service& s) : service(s) {}

  void dispatch(const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [k, v] : req.params) query.emplace(k, v);
    const ApiResponse out = service.handle(req.method, req.path, query, req.body);
    res.status = out.status;
    res.set_content(out.body.dump(), "application/json");
  }
};

HttpServer::HttpServer(Service& service, std::optional<std::filesystem::path> assets)
    : impl_(std::make_unique<Impl>(service)) {
  auto& srv = impl_->server;
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    impl_->dispatch(req, res);
  };
  srv.Get(R"(/api/.*)", handler);
  srv.Post(R"(/api/.*)", handler);
  srv.Delete(R"(/api/.*)", handler);

  bool mounted = false;
  if (assets) {
    std::error_code ec;
    if (!std::filesystem::is_directory(*assets, ec)) {
      fail(ErrorCode::kStorageError, "assets directory " + assets->string() + " does not exist");
    }
    mounted = srv.set_mount_point("/", assets->string());
  }
  if (!mounted) {
    srv.Get("/", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(kPlaceholderPage, "text/html");
    });
  }
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  auto& srv = impl_->server;
  if (port == 0) {
    impl_->port = srv.bind_to_any_port(host);
  } else {
    impl_->port = srv.bind_to_port(host, port) ? port : -1;
  }
  if (impl_->port < 0) {
    fail(ErrorCode::kStorageError, "cannot bind " + host + ":" + std::to_string(port));
  }
  return impl_->port;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

void HttpServer::wait_until_ready() { impl_->server.wait_until_ready(); }

}  // namespace oqr
