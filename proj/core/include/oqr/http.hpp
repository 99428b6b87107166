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

#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

namespace oqr {

class Service;

/// HTTP front end for a Service: /api routes plus static assets at `/`.
class HttpServer {
 public:
  HttpServer(Service& service, std::optional<std::filesystem::path> assets = std::nullopt);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds `host:port`; port 0 picks a free port. Returns the bound port.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  void listen();
  void stop();
  /// Blocks until the server accepts connections.
  void wait_until_ready();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace oqr
