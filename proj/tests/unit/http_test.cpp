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

#include <gtest/gtest.h>
#include <httplib.h>

#include <fstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "oqr/http.hpp"
#include "oqr/service.hpp"
#include "test_support.hpp"

namespace oqr {
namespace {

using nlohmann::json;
using testing::hec;

class Running {
 public:
  explicit Running(std::optional<std::filesystem::path> assets = std::nullopt)
      : service_(hec().ont, hec().reg, hec().db, hec().store), server_(service_, assets) {
    port_ = server_.bind("127.0.0.1", 0);
    thread_ = std::thread([this] { server_.listen(); });
    server_.wait_until_ready();
  }
  ~Running() {
    server_.stop();
    thread_.join();
  }
  httplib::Client client() const { return httplib::Client("127.0.0.1", port_); }

 private:
  Service service_;
  HttpServer server_;
  int port_ = 0;
  std::thread thread_;
};

TEST(Http, ApiOverTheWire) {
  Running srv;
  auto cli = srv.client();
  auto health = cli.Get("/api/health");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
  EXPECT_EQ(json::parse(health->body)["status"], "ok");

  auto t = cli.Post("/api/translate", json{{"concept", "BRAIN_TUMOR_DISEASE_X_STUDY"}}.dump(),
                    "application/json");
  ASSERT_TRUE(t);
  EXPECT_EQ(t->status, 200);
  EXPECT_EQ(json::parse(t->body)["sql"],
            "SELECT * FROM patient_information WHERE clinical_test_name = 'DOUBLE_VISION' OR "
            "clinical_test_name = 'HEADACHES' OR clinical_test_name = 'ORTHOPAEDIC_SEQUELEA'");

  auto classes = cli.Get("/api/classes?parent=Clinical_Test_Values");
  ASSERT_TRUE(classes);
  EXPECT_EQ(json::parse(classes->body)["classes"].size(), 4u);

  auto del = cli.Delete("/api/concepts/nope");
  ASSERT_TRUE(del);
  EXPECT_EQ(del->status, 404);
}

TEST(Http, PlaceholderRootWithoutAssets) {
  Running srv;
  auto root = srv.client().Get("/");
  ASSERT_TRUE(root);
  EXPECT_EQ(root->status, 200);
  EXPECT_NE(root->body.find("/api/health"), std::string::npos);
}

TEST(Http, ServesStaticAssets) {
  testing::TempDir dir;
  std::ofstream(dir.path() / "index.html") << "<html>wizard</html>";
  std::ofstream(dir.path() / "app.js") << "console.log(1);";
  Running srv(dir.path());
  auto cli = srv.client();
  auto root = cli.Get("/");
  ASSERT_TRUE(root);
  EXPECT_EQ(root->body, "<html>wizard</html>");
  auto js = cli.Get("/app.js");
  ASSERT_TRUE(js);
  EXPECT_EQ(js->status, 200);
  auto api = cli.Get("/api/concepts");
  ASSERT_TRUE(api);
  EXPECT_EQ(json::parse(api->body)["concepts"].size(), 4u);
}

TEST(Http, MissingAssetsDirectoryIsRejected) {
  Service service(hec().ont, hec().reg, hec().db, hec().store);
  EXPECT_THROW(HttpServer(service, std::filesystem::path("/nonexistent/oqr-assets")), Error);
}

}  // namespace
}  // namespace oqr
