// Copyright 2026 The LipLink Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <thread>

#include "liplink/dataset/synthetic.hpp"
#include "liplink/io.hpp"
#include "liplink/media/landmarks.hpp"
#include "liplink/media/lvf.hpp"
#include "liplink/service/client.hpp"
#include "liplink/service/http_server.hpp"
#include "test_support.hpp"

namespace liplink::service {
namespace {

using nlohmann::json;

constexpr std::uint32_t kClasses = 2;

Bytes clip(std::uint32_t label, std::uint32_t rep) {
  dataset::SyntheticParams params;
  params.num_classes = kClasses;
  params.length = 2;
  params.side = 8;
  return media::encode_lvf(dataset::to_face_canvas(dataset::render_synthetic(params, label, rep), 25));
}

std::string ring_landmarks(std::size_t frames) {
  media::LandmarkTrack track;
  media::FrameLandmarks points{};
  for (std::size_t i = 0; i < media::kLandmarkCount; ++i) {
    const double angle = 2.0 * M_PI * static_cast<double>(i) / 20.0;
    points[i] = {8.0 + 3.0 * std::cos(angle), 10.0 + 2.0 * std::sin(angle)};
  }
  track.frames.assign(frames, points);
  return media::serialize_landmarks(track);
}

class HttpTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dataset::PhraseLexicon lex;
    lex.phrases = {"yes", "no"};
    write_file_atomic(dir_ / "lexicon.json", dataset::save_lexicon(lex));
    ServiceOptions options;
    options.data_dir = dir_ / "data";
    options.lexicon_path = dir_ / "lexicon.json";
    options.roi.output_size = 8;
    options.sequence_length = 2;
    options.password_iterations = 1000;
    options.default_spec = testing::tiny_spec();
    options.default_config.max_epochs = 2;
    options.default_config.batch_size = 2;
    service_ = std::make_unique<Service>(options);
    server_ = std::make_unique<HttpServer>(*service_, 4);
    const int port = server_->bind("127.0.0.1", 0);
    thread_ = std::thread([this] { server_->listen(); });
    server_->wait_until_ready();
    url_ = "http://127.0.0.1:" + std::to_string(port);
  }

  void TearDown() override {
    server_->stop();
    thread_.join();
  }

  ApiClient signed_in(const std::string& name) {
    ApiClient client(url_);
    EXPECT_EQ(client.register_user(name, "password123").status, 201);
    const auto login = client.login(name, "password123");
    EXPECT_EQ(login.status, 200);
    client.set_token(login.body.at("token").get<std::string>());
    return client;
  }

  testing::TempDir dir_;
  std::unique_ptr<Service> service_;
  std::unique_ptr<HttpServer> server_;
  std::thread thread_;
  std::string url_;
};

TEST_F(HttpTest, HealthNeedsNoToken) {
  ApiClient client(url_);
  const auto health = client.health();
  EXPECT_EQ(health.status, 200);
  EXPECT_EQ(health.body.at("status"), "ok");
}

TEST_F(HttpTest, UnauthenticatedRequestsHaveNoSideEffects) {
  ApiClient anonymous(url_);
  std::vector<ClientResponse> responses = {
      anonymous.upload(0, 0, clip(0, 0)), anonymous.submit_training(), anonymous.job("job-1"),
      anonymous.infer(clip(0, 0)),        anonymous.select("x", 0),    anonymous.selections(),
      anonymous.lexicon(),                anonymous.reload_lexicon()};
  anonymous.set_token("0123456789abcdef0123456789abcdef");
  responses.push_back(anonymous.upload(0, 0, clip(0, 0)));
  for (const auto& r : responses) {
    EXPECT_EQ(r.status, 401);
    EXPECT_EQ(r.error_code(), "Unauthorized");
    EXPECT_TRUE(r.body.contains("message"));
  }
  EXPECT_FALSE(std::filesystem::exists(dir_ / "data" / "recordings.jsonl"));
  EXPECT_TRUE(std::filesystem::is_empty(dir_ / "data" / "blobs") ||
              !std::filesystem::exists(dir_ / "data" / "blobs"));
}

TEST_F(HttpTest, ErrorBodiesCarryCodeAndMessage) {
  ApiClient client(url_);
  const auto weak = client.register_user("alice", "short");
  EXPECT_EQ(weak.status, 400);
  EXPECT_EQ(weak.body.at("error"), "WeakPassword");
  EXPECT_TRUE(weak.body.at("message").is_string());
  EXPECT_EQ(client.login("nobody", "password123").error_code(), "BadCredentials");
}

TEST_F(HttpTest, UploadEnvelopes) {
  auto client = signed_in("alice");
  const auto raw = client.upload(0, 0, clip(0, 0));
  EXPECT_EQ(raw.status, 201);
  EXPECT_EQ(client.upload(0, 0, clip(0, 0)).body, raw.body);
  const auto with_marks = client.upload(0, 0, clip(0, 0), ring_landmarks(2));
  EXPECT_EQ(with_marks.status, 201);
  EXPECT_NE(with_marks.body, raw.body);
  EXPECT_EQ(client.upload(0, 1, clip(0, 0), ring_landmarks(3)).error_code(), "BadLvf");
  EXPECT_EQ(client.upload(7, 0, clip(0, 0)).status, 404);
}

TEST_F(HttpTest, FullLoop) {
  auto client = signed_in("alice");
  EXPECT_EQ(client.infer(clip(0, 0)).error_code(), "NoModel");
  EXPECT_EQ(client.infer(clip(0, 0)).status, 503);
  EXPECT_EQ(client.submit_training().status, 422);
  for (std::uint32_t p = 0; p < kClasses; ++p) {
    for (std::uint32_t r = 0; r < 2; ++r) ASSERT_EQ(client.upload(p, r, clip(p, r)).status, 201);
  }
  const auto submitted = client.submit_training({{"train_config", {{"seed", 3}}}});
  ASSERT_EQ(submitted.status, 202);
  const auto job_id = submitted.body.at("job_id").get<std::string>();
  service_->wait_for_idle();
  const auto job = client.job(job_id);
  EXPECT_EQ(job.status, 200);
  EXPECT_EQ(job.body.at("state"), "succeeded");
  EXPECT_EQ(client.job("job-404").status, 404);

  const auto inferred = client.infer(clip(1, 3), 2);
  ASSERT_EQ(inferred.status, 200);
  const auto& candidates = inferred.body.at("candidates");
  ASSERT_EQ(candidates.size(), 2u);
  EXPECT_EQ(client.infer(clip(1, 3), 3).error_code(), "BadK");
  const auto id = inferred.body.at("inference_id").get<std::string>();
  const auto chosen = candidates[1].at("phrase_id").get<std::uint32_t>();
  const auto selected = client.select(id, chosen);
  EXPECT_EQ(selected.status, 204);
  EXPECT_EQ(client.select(id, chosen).status, 409);
  const auto events = client.selections();
  ASSERT_EQ(events.body.at("selections").size(), 1u);
  EXPECT_EQ(events.body.at("selections")[0].at("rank_of_choice"), 2);

  const auto lexicon = client.lexicon();
  EXPECT_EQ(lexicon.body.at("version"), 1);
  EXPECT_EQ(lexicon.body.at("phrases").size(), 2u);
}

TEST(HttpClient, TransportFailureHasNoStatus) {
  ApiClient client("http://127.0.0.1:1");
  const auto r = client.health();
  EXPECT_EQ(r.status, 0);
  EXPECT_FALSE(r.ok());
  EXPECT_FALSE(r.transport_error.empty());
}

}  // namespace
}  // namespace liplink::service
