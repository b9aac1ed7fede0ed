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

#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "liplink/dataset/lexicon.hpp"
#include "liplink/io.hpp"
#include "liplink/media/roi.hpp"
#include "liplink/nn/model.hpp"
#include "liplink/nn/model_spec.hpp"
#include "liplink/nn/train.hpp"
#include "liplink/service/crypto.hpp"
#include "liplink/service/storage.hpp"

namespace liplink::service {

// Request failure carrying the HTTP status and the error code string placed
// in the {"error", "message"} body.
class ApiError : public std::runtime_error {
 public:
  ApiError(int status, std::string code, const std::string& message)
      : std::runtime_error(message), status_(status), code_(std::move(code)) {}

  int status() const noexcept { return status_; }
  const std::string& code() const noexcept { return code_; }

 private:
  int status_;
  std::string code_;
};

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

using Clock = std::function<std::chrono::system_clock::time_point()>;

using Trainer = std::function<nn::TrainResult(const nn::ModelSpec&, const nn::TrainingSet&,
                                              const nn::TrainConfig&, const nn::TrainHooks&)>;

struct ServiceOptions {
  std::filesystem::path data_dir;
  // Placeholder lexicon when unset.
  std::optional<std::filesystem::path> lexicon_path;
  media::RoiConfig roi;
  std::uint32_t sequence_length = 25;
  std::chrono::seconds token_ttl = std::chrono::hours(24);
  std::uint32_t password_iterations = 100000;
  double split_ratio = 0.6;
  // input_side, sequence_length and num_classes are always taken from the
  // service configuration and lexicon.
  nn::ModelSpec default_spec;
  nn::TrainConfig default_config;
  Clock clock;
  Trainer trainer;
};

struct UploadRequest {
  std::uint32_t phrase_id = 0;
  std::uint32_t repetition_index = 0;
  Bytes lvf;
  std::optional<std::string> landmarks;
};

struct InferRequest {
  Bytes lvf;
  std::optional<std::string> landmarks;
  std::uint32_t k = 5;
};

enum class JobState { kQueued, kRunning, kSucceeded, kFailed };
std::string_view to_string(JobState state);

struct TrainingJob {
  std::string job_id;
  JobState state = JobState::kQueued;
  nn::ModelSpec spec;
  nn::TrainConfig config;
  std::vector<std::string> phrases;  // lexicon at submission
  std::string submitted_by;
  std::uint32_t epochs_completed = 0;
  std::optional<std::string> result_weights_ref;
  std::optional<std::uint64_t> model_version;
  std::optional<nn::TrainHistory> history;
  std::optional<std::string> error;
};

// Immutable published model. Requests hold a shared_ptr for their whole
// duration, so a swap never affects an in-flight inference.
struct ModelSnapshot {
  std::uint64_t version = 0;
  std::string weights_ref;
  nn::ModelWeights<float> weights;
  std::vector<std::string> phrases;
};

// Application-server and web-service logic behind the HTTP routes: accounts,
// sessions, recording registry, the training queue (one running job plus one
// waiting) and inference with user selection logging.
class Service {
 public:
  explicit Service(ServiceOptions options);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  ApiResponse register_user(std::string_view username, std::string_view password);
  ApiResponse login(std::string_view username, std::string_view password);

  // Resolves an "Authorization: Bearer <token>" header value to a user id.
  // Throws ApiError 401 (Unauthorized or TokenExpired).
  std::string authenticate(std::string_view authorization);

  ApiResponse upload_recording(const std::string& user_id, const UploadRequest& request);
  ApiResponse submit_training(const std::string& user_id, const nlohmann::json& overrides);
  ApiResponse get_job(const std::string& job_id) const;
  ApiResponse infer(const std::string& user_id, const InferRequest& request);
  ApiResponse select(const std::string& user_id, const std::string& inference_id,
                     std::uint32_t phrase_id);
  ApiResponse selections(const std::string& user_id) const;
  ApiResponse lexicon() const;
  ApiResponse reload_lexicon();

  // Blocks until no job is queued or running.
  void wait_for_idle();
  std::shared_ptr<const ModelSnapshot> current_model() const;
  const BlobStore& storage() const { return *store_; }

 private:
  struct User {
    std::string user_id;
    std::string username;
    PasswordDigest digest;
    std::int64_t created_at = 0;
  };
  struct Session {
    std::string user_id;
    std::chrono::system_clock::time_point expires_at;
  };
  struct Recording {
    std::string recording_id;
    std::string user_id;
    std::uint32_t phrase_id = 0;
    std::uint32_t repetition_index = 0;
    std::string lvf_ref;
    std::optional<std::string> landmarks_ref;
    std::string content_hash;
    std::int64_t created_at = 0;
  };
  struct Inference {
    std::string inference_id;
    std::string user_id;
    std::uint64_t model_version = 0;
    std::vector<std::uint32_t> candidates;  // phrase ids by rank
    bool selected = false;
  };

  std::int64_t now_seconds() const;
  void load_state();
  void append_line(const std::filesystem::path& file, const nlohmann::json& line);
  void worker_loop();
  void run_job(const std::string& job_id);
  void publish(std::shared_ptr<const ModelSnapshot> snapshot);
  nlohmann::json job_json(const TrainingJob& job) const;
  dataset::PhraseLexicon read_lexicon_source() const;
  nn::TrainingSet assemble_training_set(const TrainingJob& job) const;

  ServiceOptions options_;
  std::unique_ptr<BlobStore> store_;

  mutable std::shared_mutex users_mutex_;
  std::map<std::string, User> users_by_name_;

  mutable std::mutex sessions_mutex_;
  std::map<std::string, Session> sessions_;

  mutable std::shared_mutex registry_mutex_;
  std::vector<Recording> recordings_;
  std::map<std::string, std::string> recording_by_key_;

  mutable std::shared_mutex lexicon_mutex_;
  dataset::PhraseLexicon lexicon_;

  mutable std::mutex inference_mutex_;
  std::map<std::string, Inference> inferences_;
  std::vector<nlohmann::json> selection_log_;

  mutable std::mutex jobs_mutex_;
  std::condition_variable jobs_cv_;
  std::map<std::string, TrainingJob> jobs_;
  std::deque<std::string> queue_;
  std::optional<std::string> running_;
  std::uint64_t next_job_ = 1;
  bool stopping_ = false;
  std::atomic<bool> cancel_{false};

  std::mutex files_mutex_;
  std::shared_ptr<const ModelSnapshot> current_;  // atomic_load / atomic_store only
  PasswordDigest dummy_digest_;
  std::thread worker_;
};

}  // namespace liplink::service
