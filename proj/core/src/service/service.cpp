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

#include "liplink/service/service.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>

#include "liplink/dataset/split.hpp"
#include "liplink/error.hpp"
#include "liplink/media/landmarks.hpp"
#include "liplink/media/lvf.hpp"
#include "liplink/media/preprocess.hpp"
#include "liplink/nn/weights_io.hpp"

namespace liplink::service {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::size_t kMinPasswordCodePoints = 8;
constexpr std::size_t kMaxUsernameBytes = 128;

struct JobCancelled : std::runtime_error {
  JobCancelled() : std::runtime_error("service shutting down") {}
};

std::size_t utf8_code_points(std::string_view text) {
  return static_cast<std::size_t>(std::count_if(text.begin(), text.end(), [](char c) {
    return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
  }));
}

std::string format_id(const char* prefix, std::size_t n, int width) {
  char buffer[48];
  std::snprintf(buffer, sizeof buffer, "%s-%0*zu", prefix, width, n);
  return buffer;
}

json digest_json(const PasswordDigest& d) {
  return {{"algorithm", d.algorithm},
          {"salt", d.salt_hex},
          {"iterations", d.iterations},
          {"digest", d.digest_hex}};
}

PasswordDigest digest_from_json(const json& j) {
  PasswordDigest d;
  d.algorithm = j.at("algorithm").get<std::string>();
  d.salt_hex = j.at("salt").get<std::string>();
  d.iterations = j.at("iterations").get<std::uint32_t>();
  d.digest_hex = j.at("digest").get<std::string>();
  return d;
}

std::vector<json> read_jsonl(const fs::path& file) {
  std::vector<json> lines;
  std::ifstream in(file);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    // A torn final line from a crash mid-append is dropped.
    auto parsed = json::parse(line, nullptr, false);
    if (!parsed.is_discarded()) lines.push_back(std::move(parsed));
  }
  return lines;
}

media::InputTensorSequence decode_and_preprocess(std::span<const std::uint8_t> lvf,
                                                 const std::optional<std::string>& landmarks,
                                                 const media::RoiConfig& roi,
                                                 std::uint32_t length) {
  try {
    const auto frames = media::decode_lvf(lvf);
    std::optional<media::LandmarkTrack> track;
    if (landmarks) track = media::parse_landmarks(*landmarks);
    return media::preprocess_recording(frames, track, roi, length);
  } catch (const Error& e) {
    throw ApiError(400, "BadLvf", e.what());
  }
}

}  // namespace

std::string_view to_string(JobState state) {
  switch (state) {
    case JobState::kQueued: return "queued";
    case JobState::kRunning: return "running";
    case JobState::kSucceeded: return "succeeded";
    case JobState::kFailed: return "failed";
  }
  return "unknown";
}

Service::Service(ServiceOptions options) : options_(std::move(options)) {
  if (!options_.clock) options_.clock = [] { return std::chrono::system_clock::now(); };
  if (!options_.trainer) {
    options_.trainer = [](const nn::ModelSpec& spec, const nn::TrainingSet& data,
                          const nn::TrainConfig& config, const nn::TrainHooks& hooks) {
      return nn::train(spec, data, config, hooks);
    };
  }
  options_.roi.validate();
  fs::create_directories(options_.data_dir);
  store_ = std::make_unique<LocalBlobStore>(options_.data_dir / "blobs");
  lexicon_ = read_lexicon_source();
  dummy_digest_ = hash_password("liplink-dummy-password", options_.password_iterations);
  load_state();
  worker_ = std::thread([this] { worker_loop(); });
}

Service::~Service() {
  {
    std::lock_guard lock(jobs_mutex_);
    stopping_ = true;
    cancel_ = true;
  }
  jobs_cv_.notify_all();
  if (worker_.joinable()) worker_.join();
}

std::int64_t Service::now_seconds() const {
  return std::chrono::duration_cast<std::chrono::seconds>(options_.clock().time_since_epoch())
      .count();
}

dataset::PhraseLexicon Service::read_lexicon_source() const {
  if (!options_.lexicon_path) return dataset::placeholder_lexicon();
  return dataset::load_lexicon(read_text_file(*options_.lexicon_path));
}

void Service::append_line(const fs::path& file, const json& line) {
  std::lock_guard lock(files_mutex_);
  std::ofstream out(options_.data_dir / file, std::ios::app | std::ios::binary);
  out << line.dump() << '\n';
  out.flush();
  if (!out) throw Error(ErrorCode::kIoError, "cannot append to " + file.string());
}

void Service::load_state() {
  for (const auto& j : read_jsonl(options_.data_dir / "users.jsonl")) {
    User u;
    u.user_id = j.at("user_id").get<std::string>();
    u.username = j.at("username").get<std::string>();
    u.digest = digest_from_json(j.at("password_digest"));
    u.created_at = j.at("created_at").get<std::int64_t>();
    users_by_name_[u.username] = std::move(u);
  }
  for (const auto& j : read_jsonl(options_.data_dir / "recordings.jsonl")) {
    Recording r;
    r.recording_id = j.at("recording_id").get<std::string>();
    r.user_id = j.at("user_id").get<std::string>();
    r.phrase_id = j.at("phrase_id").get<std::uint32_t>();
    r.repetition_index = j.at("repetition_index").get<std::uint32_t>();
    r.lvf_ref = j.at("lvf_ref").get<std::string>();
    if (j.contains("landmarks_ref")) r.landmarks_ref = j.at("landmarks_ref").get<std::string>();
    r.content_hash = j.at("content_hash").get<std::string>();
    r.created_at = j.at("created_at").get<std::int64_t>();
    recording_by_key_[r.user_id + "|" + std::to_string(r.phrase_id) + "|" +
                      std::to_string(r.repetition_index) + "|" + r.content_hash] =
        r.recording_id;
    recordings_.push_back(std::move(r));
  }
  for (const auto& j : read_jsonl(options_.data_dir / "inferences.jsonl")) {
    Inference inf;
    inf.inference_id = j.at("inference_id").get<std::string>();
    inf.user_id = j.at("user_id").get<std::string>();
    inf.model_version = j.at("model_version").get<std::uint64_t>();
    inf.candidates = j.at("candidates").get<std::vector<std::uint32_t>>();
    inferences_[inf.inference_id] = std::move(inf);
  }
  for (auto& j : read_jsonl(options_.data_dir / "selections.jsonl")) {
    auto it = inferences_.find(j.at("inference_id").get<std::string>());
    if (it != inferences_.end()) it->second.selected = true;
    selection_log_.push_back(std::move(j));
  }
  const auto model_file = options_.data_dir / "model.json";
  if (fs::exists(model_file)) {
    const auto j = json::parse(read_text_file(model_file));
    auto snapshot = std::make_shared<ModelSnapshot>();
    snapshot->version = j.at("version").get<std::uint64_t>();
    snapshot->weights_ref = j.at("weights_ref").get<std::string>();
    snapshot->phrases = j.at("phrases").get<std::vector<std::string>>();
    snapshot->weights = nn::load_weights(store_->get(snapshot->weights_ref));
    std::atomic_store(&current_, std::shared_ptr<const ModelSnapshot>(std::move(snapshot)));
  }
  next_job_ = 1;
}

ApiResponse Service::register_user(std::string_view username, std::string_view password) {
  if (username.empty() || username.size() > kMaxUsernameBytes) {
    throw ApiError(400, "InvalidUsername", "username must be 1 to 128 bytes");
  }
  if (utf8_code_points(password) < kMinPasswordCodePoints) {
    throw ApiError(400, "WeakPassword", "password must have at least 8 characters");
  }
  {
    std::shared_lock lock(users_mutex_);
    if (users_by_name_.count(std::string(username))) {
      throw ApiError(409, "UsernameTaken", "username already registered");
    }
  }
  User user;
  user.username = std::string(username);
  user.digest = hash_password(password, options_.password_iterations);
  user.created_at = now_seconds();

  std::unique_lock lock(users_mutex_);
  if (users_by_name_.count(user.username)) {
    throw ApiError(409, "UsernameTaken", "username already registered");
  }
  user.user_id = "usr-" + std::to_string(users_by_name_.size() + 1);
  append_line("users.jsonl", {{"user_id", user.user_id},
                              {"username", user.username},
                              {"password_digest", digest_json(user.digest)},
                              {"created_at", user.created_at}});
  const std::string id = user.user_id;
  users_by_name_[user.username] = std::move(user);
  return {201, {{"user_id", id}}};
}

ApiResponse Service::login(std::string_view username, std::string_view password) {
  std::optional<User> user;
  {
    std::shared_lock lock(users_mutex_);
    auto it = users_by_name_.find(std::string(username));
    if (it != users_by_name_.end()) user = it->second;
  }
  const bool ok = user ? verify_password(password, user->digest)
                       : (verify_password(password, dummy_digest_), false);
  if (!ok) throw ApiError(401, "BadCredentials", "invalid username or password");

  const std::string token = random_hex(16);
  const auto expires = options_.clock() + options_.token_ttl;
  {
    std::lock_guard lock(sessions_mutex_);
    sessions_[token] = Session{user->user_id, expires};
  }
  const auto expires_s =
      std::chrono::duration_cast<std::chrono::seconds>(expires.time_since_epoch()).count();
  return {200, {{"token", token}, {"user_id", user->user_id}, {"expires_at", expires_s}}};
}

std::string Service::authenticate(std::string_view authorization) {
  constexpr std::string_view kPrefix = "Bearer ";
  if (authorization.substr(0, kPrefix.size()) != kPrefix) {
    throw ApiError(401, "Unauthorized", "missing bearer token");
  }
  const std::string token(authorization.substr(kPrefix.size()));
  std::lock_guard lock(sessions_mutex_);
  auto it = sessions_.find(token);
  if (it == sessions_.end()) throw ApiError(401, "Unauthorized", "unknown token");
  if (options_.clock() >= it->second.expires_at) {
    sessions_.erase(it);
    throw ApiError(401, "TokenExpired", "token expired");
  }
  return it->second.user_id;
}

ApiResponse Service::upload_recording(const std::string& user_id, const UploadRequest& request) {
  {
    std::shared_lock lock(lexicon_mutex_);
    if (!lexicon_.contains(request.phrase_id)) {
      throw ApiError(404, "UnknownPhrase",
                     "phrase_id " + std::to_string(request.phrase_id) + " not in lexicon");
    }
  }
  decode_and_preprocess(request.lvf, request.landmarks, options_.roi, options_.sequence_length);

  const std::string lvf_hash = sha256_hex(request.lvf);
  const std::string content_hash =
      request.landmarks ? sha256_hex(lvf_hash + ":" + sha256_hex(*request.landmarks)) : lvf_hash;
  const std::string key = user_id + "|" + std::to_string(request.phrase_id) + "|" +
                          std::to_string(request.repetition_index) + "|" + content_hash;
  {
    std::shared_lock lock(registry_mutex_);
    auto it = recording_by_key_.find(key);
    if (it != recording_by_key_.end()) return {200, {{"recording_id", it->second}}};
  }

  Recording rec;
  rec.user_id = user_id;
  rec.phrase_id = request.phrase_id;
  rec.repetition_index = request.repetition_index;
  rec.lvf_ref = store_->put(request.lvf);
  if (request.landmarks) {
    const auto& text = *request.landmarks;
    rec.landmarks_ref = store_->put(std::span<const std::uint8_t>(
        reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
  }
  rec.content_hash = content_hash;
  rec.created_at = now_seconds();

  std::unique_lock lock(registry_mutex_);
  auto it = recording_by_key_.find(key);
  if (it != recording_by_key_.end()) return {200, {{"recording_id", it->second}}};
  rec.recording_id = format_id("rec", recordings_.size() + 1, 6);
  json line = {{"recording_id", rec.recording_id},
               {"user_id", rec.user_id},
               {"phrase_id", rec.phrase_id},
               {"repetition_index", rec.repetition_index},
               {"lvf_ref", rec.lvf_ref},
               {"content_hash", rec.content_hash},
               {"created_at", rec.created_at}};
  if (rec.landmarks_ref) line["landmarks_ref"] = *rec.landmarks_ref;
  append_line("recordings.jsonl", line);
  recording_by_key_[key] = rec.recording_id;
  const std::string id = rec.recording_id;
  recordings_.push_back(std::move(rec));
  return {201, {{"recording_id", id}}};
}

ApiResponse Service::submit_training(const std::string& user_id, const json& overrides) {
  if (!overrides.is_null() && !overrides.is_object()) {
    throw ApiError(400, "InvalidOverrides", "body must be a JSON object");
  }
  TrainingJob job;
  job.submitted_by = user_id;
  {
    std::shared_lock lock(lexicon_mutex_);
    job.phrases = lexicon_.phrases;
  }
  try {
    json spec_overrides = json::object();
    json config_overrides = json::object();
    if (overrides.is_object()) {
      for (const auto& [key, value] : overrides.items()) {
        if (key == "model_spec") {
          spec_overrides = value;
        } else if (key == "train_config") {
          config_overrides = value;
        } else {
          throw ApiError(400, "InvalidOverrides", "unknown field '" + key + "'");
        }
      }
    }
    if (!spec_overrides.is_object() || !config_overrides.is_object()) {
      throw ApiError(400, "InvalidOverrides", "overrides must be JSON objects");
    }
    for (const char* fixed : {"input_side", "sequence_length", "num_classes"}) {
      if (spec_overrides.contains(fixed)) {
        throw ApiError(400, "InvalidOverrides",
                       std::string(fixed) + " is fixed by the service configuration");
      }
    }
    job.spec = nn::model_spec_from_json(spec_overrides, options_.default_spec);
    job.spec.input_side = options_.roi.output_size;
    job.spec.sequence_length = options_.sequence_length;
    job.spec.num_classes = static_cast<std::uint32_t>(job.phrases.size());
    job.spec.validate();
    job.config = nn::train_config_from_json(config_overrides, options_.default_config);
    job.config.validate();
  } catch (const Error& e) {
    throw ApiError(400, "InvalidOverrides", e.what());
  }

  {
    std::set<std::uint32_t> covered;
    std::shared_lock lock(registry_mutex_);
    for (const auto& r : recordings_) covered.insert(r.phrase_id);
    for (std::uint32_t p = 0; p < job.phrases.size(); ++p) {
      if (!covered.count(p)) {
        throw ApiError(422, "InsufficientData",
                       "phrase " + std::to_string(p) + " has no recordings");
      }
    }
  }

  std::lock_guard lock(jobs_mutex_);
  if (stopping_) throw ApiError(503, "ShuttingDown", "service is stopping");
  const std::size_t depth = queue_.size() + (running_ ? 1 : 0);
  if (depth >= 2) throw ApiError(409, "JobAlreadyRunning", "training queue is full");
  job.job_id = "job-" + std::to_string(next_job_++);
  job.state = JobState::kQueued;
  const std::string id = job.job_id;
  json body = job_json(job);
  jobs_[id] = std::move(job);
  queue_.push_back(id);
  jobs_cv_.notify_all();
  return {202, std::move(body)};
}

json Service::job_json(const TrainingJob& job) const {
  json j = {{"job_id", job.job_id},
            {"state", to_string(job.state)},
            {"model_spec", nn::to_json(job.spec)},
            {"train_config", nn::to_json(job.config)},
            {"submitted_by", job.submitted_by},
            {"epochs_completed", job.epochs_completed}};
  if (job.result_weights_ref) j["result_weights_ref"] = *job.result_weights_ref;
  if (job.model_version) j["model_version"] = *job.model_version;
  if (job.history) j["history"] = nn::to_json(*job.history);
  if (job.error) j["error"] = *job.error;
  return j;
}

ApiResponse Service::get_job(const std::string& job_id) const {
  std::lock_guard lock(jobs_mutex_);
  auto it = jobs_.find(job_id);
  if (it == jobs_.end()) throw ApiError(404, "UnknownJob", "no job " + job_id);
  return {200, job_json(it->second)};
}

void Service::wait_for_idle() {
  std::unique_lock lock(jobs_mutex_);
  jobs_cv_.wait(lock, [this] { return (queue_.empty() && !running_) || stopping_; });
}

void Service::worker_loop() {
  for (;;) {
    std::string job_id;
    {
      std::unique_lock lock(jobs_mutex_);
      jobs_cv_.wait(lock, [this] { return stopping_ || !queue_.empty(); });
      if (stopping_) return;
      job_id = queue_.front();
      queue_.pop_front();
      running_ = job_id;
      jobs_.at(job_id).state = JobState::kRunning;
    }
    run_job(job_id);
    {
      std::lock_guard lock(jobs_mutex_);
      running_.reset();
    }
    jobs_cv_.notify_all();
  }
}

nn::TrainingSet Service::assemble_training_set(const TrainingJob& job) const {
  std::vector<Recording> recordings;
  {
    std::shared_lock lock(registry_mutex_);
    for (const auto& r : recordings_) {
      if (r.phrase_id < job.phrases.size()) recordings.push_back(r);
    }
  }
  std::map<std::string, nn::LabeledSequence> samples;
  std::vector<dataset::SplitItem> items;
  for (const auto& r : recordings) {
    std::optional<std::string> landmarks;
    if (r.landmarks_ref) {
      const Bytes raw = store_->get(*r.landmarks_ref);
      landmarks = std::string(raw.begin(), raw.end());
    }
    samples[r.recording_id] = nn::LabeledSequence{
        decode_and_preprocess(store_->get(r.lvf_ref), landmarks, options_.roi,
                              options_.sequence_length),
        r.phrase_id};
    items.push_back({r.recording_id, r.phrase_id});
  }
  const auto split = dataset::split_train_val(items, options_.split_ratio, job.config.seed);
  nn::TrainingSet data;
  for (const auto& id : split.train) data.train.push_back(samples.at(id));
  for (const auto& id : split.validation) data.validation.push_back(samples.at(id));
  // With a single recording per phrase, early stopping watches the training set.
  if (split.validation_empty) data.validation = data.train;
  return data;
}

void Service::run_job(const std::string& job_id) {
  TrainingJob job;
  {
    std::lock_guard lock(jobs_mutex_);
    job = jobs_.at(job_id);
  }
  try {
    const nn::TrainingSet data = assemble_training_set(job);
    nn::TrainHooks hooks;
    hooks.on_epoch_end = [this, &job_id](std::uint32_t epoch, const nn::ModelWeights<float>&) {
      if (cancel_) throw JobCancelled();
      std::lock_guard lock(jobs_mutex_);
      jobs_.at(job_id).epochs_completed = epoch + 1;
    };
    nn::TrainResult result = options_.trainer(job.spec, data, job.config, hooks);

    auto snapshot = std::make_shared<ModelSnapshot>();
    snapshot->weights_ref = store_->put(nn::save_weights(result.weights));
    snapshot->weights = std::move(result.weights);
    snapshot->phrases = job.phrases;
    {
      std::lock_guard lock(files_mutex_);
      const auto previous = std::atomic_load(&current_);
      snapshot->version = previous ? previous->version + 1 : 1;
      const json model = {{"version", snapshot->version},
                          {"weights_ref", snapshot->weights_ref},
                          {"phrases", snapshot->phrases},
                          {"job_id", job_id}};
      write_file_atomic(options_.data_dir / "model.json", model.dump(2) + "\n");
      std::atomic_store(&current_, std::shared_ptr<const ModelSnapshot>(snapshot));
    }
    std::lock_guard lock(jobs_mutex_);
    auto& stored = jobs_.at(job_id);
    stored.state = JobState::kSucceeded;
    stored.result_weights_ref = snapshot->weights_ref;
    stored.model_version = snapshot->version;
    stored.history = std::move(result.history);
  } catch (const std::exception& e) {
    std::lock_guard lock(jobs_mutex_);
    auto& stored = jobs_.at(job_id);
    stored.state = JobState::kFailed;
    stored.error = e.what();
  }
}

std::shared_ptr<const ModelSnapshot> Service::current_model() const {
  return std::atomic_load(&current_);
}

ApiResponse Service::infer(const std::string& user_id, const InferRequest& request) {
  const auto model = current_model();
  if (!model) throw ApiError(503, "NoModel", "no trained model available");
  const std::uint32_t classes = model->weights.spec.num_classes;
  if (request.k < 1 || request.k > classes) {
    throw ApiError(400, "BadK", "k must be in [1, " + std::to_string(classes) + "]");
  }
  const auto input = decode_and_preprocess(request.lvf, request.landmarks, options_.roi,
                                           model->weights.spec.sequence_length);
  const auto ranked = nn::predict_topk(model->weights, input, request.k);

  Inference record;
  record.inference_id = random_hex(16);
  record.user_id = user_id;
  record.model_version = model->version;
  json candidates = json::array();
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    record.candidates.push_back(ranked[i].class_id);
    candidates.push_back({{"rank", i + 1},
                          {"phrase_id", ranked[i].class_id},
                          {"text", model->phrases.at(ranked[i].class_id)},
                          {"probability", ranked[i].probability}});
  }
  {
    std::lock_guard lock(inference_mutex_);
    append_line("inferences.jsonl", {{"inference_id", record.inference_id},
                                     {"user_id", record.user_id},
                                     {"model_version", record.model_version},
                                     {"candidates", record.candidates},
                                     {"created_at", now_seconds()}});
    inferences_[record.inference_id] = record;
  }
  return {200,
          {{"inference_id", record.inference_id},
           {"model_version", model->version},
           {"weights_ref", model->weights_ref},
           {"candidates", std::move(candidates)}}};
}

ApiResponse Service::select(const std::string& user_id, const std::string& inference_id,
                            std::uint32_t phrase_id) {
  std::lock_guard lock(inference_mutex_);
  auto it = inferences_.find(inference_id);
  if (it == inferences_.end() || it->second.user_id != user_id) {
    throw ApiError(404, "UnknownInference", "no inference " + inference_id);
  }
  auto& inference = it->second;
  if (inference.selected) {
    throw ApiError(409, "AlreadySelected", "inference already has a selection");
  }
  const auto pos = std::find(inference.candidates.begin(), inference.candidates.end(), phrase_id);
  if (pos == inference.candidates.end()) {
    throw ApiError(422, "NotACandidate",
                   "phrase " + std::to_string(phrase_id) + " was not among the candidates");
  }
  json event = {{"user_id", user_id},
                {"inference_id", inference_id},
                {"chosen_phrase_id", phrase_id},
                {"rank_of_choice", (pos - inference.candidates.begin()) + 1},
                {"model_version", inference.model_version},
                {"timestamp", now_seconds()}};
  append_line("selections.jsonl", event);
  inference.selected = true;
  selection_log_.push_back(std::move(event));
  return {204, nullptr};
}

ApiResponse Service::selections(const std::string& user_id) const {
  json events = json::array();
  std::lock_guard lock(inference_mutex_);
  for (const auto& e : selection_log_) {
    if (e.at("user_id") == user_id) events.push_back(e);
  }
  return {200, {{"selections", std::move(events)}}};
}

ApiResponse Service::lexicon() const {
  std::shared_lock lock(lexicon_mutex_);
  json phrases = json::array();
  for (std::uint32_t i = 0; i < lexicon_.size(); ++i) {
    phrases.push_back({{"id", i}, {"text", lexicon_.phrases[i]}});
  }
  return {200, {{"version", lexicon_.version}, {"phrases", std::move(phrases)}}};
}

ApiResponse Service::reload_lexicon() {
  dataset::PhraseLexicon fresh;
  try {
    fresh = read_lexicon_source();
  } catch (const Error& e) {
    throw ApiError(400, "BadLexicon", e.what());
  }
  {
    std::unique_lock lock(lexicon_mutex_);
    if (fresh.phrases != lexicon_.phrases) {
      lexicon_.version = std::max(fresh.version, lexicon_.version + 1);
      lexicon_.phrases = std::move(fresh.phrases);
    }
  }
  return lexicon();
}

}  // namespace liplink::service
