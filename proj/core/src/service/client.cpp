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

#include "liplink/service/client.hpp"

#include <httplib.h>

#include "liplink/service/crypto.hpp"

namespace liplink::service {

using nlohmann::json;

std::string ClientResponse::error_code() const {
  if (status == 0) return "TransportError";
  if (body.is_object() && body.contains("error") && body["error"].is_string()) {
    return body["error"].get<std::string>();
  }
  return "HTTP" + std::to_string(status);
}

std::string ClientResponse::message() const {
  if (status == 0) return transport_error;
  if (body.is_object() && body.contains("message") && body["message"].is_string()) {
    return body["message"].get<std::string>();
  }
  return {};
}

struct ApiClient::Impl {
  httplib::Client client;

  explicit Impl(const std::string& base_url) : client(base_url) {
    client.set_connection_timeout(std::chrono::seconds(10));
    client.set_read_timeout(std::chrono::seconds(300));
    client.set_write_timeout(std::chrono::seconds(300));
  }
};

namespace {

ClientResponse convert(const httplib::Result& result) {
  ClientResponse out;
  if (!result) {
    out.transport_error = httplib::to_string(result.error());
    return out;
  }
  out.status = result->status;
  if (!result->body.empty()) {
    out.body = json::parse(result->body, nullptr, false);
    if (out.body.is_discarded()) out.body = json{{"raw", result->body}};
  }
  return out;
}

std::string as_string(const Bytes& bytes) { return std::string(bytes.begin(), bytes.end()); }

std::string to_base64(const std::string& text) {
  return base64_encode(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace

ApiClient::ApiClient(const std::string& base_url) : impl_(std::make_unique<Impl>(base_url)) {}

ApiClient::~ApiClient() = default;
ApiClient::ApiClient(ApiClient&&) noexcept = default;
ApiClient& ApiClient::operator=(ApiClient&&) noexcept = default;

namespace {
httplib::Headers auth_headers(const std::string& token) {
  httplib::Headers headers;
  if (!token.empty()) headers.emplace("Authorization", "Bearer " + token);
  return headers;
}
}  // namespace

ClientResponse ApiClient::health() { return convert(impl_->client.Get("/health")); }

ClientResponse ApiClient::register_user(const std::string& username,
                                        const std::string& password) {
  const json body = {{"username", username}, {"password", password}};
  return convert(impl_->client.Post("/auth/register", body.dump(), "application/json"));
}

ClientResponse ApiClient::login(const std::string& username, const std::string& password) {
  const json body = {{"username", username}, {"password", password}};
  return convert(impl_->client.Post("/auth/login", body.dump(), "application/json"));
}

ClientResponse ApiClient::upload(std::uint32_t phrase_id, std::uint32_t repetition_index,
                                 const Bytes& lvf, const std::optional<std::string>& landmarks) {
  if (!landmarks) {
    const std::string path = "/recordings?phrase_id=" + std::to_string(phrase_id) +
                             "&repetition_index=" + std::to_string(repetition_index);
    return convert(impl_->client.Post(path, auth_headers(token_), as_string(lvf),
                                      "application/octet-stream"));
  }
  const json body = {{"phrase_id", phrase_id},
                     {"repetition_index", repetition_index},
                     {"lvf_base64", base64_encode(lvf)},
                     {"landmarks_base64", to_base64(*landmarks)}};
  return convert(
      impl_->client.Post("/recordings", auth_headers(token_), body.dump(), "application/json"));
}

ClientResponse ApiClient::submit_training(const json& overrides) {
  return convert(
      impl_->client.Post("/train", auth_headers(token_), overrides.dump(), "application/json"));
}

ClientResponse ApiClient::job(const std::string& job_id) {
  return convert(impl_->client.Get("/train/" + job_id, auth_headers(token_)));
}

ClientResponse ApiClient::infer(const Bytes& lvf, std::uint32_t k,
                                const std::optional<std::string>& landmarks) {
  if (!landmarks) {
    return convert(impl_->client.Post("/infer?k=" + std::to_string(k), auth_headers(token_),
                                      as_string(lvf), "application/octet-stream"));
  }
  const json body = {
      {"k", k}, {"lvf_base64", base64_encode(lvf)}, {"landmarks_base64", to_base64(*landmarks)}};
  return convert(
      impl_->client.Post("/infer", auth_headers(token_), body.dump(), "application/json"));
}

ClientResponse ApiClient::select(const std::string& inference_id, std::uint32_t phrase_id) {
  const json body = {{"inference_id", inference_id}, {"chosen_phrase_id", phrase_id}};
  return convert(
      impl_->client.Post("/selections", auth_headers(token_), body.dump(), "application/json"));
}

ClientResponse ApiClient::selections() {
  return convert(impl_->client.Get("/selections", auth_headers(token_)));
}

ClientResponse ApiClient::lexicon() {
  return convert(impl_->client.Get("/lexicon", auth_headers(token_)));
}

ClientResponse ApiClient::reload_lexicon() {
  return convert(impl_->client.Post("/lexicon/reload", auth_headers(token_), "", "application/json"));
}

}  // namespace liplink::service
