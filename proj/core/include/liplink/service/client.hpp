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

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "liplink/io.hpp"

namespace liplink::service {

struct ClientResponse {
  int status = 0;  // 0 when the request never completed
  nlohmann::json body;
  std::string transport_error;

  bool ok() const { return status >= 200 && status < 300; }
  // Error code from the body, or the transport error.
  std::string error_code() const;
  std::string message() const;
};

// Blocking client for the service HTTP API.
class ApiClient {
 public:
  // base_url like "http://127.0.0.1:8080".
  explicit ApiClient(const std::string& base_url);
  ~ApiClient();
  ApiClient(ApiClient&&) noexcept;
  ApiClient& operator=(ApiClient&&) noexcept;

  void set_token(std::string token) { token_ = std::move(token); }
  const std::string& token() const { return token_; }

  ClientResponse health();
  ClientResponse register_user(const std::string& username, const std::string& password);
  ClientResponse login(const std::string& username, const std::string& password);
  ClientResponse upload(std::uint32_t phrase_id, std::uint32_t repetition_index,
                        const Bytes& lvf, const std::optional<std::string>& landmarks = {});
  ClientResponse submit_training(const nlohmann::json& overrides = nlohmann::json::object());
  ClientResponse job(const std::string& job_id);
  ClientResponse infer(const Bytes& lvf, std::uint32_t k = 5,
                       const std::optional<std::string>& landmarks = {});
  ClientResponse select(const std::string& inference_id, std::uint32_t phrase_id);
  ClientResponse selections();
  ClientResponse lexicon();
  ClientResponse reload_lexicon();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::string token_;
};

}  // namespace liplink::service
