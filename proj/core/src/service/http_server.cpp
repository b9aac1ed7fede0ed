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

#include "liplink/service/http_server.hpp"

#include <charconv>

#include <httplib.h>

#include "liplink/error.hpp"

namespace liplink::service {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxPayloadBytes = std::size_t{512} << 20;

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  if (status != 204) res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& code,
                const std::string& message) {
  send_json(res, status, {{"error", code}, {"message", message}});
}

std::uint32_t parse_u32(const std::string& text, const char* field) {
  std::uint32_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ApiError(400, "BadRequest", std::string(field) + " must be an unsigned integer");
  }
  return value;
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  auto body = json::parse(req.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) {
    throw ApiError(400, "BadRequest", "body must be a JSON object");
  }
  return body;
}

template <typename T>
T require_field(const json& body, const char* field) {
  if (!body.contains(field)) throw ApiError(400, "BadRequest", std::string("missing ") + field);
  try {
    return body.at(field).get<T>();
  } catch (const json::exception&) {
    throw ApiError(400, "BadRequest", std::string("invalid ") + field);
  }
}

Bytes require_base64(const json& body, const char* field) {
  auto decoded = base64_decode(require_field<std::string>(body, field));
  if (!decoded) throw ApiError(400, "BadRequest", std::string(field) + " is not valid base64");
  return std::move(*decoded);
}

bool is_octet_stream(const httplib::Request& req) {
  return req.get_header_value("Content-Type").rfind("application/octet-stream", 0) == 0;
}

// LVF bytes plus optional landmarks from either envelope.
struct MediaPayload {
  Bytes lvf;
  std::optional<std::string> landmarks;
  json fields;
};

MediaPayload read_media(const httplib::Request& req) {
  MediaPayload out;
  if (is_octet_stream(req)) {
    out.lvf.assign(req.body.begin(), req.body.end());
    out.fields = json::object();
    for (const auto& [key, value] : req.params) out.fields[key] = value;
    return out;
  }
  out.fields = parse_body(req);
  out.lvf = require_base64(out.fields, "lvf_base64");
  if (out.fields.contains("landmarks_base64")) {
    const Bytes raw = require_base64(out.fields, "landmarks_base64");
    out.landmarks = std::string(raw.begin(), raw.end());
  }
  return out;
}

std::uint32_t media_u32(const MediaPayload& media, const char* field,
                        std::optional<std::uint32_t> fallback = std::nullopt) {
  if (!media.fields.contains(field)) {
    if (fallback) return *fallback;
    throw ApiError(400, "BadRequest", std::string("missing ") + field);
  }
  const auto& value = media.fields.at(field);
  if (value.is_string()) return parse_u32(value.get<std::string>(), field);
  if (value.is_number_unsigned()) return value.get<std::uint32_t>();
  throw ApiError(400, "BadRequest", std::string("invalid ") + field);
}

}  // namespace

struct HttpServer::Impl {
  Service& service;
  httplib::Server server;

  explicit Impl(Service& s) : service(s) {}

  using Handler = std::function<ApiResponse(const httplib::Request&)>;
  using AuthedHandler = std::function<ApiResponse(const httplib::Request&, const std::string&)>;

  httplib::Server::Handler wrap(Handler handler) {
    return [handler = std::move(handler)](const httplib::Request& req, httplib::Response& res) {
      try {
        const ApiResponse out = handler(req);
        send_json(res, out.status, out.body);
      } catch (const ApiError& e) {
        send_error(res, e.status(), e.code(), e.what());
      } catch (const Error& e) {
        const int status = e.code() == ErrorCode::kNotFound ? 404 : 500;
        send_error(res, status, std::string(to_string(e.code())), e.what());
      } catch (const std::exception& e) {
        send_error(res, 500, "Internal", e.what());
      }
    };
  }

  httplib::Server::Handler authed(AuthedHandler handler) {
    return wrap([this, handler = std::move(handler)](const httplib::Request& req) {
      const std::string user = service.authenticate(req.get_header_value("Authorization"));
      return handler(req, user);
    });
  }

  void routes() {
    server.Get("/health", wrap([](const httplib::Request&) {
                 return ApiResponse{200, {{"status", "ok"}}};
               }));
    server.Post("/auth/register", wrap([this](const httplib::Request& req) {
                  const json body = parse_body(req);
                  return service.register_user(require_field<std::string>(body, "username"),
                                               require_field<std::string>(body, "password"));
                }));
    server.Post("/auth/login", wrap([this](const httplib::Request& req) {
                  const json body = parse_body(req);
                  return service.login(require_field<std::string>(body, "username"),
                                       require_field<std::string>(body, "password"));
                }));
    server.Post("/recordings",
                authed([this](const httplib::Request& req, const std::string& user) {
                  MediaPayload media = read_media(req);
                  UploadRequest upload;
                  upload.phrase_id = media_u32(media, "phrase_id");
                  upload.repetition_index = media_u32(media, "repetition_index");
                  upload.lvf = std::move(media.lvf);
                  upload.landmarks = std::move(media.landmarks);
                  return service.upload_recording(user, upload);
                }));
    server.Post("/train", authed([this](const httplib::Request& req, const std::string& user) {
                  return service.submit_training(user, parse_body(req));
                }));
    server.Get(R"(/train/([A-Za-z0-9\-]+))",
               authed([this](const httplib::Request& req, const std::string&) {
                 return service.get_job(req.matches[1]);
               }));
    server.Post("/infer", authed([this](const httplib::Request& req, const std::string& user) {
                  MediaPayload media = read_media(req);
                  InferRequest infer;
                  infer.k = media_u32(media, "k", 5);
                  infer.lvf = std::move(media.lvf);
                  infer.landmarks = std::move(media.landmarks);
                  return service.infer(user, infer);
                }));
    server.Post("/selections",
                authed([this](const httplib::Request& req, const std::string& user) {
                  const json body = parse_body(req);
                  return service.select(user, require_field<std::string>(body, "inference_id"),
                                        require_field<std::uint32_t>(body, "chosen_phrase_id"));
                }));
    server.Get("/selections", authed([this](const httplib::Request&, const std::string& user) {
                 return service.selections(user);
               }));
    server.Get("/lexicon", authed([this](const httplib::Request&, const std::string&) {
                 return service.lexicon();
               }));
    server.Post("/lexicon/reload", authed([this](const httplib::Request&, const std::string&) {
                  return service.reload_lexicon();
                }));
  }
};

HttpServer::HttpServer(Service& service, std::size_t worker_threads)
    : impl_(std::make_unique<Impl>(service)) {
  impl_->server.new_task_queue = [worker_threads] {
    return new httplib::ThreadPool(worker_threads);
  };
  impl_->server.set_payload_max_length(kMaxPayloadBytes);
  impl_->routes();
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) throw Error(ErrorCode::kIoError, "cannot bind " + host);
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port)) {
    throw Error(ErrorCode::kIoError, "cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace liplink::service
