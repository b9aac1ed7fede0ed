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

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>

#include <pthread.h>
#include <unistd.h>

#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "liplink/error.hpp"
#include "liplink/io.hpp"
#include "liplink/service/client.hpp"
#include "liplink/service/http_server.hpp"
#include "liplink/service/service.hpp"

namespace liplink::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using service::ApiClient;
using service::ClientResponse;

namespace {

struct ServeArgs {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string data_dir = "liplink-data";
  std::string lexicon;
  std::string port_file;
};

int run_serve(const ServeArgs& args) {
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  service::ServiceOptions options;
  options.data_dir = args.data_dir;
  if (!args.lexicon.empty()) options.lexicon_path = fs::path(args.lexicon);
  service::Service svc(std::move(options));
  service::HttpServer server(svc);
  const int port = server.bind(args.host, args.port);
  if (!args.port_file.empty()) write_file_atomic(args.port_file, std::to_string(port) + "\n");
  std::cout << "listening on http://" << args.host << ":" << port << std::endl;

  std::thread watcher([&server, signals] {
    int received = 0;
    sigwait(&signals, &received);
    server.stop();
  });
  server.listen();
  // Wakes the watcher if listen() returned on its own.
  kill(getpid(), SIGTERM);
  watcher.join();
  std::cout << "stopped" << std::endl;
  return kOk;
}

struct RemoteArgs {
  std::string server = "http://127.0.0.1:8080";
  std::string token;
};

ApiClient make_client(const RemoteArgs& args) {
  ApiClient client(args.server);
  client.set_token(args.token);
  return client;
}

// Prints the failure and returns the exit code for a non-2xx response.
int report_failure(const ClientResponse& response) {
  if (response.status == 0) {
    std::cerr << "error: cannot reach server: " << response.message() << "\n";
  } else {
    std::cerr << "error: " << response.status << " " << response.error_code() << ": "
              << response.message() << "\n";
  }
  return kRuntime;
}

std::optional<std::string> read_optional_text(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return read_text_file(path);
}

void add_remote_flags(CLI::App* cmd, RemoteArgs& args, bool with_token = true) {
  cmd->add_option("--server", args.server, "Service base URL")
      ->envname("LIPLINK_SERVER")
      ->capture_default_str();
  if (with_token) cmd->add_option("--token", args.token, "Session token")->envname("LIPLINK_TOKEN");
}

template <typename Run>
void bind_action(CLI::App* cmd, Action& action, Run run) {
  cmd->callback([&action, run] { action = run; });
}

}  // namespace

void add_remote_commands(CLI::App& app, Action& action) {
  auto serve_args = std::make_shared<ServeArgs>();
  auto* serve = app.add_subcommand("serve", "Run the HTTP service until SIGINT or SIGTERM");
  serve->add_option("--host", serve_args->host, "Listen address")->capture_default_str();
  serve->add_option("--port", serve_args->port, "Listen port (0 picks a free port)")
      ->envname("LIPLINK_PORT")
      ->capture_default_str();
  serve->add_option("--data-dir", serve_args->data_dir, "State and blob directory")
      ->envname("LIPLINK_DATA_DIR")
      ->capture_default_str();
  serve->add_option("--lexicon", serve_args->lexicon, "Phrase lexicon file (JSON)")
      ->envname("LIPLINK_LEXICON");
  serve->add_option("--port-file", serve_args->port_file, "Write the bound port to this file");
  bind_action(serve, action, [serve_args] { return run_serve(*serve_args); });

  struct Credentials {
    RemoteArgs remote;
    std::string username;
    std::string password;
  };
  auto reg_args = std::make_shared<Credentials>();
  auto* reg = app.add_subcommand("register", "Create a user account");
  add_remote_flags(reg, reg_args->remote, false);
  reg->add_option("--username", reg_args->username)->required();
  reg->add_option("--password", reg_args->password)->required();
  bind_action(reg, action, [reg_args] {
    auto client = make_client(reg_args->remote);
    const auto r = client.register_user(reg_args->username, reg_args->password);
    if (!r.ok()) return report_failure(r);
    std::cout << r.body.at("user_id").get<std::string>() << "\n";
    return static_cast<int>(kOk);
  });

  auto login_args = std::make_shared<Credentials>();
  auto* login = app.add_subcommand("login", "Log in and print a session token");
  add_remote_flags(login, login_args->remote, false);
  login->add_option("--username", login_args->username)->required();
  login->add_option("--password", login_args->password)->required();
  bind_action(login, action, [login_args] {
    auto client = make_client(login_args->remote);
    const auto r = client.login(login_args->username, login_args->password);
    if (!r.ok()) return report_failure(r);
    std::cout << r.body.at("token").get<std::string>() << "\n";
    return static_cast<int>(kOk);
  });

  struct UploadArgs {
    RemoteArgs remote;
    std::uint32_t phrase_id = 0;
    std::uint32_t repetition = 0;
    std::string lvf;
    std::string landmarks;
  };
  auto upload_args = std::make_shared<UploadArgs>();
  auto* upload = app.add_subcommand("upload", "Upload a training recording");
  add_remote_flags(upload, upload_args->remote);
  upload->add_option("--phrase-id", upload_args->phrase_id)->required();
  upload->add_option("--rep", upload_args->repetition, "Repetition index")->required();
  upload->add_option("--lvf", upload_args->lvf, "LVF file")->required();
  upload->add_option("--landmarks", upload_args->landmarks, "Landmark track (JSON)");
  bind_action(upload, action, [upload_args] {
    auto client = make_client(upload_args->remote);
    const auto r = client.upload(upload_args->phrase_id, upload_args->repetition,
                                 read_file(upload_args->lvf),
                                 read_optional_text(upload_args->landmarks));
    if (!r.ok()) return report_failure(r);
    std::cout << r.body.at("recording_id").get<std::string>() << "\n";
    return static_cast<int>(kOk);
  });

  struct SubmitArgs {
    RemoteArgs remote;
    std::string spec;
    std::string config;
    bool wait = false;
    double poll_seconds = 0.5;
  };
  auto submit_args = std::make_shared<SubmitArgs>();
  auto* submit = app.add_subcommand("submit", "Submit a training job to the service");
  add_remote_flags(submit, submit_args->remote);
  submit->add_option("--spec", submit_args->spec, "Model spec overrides (JSON)");
  submit->add_option("--config", submit_args->config, "Training config overrides (JSON)");
  submit->add_flag("--wait", submit_args->wait, "Poll until the job finishes");
  submit->add_option("--poll", submit_args->poll_seconds, "Poll interval in seconds")
      ->capture_default_str();
  bind_action(submit, action, [submit_args] {
    json overrides = json::object();
    if (!submit_args->spec.empty()) {
      overrides["model_spec"] = json::parse(read_text_file(submit_args->spec));
    }
    if (!submit_args->config.empty()) {
      overrides["train_config"] = json::parse(read_text_file(submit_args->config));
    }
    auto client = make_client(submit_args->remote);
    auto r = client.submit_training(overrides);
    if (!r.ok()) return report_failure(r);
    const std::string job_id = r.body.at("job_id").get<std::string>();
    std::cout << job_id << "\n";
    if (!submit_args->wait) return static_cast<int>(kOk);
    for (;;) {
      r = client.job(job_id);
      if (!r.ok()) return report_failure(r);
      const std::string state = r.body.at("state").get<std::string>();
      if (state == "succeeded" || state == "failed") {
        std::cout << state;
        if (r.body.contains("model_version")) std::cout << " model_version=" << r.body["model_version"];
        if (r.body.contains("error")) std::cout << " error=" << r.body["error"].get<std::string>();
        std::cout << "\n";
        return state == "succeeded" ? static_cast<int>(kOk) : static_cast<int>(kRuntime);
      }
      std::this_thread::sleep_for(std::chrono::duration<double>(submit_args->poll_seconds));
    }
  });

  struct JobArgs {
    RemoteArgs remote;
    std::string job_id;
  };
  auto job_args = std::make_shared<JobArgs>();
  auto* job = app.add_subcommand("job", "Show a training job");
  add_remote_flags(job, job_args->remote);
  job->add_option("--id", job_args->job_id)->required();
  bind_action(job, action, [job_args] {
    auto client = make_client(job_args->remote);
    const auto r = client.job(job_args->job_id);
    if (!r.ok()) return report_failure(r);
    std::cout << r.body.dump(2) << "\n";
    return static_cast<int>(kOk);
  });

  struct InferArgs {
    RemoteArgs remote;
    std::string lvf;
    std::string landmarks;
    std::uint32_t k = 5;
  };
  auto infer_args = std::make_shared<InferArgs>();
  auto* infer = app.add_subcommand("infer", "Rank phrase candidates for a recording");
  add_remote_flags(infer, infer_args->remote);
  infer->add_option("--lvf", infer_args->lvf, "LVF file")->required();
  infer->add_option("--landmarks", infer_args->landmarks, "Landmark track (JSON)");
  infer->add_option("--k", infer_args->k, "Number of candidates")->capture_default_str();
  bind_action(infer, action, [infer_args] {
    auto client = make_client(infer_args->remote);
    const auto r = client.infer(read_file(infer_args->lvf), infer_args->k,
                                read_optional_text(infer_args->landmarks));
    if (!r.ok()) return report_failure(r);
    std::cerr << "inference_id=" << r.body.at("inference_id").get<std::string>()
              << " model_version=" << r.body.at("model_version") << "\n";
    for (const auto& c : r.body.at("candidates")) {
      char prefix[64];
      std::snprintf(prefix, sizeof prefix, "%u %u %.4f ", c.at("rank").get<unsigned>(),
                    c.at("phrase_id").get<unsigned>(), c.at("probability").get<double>());
      std::cout << prefix << c.at("text").get<std::string>() << "\n";
    }
    return static_cast<int>(kOk);
  });

  struct SelectArgs {
    RemoteArgs remote;
    std::string inference_id;
    std::uint32_t phrase_id = 0;
  };
  auto select_args = std::make_shared<SelectArgs>();
  auto* select = app.add_subcommand("select", "Record the phrase chosen for an inference");
  add_remote_flags(select, select_args->remote);
  select->add_option("--inference-id", select_args->inference_id)->required();
  select->add_option("--phrase-id", select_args->phrase_id)->required();
  bind_action(select, action, [select_args] {
    auto client = make_client(select_args->remote);
    const auto r = client.select(select_args->inference_id, select_args->phrase_id);
    if (!r.ok()) return report_failure(r);
    std::cout << "selected " << select_args->phrase_id << "\n";
    return static_cast<int>(kOk);
  });

  auto selections_args = std::make_shared<RemoteArgs>();
  auto* selections = app.add_subcommand("selections", "Export your selection events (JSON)");
  add_remote_flags(selections, *selections_args);
  bind_action(selections, action, [selections_args] {
    auto client = make_client(*selections_args);
    const auto r = client.selections();
    if (!r.ok()) return report_failure(r);
    std::cout << r.body.dump(2) << "\n";
    return static_cast<int>(kOk);
  });

  struct LexiconArgs {
    RemoteArgs remote;
    bool reload = false;
  };
  auto lexicon_args = std::make_shared<LexiconArgs>();
  auto* lexicon = app.add_subcommand("lexicon", "Print the phrase lexicon");
  add_remote_flags(lexicon, lexicon_args->remote);
  lexicon->add_flag("--reload", lexicon_args->reload, "Re-read the lexicon file first");
  bind_action(lexicon, action, [lexicon_args] {
    auto client = make_client(lexicon_args->remote);
    const auto r = lexicon_args->reload ? client.reload_lexicon() : client.lexicon();
    if (!r.ok()) return report_failure(r);
    std::cout << "version " << r.body.at("version") << "\n";
    for (const auto& p : r.body.at("phrases")) {
      std::cout << p.at("id") << " " << p.at("text").get<std::string>() << "\n";
    }
    return static_cast<int>(kOk);
  });
}

}  // namespace liplink::cli
