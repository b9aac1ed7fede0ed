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

#include "test_support.hpp"

#include <signal.h>
#include <fcntl.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <chrono>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

extern char** environ;

namespace liplink::testing {

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> merged_environment(const std::map<std::string, std::string>& extra) {
  std::vector<std::string> env;
  for (char** e = environ; *e != nullptr; ++e) {
    const std::string entry(*e);
    const auto key = entry.substr(0, entry.find('='));
    if (!extra.count(key)) env.push_back(entry);
  }
  for (const auto& [key, value] : extra) env.push_back(key + "=" + value);
  return env;
}

std::vector<char*> pointers(std::vector<std::string>& strings) {
  std::vector<char*> out;
  for (auto& s : strings) out.push_back(s.data());
  out.push_back(nullptr);
  return out;
}

pid_t spawn(const std::vector<std::string>& argv, const std::map<std::string, std::string>& env,
            const fs::path& out, const fs::path& err) {
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_addopen(&actions, STDIN_FILENO, "/dev/null", O_RDONLY, 0);
  posix_spawn_file_actions_addopen(&actions, STDOUT_FILENO, out.c_str(),
                                   O_WRONLY | O_CREAT | O_TRUNC, 0644);
  posix_spawn_file_actions_addopen(&actions, STDERR_FILENO, err.c_str(),
                                   O_WRONLY | O_CREAT | O_TRUNC, 0644);
  auto args = argv;
  auto env_strings = merged_environment(env);
  auto arg_ptrs = pointers(args);
  auto env_ptrs = pointers(env_strings);
  pid_t pid = -1;
  const int rc =
      posix_spawn(&pid, arg_ptrs[0], &actions, nullptr, arg_ptrs.data(), env_ptrs.data());
  posix_spawn_file_actions_destroy(&actions);
  if (rc != 0) throw std::runtime_error("cannot spawn " + argv.at(0));
  return pid;
}

int wait_exit(pid_t pid) {
  int status = 0;
  while (waitpid(pid, &status, 0) < 0) {
    if (errno != EINTR) return -1;
  }
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  if (WIFSIGNALED(status)) return 128 + WTERMSIG(status);
  return -1;
}

fs::path unique_temp(const std::string& prefix) {
  static std::atomic<std::uint64_t> counter{0};
  std::random_device rd;
  return fs::temp_directory_path() /
         (prefix + "-" + std::to_string(getpid()) + "-" + std::to_string(counter++) + "-" +
          std::to_string(rd()));
}

}  // namespace

TempDir::TempDir(const std::string& prefix) : path_(unique_temp(prefix)) {
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

ProcessResult run_process(const std::vector<std::string>& argv,
                          const std::map<std::string, std::string>& env) {
  TempDir io("liplink-proc");
  const pid_t pid = spawn(argv, env, io / "out", io / "err");
  ProcessResult result;
  result.exit_code = wait_exit(pid);
  result.out = slurp(io / "out");
  result.err = slurp(io / "err");
  return result;
}

BackgroundProcess::BackgroundProcess(const std::vector<std::string>& argv, const fs::path& log)
    : pid_(spawn(argv, {}, log, fs::path(log.string() + ".err"))) {}

BackgroundProcess::~BackgroundProcess() { stop(); }

int BackgroundProcess::stop() {
  if (pid_ <= 0) return -1;
  kill(pid_, SIGTERM);
  const int code = wait_exit(pid_);
  pid_ = -1;
  return code;
}

std::string wait_for_file(const fs::path& file, double timeout_seconds) {
  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::duration<double>(timeout_seconds);
  while (std::chrono::steady_clock::now() < deadline) {
    if (fs::exists(file)) {
      const auto text = slurp(file);
      if (!text.empty()) return text;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
  return {};
}

nn::ModelSpec tiny_spec() {
  nn::ModelSpec spec;
  spec.input_side = 8;
  spec.sequence_length = 2;
  spec.conv_blocks = {{2}, {3}};
  spec.lstm_hidden = 4;
  spec.dropout_rate = 0.0;
  spec.dense_units = 5;
  spec.num_classes = 3;
  return spec;
}

media::InputTensorSequence random_sequence(nn::Rng& rng, std::uint32_t length,
                                           std::uint32_t side) {
  media::InputTensorSequence seq;
  seq.length = length;
  seq.side = side;
  seq.values.resize(std::size_t{length} * side * side);
  for (auto& v : seq.values) v = static_cast<float>(rng.uniform());
  return seq;
}

nn::LabeledSequence random_sample(nn::Rng& rng, const nn::ModelSpec& spec, std::uint32_t label) {
  return {random_sequence(rng, spec.sequence_length, spec.input_side), label};
}

}  // namespace liplink::testing
