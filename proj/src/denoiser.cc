//
// Copyright 2026 The SPDG Tools Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "spdg/denoiser.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <mutex>
#include <stdexcept>
#include <string_view>

#include "json.hpp"
#include "spdg/errors.h"

namespace spdg {
namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

// Closes on destruction.
class Fd {
 public:
  Fd() = default;
  explicit Fd(int fd) : fd_(fd) {}
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  ~Fd() { Close(); }

  int get() const { return fd_; }
  void Close() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

 private:
  int fd_ = -1;
};

std::string Encode(const std::vector<HookRecord>& records) {
  std::string out;
  for (const HookRecord& r : records) {
    out += json{{"id", r.id}, {"text", r.text}}.dump(
        -1, ' ', false, json::error_handler_t::replace);
    out.push_back('\n');
  }
  return out;
}

std::vector<HookRecord> Decode(std::string_view output) {
  std::vector<HookRecord> out;
  size_t start = 0;
  while (start < output.size()) {
    size_t end = output.find('\n', start);
    if (end == std::string_view::npos) end = output.size();
    const std::string_view line = output.substr(start, end - start);
    start = end + 1;
    if (line.empty() || line == "\r") continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("id") ||
        !j.contains("text") || !j["id"].is_number_integer() ||
        !j["text"].is_string()) {
      throw HookError("malformed response line: " + std::string(line));
    }
    out.push_back({j["id"].get<int64_t>(), j["text"].get<std::string>()});
  }
  return out;
}

void IgnoreSigpipe() {
  static std::once_flag once;
  std::call_once(once, [] { ::signal(SIGPIPE, SIG_IGN); });
}

}  // namespace

std::vector<HookRecord> ExchangeJsonl(const std::string& command,
                                      const std::vector<HookRecord>& records,
                                      std::chrono::milliseconds timeout) {
  IgnoreSigpipe();
  int to_child[2];
  int from_child[2];
  if (::pipe2(to_child, O_CLOEXEC) != 0) {
    throw HookError(std::string("pipe: ") + std::strerror(errno));
  }
  Fd child_in_r(to_child[0]), child_in_w(to_child[1]);
  if (::pipe2(from_child, O_CLOEXEC) != 0) {
    throw HookError(std::string("pipe: ") + std::strerror(errno));
  }
  Fd child_out_r(from_child[0]), child_out_w(from_child[1]);

  const pid_t pid = ::fork();
  if (pid < 0) throw HookError(std::string("fork: ") + std::strerror(errno));
  if (pid == 0) {
    ::dup2(child_in_r.get(), STDIN_FILENO);
    ::dup2(child_out_w.get(), STDOUT_FILENO);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  child_in_r.Close();
  child_out_w.Close();
  ::fcntl(child_in_w.get(), F_SETFL, O_NONBLOCK);
  ::fcntl(child_out_r.get(), F_SETFL, O_NONBLOCK);

  const std::string request = Encode(records);
  size_t written = 0;
  if (request.empty()) child_in_w.Close();
  std::string response;
  const auto deadline = Clock::now() + timeout;
  bool timed_out = false;
  char buf[1 << 16];

  while (child_out_r.get() >= 0) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - Clock::now());
    if (left.count() <= 0) {
      timed_out = true;
      break;
    }
    pollfd fds[2];
    nfds_t nfds = 0;
    fds[nfds++] = {child_out_r.get(), POLLIN, 0};
    if (child_in_w.get() >= 0) fds[nfds++] = {child_in_w.get(), POLLOUT, 0};
    const int ready = ::poll(fds, nfds, static_cast<int>(left.count()));
    if (ready < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (nfds == 2 && (fds[1].revents & (POLLOUT | POLLERR | POLLHUP))) {
      const ssize_t n = ::write(child_in_w.get(), request.data() + written,
                                request.size() - written);
      if (n > 0) written += static_cast<size_t>(n);
      if (n < 0 && errno != EAGAIN && errno != EINTR) {
        child_in_w.Close();  // the child stopped reading
      } else if (written == request.size()) {
        child_in_w.Close();
      }
    }
    if (fds[0].revents & (POLLIN | POLLHUP | POLLERR)) {
      const ssize_t n = ::read(child_out_r.get(), buf, sizeof(buf));
      if (n > 0) {
        response.append(buf, static_cast<size_t>(n));
      } else if (n == 0 || (errno != EAGAIN && errno != EINTR)) {
        child_out_r.Close();
      }
    }
  }
  child_in_w.Close();
  child_out_r.Close();

  if (timed_out) ::kill(pid, SIGKILL);
  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (timed_out) {
    throw HookError("denoiser command timed out after " +
                    std::to_string(timeout.count()) + " ms");
  }
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    throw HookError("denoiser command failed with status " +
                    std::to_string(WIFEXITED(status) ? WEXITSTATUS(status)
                                                     : -1));
  }

  std::vector<HookRecord> out = Decode(response);
  if (out.size() != records.size()) {
    throw HookError("denoiser returned " + std::to_string(out.size()) +
                    " records for " + std::to_string(records.size()));
  }
  std::vector<int64_t> want;
  want.reserve(records.size());
  for (const HookRecord& r : records) want.push_back(r.id);
  std::sort(want.begin(), want.end());
  std::sort(out.begin(), out.end(),
            [](const HookRecord& a, const HookRecord& b) { return a.id < b.id; });
  for (size_t i = 0; i < out.size(); ++i) {
    if (out[i].id != want[i]) throw HookError("denoiser returned a wrong id set");
  }
  return out;
}

std::vector<HookRecord> DenoiserHook::Apply(
    const std::vector<HookRecord>& records) const {
  if (mode == Mode::kIdentity) return records;
  return ExchangeJsonl(command, records, timeout);
}

std::vector<HookRecord> DenoiseExternal(const DenoiserHook& hook,
                                        const std::vector<HookRecord>& records) {
  if (hook.mode != DenoiserHook::Mode::kExternal) {
    throw std::invalid_argument("DenoiseExternal needs an external hook");
  }
  return hook.Apply(records);
}

}  // namespace spdg
