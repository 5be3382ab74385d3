// HTTP session service: each session runs a learner against a deferred
// teacher whose answers arrive over the API.
//
//   POST   /sessions                {framework, learner, signature, caps} -> 201 {sessionId}
//   GET    /sessions/{id}           -> {sessionId, state, outcome}
//   GET    /sessions/{id}/pending   -> 200 {kind, payload, step} | 204
//   POST   /sessions/{id}/answer    {answer: "yes"|"no"} | {counterexample}
//   GET    /sessions/{id}/transcript
//   DELETE /sessions/{id}
//
// Errors are {error, reason} with a 4xx status.

#ifndef DLEARN_SERVICE_H_
#define DLEARN_SERVICE_H_

#include <chrono>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

namespace dlearn {

class BindError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ServiceOptions {
  // Halted sessions write <out_dir>/<sessionId>/transcript.json and hypothesis.tbox.
  std::optional<std::filesystem::path> out_dir;
  std::chrono::milliseconds answer_timeout = std::chrono::hours(24);
};

class SessionService {
 public:
  explicit SessionService(ServiceOptions options = {});
  ~SessionService();
  SessionService(const SessionService&) = delete;
  SessionService& operator=(const SessionService&) = delete;

  // Binds and serves on a background thread; port 0 picks a free port.
  // Returns the bound port. Throws BindError.
  int Start(const std::string& host, int port);
  // Blocks until Stop() is called from elsewhere.
  void Wait();
  // Stops serving and closes every session.
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// "HOST:PORT"; throws std::invalid_argument.
std::pair<std::string, int> ParseBindAddress(const std::string& text);

}  // namespace dlearn

#endif  // DLEARN_SERVICE_H_
