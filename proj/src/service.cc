#include "dlearn/service.h"

#include <condition_variable>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include "httplib.h"

#include "dlearn/harness.h"
#include "dlearn/syntax.h"

namespace dlearn {

namespace {

struct Session {
  std::string id;
  Json config;
  Signature signature;
  Learner learner;
  std::unique_ptr<DeferredTeacher> teacher;
  std::unique_ptr<RecordingTeacher> recorder;
  std::thread worker;
  mutable std::mutex mu;
  bool halted = false;
  std::string outcome;
};

void Reply(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void Fail(httplib::Response& res, int status, const std::string& reason, const std::string& message) {
  Reply(res, status, Json{{"error", message}, {"reason", reason}});
}

std::size_t OptionalCount(const Json& obj, const char* key, std::size_t fallback) {
  if (!obj.contains(key)) return fallback;
  const Json& v = obj.at(key);
  if (!v.is_number_unsigned()) throw ConfigError(std::string("caps.") + key + " must be a natural number");
  return v.get<std::size_t>();
}

}  // namespace

struct SessionService::Impl {
  ServiceOptions options;
  httplib::Server server;
  std::thread listener;
  std::mutex mu;
  std::condition_variable stopped_cv;
  bool running = false;
  std::size_t next_id = 1;
  std::map<std::string, std::shared_ptr<Session>> sessions;

  explicit Impl(ServiceOptions o) : options(std::move(o)) { Routes(); }

  std::shared_ptr<Session> Find(const std::string& id) {
    std::lock_guard lock(mu);
    auto it = sessions.find(id);
    return it == sessions.end() ? nullptr : it->second;
  }

  void Persist(const Session& s) {
    if (!options.out_dir) return;
    auto dir = *options.out_dir / s.id;
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "transcript.json") << s.recorder->TranscriptJson(s.config).dump(2) << "\n";
    auto events = s.recorder->events();
    std::string hypothesis;
    for (const auto& e : events)
      if (e.type == "HypothesisSnapshot") hypothesis = e.payload.at("text").get<std::string>();
    std::ofstream(dir / "hypothesis.tbox") << hypothesis;
  }

  static void Run(Session& s, Impl& impl) {
    std::optional<TBox> h;
    std::string outcome;
    try {
      h = s.learner(*s.recorder, s.signature);
      outcome = "halted";
    } catch (const SessionClosed&) {
      outcome = "closed";
    } catch (const CapExhausted&) {
      outcome = "cap-exhausted";
    } catch (const TeacherTimeout&) {
      outcome = "timeout";
    } catch (const std::exception& e) {
      outcome = std::string("error: ") + e.what();
    }
    s.recorder->RecordHalt(h, outcome, std::nullopt);
    {
      std::lock_guard lock(s.mu);
      s.halted = true;
      s.outcome = outcome;
    }
    try {
      impl.Persist(s);
    } catch (const std::exception&) {
      // The transcript stays available over the API.
    }
  }

  std::shared_ptr<Session> Create(const Json& body) {
    if (!body.is_object()) throw ConfigError("request body must be a JSON object");
    if (!body.contains("framework") || !body.at("framework").is_string()) throw ConfigError("framework is required");
    if (!body.contains("learner") || !body.at("learner").is_string()) throw ConfigError("learner is required");
    FragmentId f;
    try {
      f = ParseFragmentId(body.at("framework").get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    std::string learner = body.at("learner");
    if (!IsKnownLearner(learner)) throw ConfigError("unknown learner '" + learner + "'");
    if (IsPacLearner(learner)) throw ConfigError("pac learners need sample queries, which a human teacher cannot answer");
    if (!LearnerSupports(learner, f)) throw ConfigError("learner '" + learner + "' does not fit framework " + std::string(ToString(f)));
    Signature sig = SignatureFromJson(body.contains("signature") ? body.at("signature") : Json::object());
    Json caps_json = body.contains("caps") ? body.at("caps") : Json::object();
    if (!caps_json.is_object()) throw ConfigError("caps must be an object");
    LearnerCaps caps;
    caps.max_size = OptionalCount(caps_json, "maxSize", caps.max_size);
    caps.depth_cap = OptionalCount(caps_json, "depthCap", caps.depth_cap);
    std::size_t max_queries = OptionalCount(caps_json, "maxQueries", 0);

    auto s = std::make_shared<Session>();
    {
      std::lock_guard lock(mu);
      s->id = "s" + std::to_string(next_id++);
    }
    s->signature = sig;
    s->learner = MakeLearner(learner, caps, std::nullopt);
    s->config = {{"framework", ToString(f)},
                 {"learner", learner},
                 {"teacher", "deferred"},
                 {"signature", ToJson(sig)},
                 {"caps", {{"max_queries", max_queries}, {"max_size", caps.max_size}, {"depth_cap", caps.depth_cap}}}};
    s->teacher = std::make_unique<DeferredTeacher>(f, options.answer_timeout);
    s->recorder = std::make_unique<RecordingTeacher>(*s->teacher, max_queries);
    {
      std::lock_guard lock(mu);
      sessions[s->id] = s;
    }
    s->worker = std::thread([raw = s.get(), this] { Run(*raw, *this); });
    return s;
  }

  static void Shutdown(Session& s) {
    s.teacher->Close();
    if (s.worker.joinable()) s.worker.join();
  }

  void Routes() {
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Headers", "Content-Type"},
                                {"Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS"}});
    server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    server.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      Json body = Json::parse(req.body, nullptr, false);
      if (body.is_discarded()) return Fail(res, 400, "malformed-request", "body is not valid JSON");
      try {
        auto s = Create(body);
        Reply(res, 201, Json{{"sessionId", s->id}});
      } catch (const ConfigError& e) {
        Fail(res, 400, "invalid-config", e.what());
      } catch (const std::invalid_argument& e) {
        Fail(res, 400, "invalid-config", e.what());
      }
    });

    server.Get(R"(/sessions/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      auto s = Find(req.matches[1]);
      if (!s) return Fail(res, 404, "unknown-session", "no such session");
      std::lock_guard lock(s->mu);
      Reply(res, 200,
            Json{{"sessionId", s->id},
                 {"state", s->halted ? "halted" : "running"},
                 {"outcome", s->halted ? Json(s->outcome) : Json(nullptr)}});
    });

    server.Get(R"(/sessions/([^/]+)/pending)", [this](const httplib::Request& req, httplib::Response& res) {
      auto s = Find(req.matches[1]);
      if (!s) return Fail(res, 404, "unknown-session", "no such session");
      auto p = s->teacher->pending();
      if (!p) {
        res.status = 204;
        return;
      }
      Reply(res, 200, Json{{"kind", ToString(p->kind)}, {"payload", p->payload}, {"step", s->recorder->last_query_step()}});
    });

    server.Post(R"(/sessions/([^/]+)/answer)", [this](const httplib::Request& req, httplib::Response& res) {
      auto s = Find(req.matches[1]);
      if (!s) return Fail(res, 404, "unknown-session", "no such session");
      Json body = Json::parse(req.body, nullptr, false);
      if (body.is_discarded() || !body.is_object()) return Fail(res, 400, "malformed-request", "body is not a JSON object");
      try {
        if (body.contains("answer") && body.at("answer").is_string())
          s->teacher->ReplyYesNo(body.at("answer").get<std::string>());
        else if (body.contains("counterexample") && body.at("counterexample").is_string())
          s->teacher->ReplyCounterexample(body.at("counterexample").get<std::string>());
        else
          return Fail(res, 400, "malformed-request", "expected {answer} or {counterexample}");
      } catch (const DeferredTeacher::BadReply& e) {
        return Fail(res, e.reason() == "no-pending-query" ? 409 : 400, e.reason(), e.what());
      }
      Reply(res, 200, Json{{"accepted", true}});
    });

    server.Get(R"(/sessions/([^/]+)/transcript)", [this](const httplib::Request& req, httplib::Response& res) {
      auto s = Find(req.matches[1]);
      if (!s) return Fail(res, 404, "unknown-session", "no such session");
      Reply(res, 200, s->recorder->TranscriptJson(s->config));
    });

    server.Delete(R"(/sessions/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      std::shared_ptr<Session> s;
      {
        std::lock_guard lock(mu);
        auto it = sessions.find(req.matches[1]);
        if (it == sessions.end()) return Fail(res, 404, "unknown-session", "no such session");
        s = it->second;
        sessions.erase(it);
      }
      Shutdown(*s);
      res.status = 204;
    });
  }
};

SessionService::SessionService(ServiceOptions options) : impl_(std::make_unique<Impl>(std::move(options))) {}

SessionService::~SessionService() { Stop(); }

int SessionService::Start(const std::string& host, int port) {
  int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw BindError("cannot bind " + host + ":" + std::to_string(port));
  {
    std::lock_guard lock(impl_->mu);
    impl_->running = true;
  }
  impl_->listener = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return bound;
}

void SessionService::Wait() {
  std::unique_lock lock(impl_->mu);
  impl_->stopped_cv.wait(lock, [this] { return !impl_->running; });
}

void SessionService::Stop() {
  impl_->server.stop();
  if (impl_->listener.joinable()) impl_->listener.join();
  std::map<std::string, std::shared_ptr<Session>> sessions;
  {
    std::lock_guard lock(impl_->mu);
    sessions.swap(impl_->sessions);
    impl_->running = false;
  }
  impl_->stopped_cv.notify_all();
  for (auto& [id, s] : sessions) Impl::Shutdown(*s);
}

std::pair<std::string, int> ParseBindAddress(const std::string& text) {
  auto colon = text.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == text.size())
    throw std::invalid_argument("bind address must be HOST:PORT");
  std::string port_text = text.substr(colon + 1);
  int port = 0;
  for (char c : port_text) {
    if (c < '0' || c > '9') throw std::invalid_argument("port must be a number");
    port = port * 10 + (c - '0');
    if (port > 65535) throw std::invalid_argument("port out of range");
  }
  return {text.substr(0, colon), port};
}

}  // namespace dlearn
