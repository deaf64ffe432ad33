// Copyright 2026 The refannot Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "refannot/http_server.h"

#include <atomic>
#include <chrono>
#include <iostream>
#include <thread>

#include "httplib.h"
#include "refannot/error.h"

namespace refannot {

namespace {

const char kJson[] = "application/json";

std::string CodeSlug(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kNotFound: return "not_found";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kSchemaViolation: return "schema_violation";
    case ErrorCode::kStatistics: return "statistics";
    case ErrorCode::kConflict: return "conflict";
    case ErrorCode::kRetryable: return "retryable";
    case ErrorCode::kInternal: return "internal";
  }
  return "internal";
}

void Reply(httplib::Response &res, int status, const Json &body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void ReplyError(httplib::Response &res, ErrorCode code,
                const std::string &message) {
  Reply(res, HttpStatus(code),
        {{"error",
          {{"code", CodeSlug(code)},
           {"message", message},
           {"retryable", code == ErrorCode::kRetryable}}}});
}

Json ParseBody(const httplib::Request &req) {
  Json body = Json::parse(req.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) {
    throw Error(ErrorCode::kInvalidArgument, "request body must be a JSON object");
  }
  return body;
}

std::string RequiredString(const Json &body, const char *field) {
  auto it = body.find(field);
  if (it == body.end() || !it->is_string()) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("missing string field '") + field + "'");
  }
  return it->get<std::string>();
}

Json SessionJson(const SessionView &view) {
  return {{"session", view.id},
          {"experiment", view.experiment},
          {"participant", view.participant},
          {"trial_order", view.trial_order},
          {"cursor", view.cursor},
          {"trials", view.trial_order.size()},
          {"attempts", view.attempts.size()},
          {"completed", view.completed()}};
}

}  // namespace

int HttpStatus(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kParse:
    case ErrorCode::kSchemaViolation:
    case ErrorCode::kRetryable:
      return 400;
    case ErrorCode::kNotFound: return 404;
    case ErrorCode::kConflict: return 409;
    default: return 500;
  }
}

struct HttpServer::Impl {
  ElicitationService *service;
  httplib::Server server;
  std::atomic<bool> stopping{false};
  std::thread sweeper;

  // Runs a handler and maps exceptions to error responses.
  template <typename Fn>
  httplib::Server::Handler Wrap(Fn fn) {
    return [fn](const httplib::Request &req, httplib::Response &res) {
      try {
        fn(req, res);
      } catch (const Error &e) {
        ReplyError(res, e.code(), e.what());
      } catch (const std::exception &e) {
        ReplyError(res, ErrorCode::kInternal, e.what());
      }
    };
  }

  void Routes() {
    server.Get("/healthz", Wrap([](const httplib::Request &,
                                   httplib::Response &res) {
      Reply(res, 200, {{"status", "ok"}});
    }));

    server.Post("/sessions", Wrap([this](const httplib::Request &req,
                                         httplib::Response &res) {
      Json body = ParseBody(req);
      SessionView view = service->StartSession(
          RequiredString(body, "experiment"), RequiredString(body, "participant"));
      Reply(res, 201, SessionJson(view));
    }));

    server.Get(R"(/sessions/([^/]+)/current-scene)",
               Wrap([this](const httplib::Request &req, httplib::Response &res) {
                 std::string id = req.matches[1];
                 std::optional<Scene> scene = service->CurrentScene(id);
                 SessionView view = service->GetSession(id);
                 Json body = SessionJson(view);
                 body["scene"] = scene ? ToJson(*scene) : Json(nullptr);
                 Reply(res, 200, body);
               }));

    server.Post(R"(/sessions/([^/]+)/submissions)",
                Wrap([this](const httplib::Request &req, httplib::Response &res) {
                  Json body = ParseBody(req);
                  bool override_requested = body.value("override", false);
                  SubmitOutcome outcome = service->Submit(
                      req.matches[1], RequiredString(body, "text"),
                      override_requested);
                  Reply(res, 200,
                        {{"verdict", ToJson(outcome.verdict)},
                         {"annotation", ToJson(outcome.annotation)},
                         {"attempt", outcome.attempt},
                         {"advanced", outcome.advanced},
                         {"override", outcome.overridden},
                         {"session", SessionJson(outcome.session)}});
                }));

    server.Post("/annotate", Wrap([this](const httplib::Request &req,
                                         httplib::Response &res) {
      Json body = ParseBody(req);
      Language language = ParseLanguage(body.value("language", "english"));
      Reply(res, 200,
            ToJson(service->AnnotateText(RequiredString(body, "text"), language,
                                         RequiredString(body, "lexicon"))));
    }));

    server.Get(R"(/experiments/([^/]+)/responses)",
               Wrap([this](const httplib::Request &req, httplib::Response &res) {
                 std::string id = req.matches[1];
                 Json responses = Json::array();
                 for (const StoredResponse &r : service->Responses(id)) {
                   responses.push_back(ToJson(r));
                 }
                 Reply(res, 200,
                       {{"experiment", id}, {"responses", responses}});
               }));
  }
};

HttpServer::HttpServer(ElicitationService *service)
    : impl_(std::make_unique<Impl>()) {
  impl_->service = service;
  impl_->Routes();
}

HttpServer::~HttpServer() { Stop(); }

int HttpServer::Bind(const std::string &host, int port) {
  int bound = port == 0 ? impl_->server.bind_to_any_port(host)
                        : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound <= 0) {
    throw Error(ErrorCode::kIo,
                "cannot bind " + host + ":" + std::to_string(port));
  }
  return bound;
}

void HttpServer::Serve() {
  impl_->sweeper = std::thread([impl = impl_.get()] {
    while (!impl->stopping) {
      for (int i = 0; i < 50 && !impl->stopping; ++i) {
        std::this_thread::sleep_for(std::chrono::milliseconds(100));
      }
      if (!impl->stopping) impl->service->ExpireIdle();
    }
  });
  impl_->server.listen_after_bind();
  impl_->stopping = true;
  if (impl_->sweeper.joinable()) impl_->sweeper.join();
}

void HttpServer::Stop() {
  impl_->stopping = true;
  impl_->server.stop();
}

}  // namespace refannot
