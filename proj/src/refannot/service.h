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

// Elicitation experiments. A participant gets the scenes of an experiment in
// a seeded order and describes the target of each; every description is
// annotated and checked against the scene. The session moves on when the
// description identifies the target, or when the participant insists after
// at least two failed attempts, and the final description is persisted.
//
// Persistence is a set of append-only JSON-lines logs in the data directory:
// sessions.jsonl records session starts and expiries, and
// <experiment>.responses.jsonl holds one StoredResponse per (session, scene).
// A restarted service rebuilds its sessions from these logs.

#ifndef REFANNOT_SERVICE_H_
#define REFANNOT_SERVICE_H_

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "refannot/corpus.h"
#include "refannot/feedback.h"
#include "refannot/lexicon.h"
#include "refannot/parser.h"
#include "refannot/serialization.h"

namespace refannot {

struct LexiconConfig {
  std::string path;
  // Schema or corpus document. Defaults to the corpus of the first
  // experiment that uses the lexicon.
  std::string schema_path;
};

struct ExperimentConfig {
  std::string id;
  std::string corpus_path;
  std::string lexicon_id;
  Language language = Language::kEnglish;
  uint64_t seed = 0;
  // Scene ids shown to participants; all corpus scenes when empty.
  std::vector<std::string> scenes;
};

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string data_dir = "data";
  double session_idle_timeout_s = 1800;
  std::map<std::string, LexiconConfig> lexicons;
  std::vector<ExperimentConfig> experiments;
};

// Relative paths in the file are resolved against its directory. The
// environment variables REFANNOT_PORT and REFANNOT_DATA_DIR override the
// port and the data directory.
ServiceConfig LoadServiceConfig(const std::string &path);
ServiceConfig ParseServiceConfig(std::string_view text,
                                 const std::string &base_dir);
void ApplyEnvironment(ServiceConfig *config);

struct Attempt {
  std::string text;
  FeedbackVerdict verdict;
  std::string timestamp;
};

struct SessionView {
  std::string id;
  std::string experiment;
  std::string participant;
  std::vector<std::string> trial_order;
  size_t cursor = 0;
  bool expired = false;
  // Attempts at the current trial.
  std::vector<Attempt> attempts;

  bool completed() const { return cursor >= trial_order.size(); }
};

struct StoredResponse {
  std::string session;
  std::string experiment;
  std::string participant;
  std::string scene;
  std::string lexicon;
  Language language = Language::kEnglish;
  std::string text;
  AnnotationResult annotation;
  FeedbackVerdict verdict;
  size_t attempts = 0;
  bool overridden = false;
  std::string timestamp;
};

Json ToJson(const StoredResponse &response);
StoredResponse StoredResponseFromJson(const Json &j);

struct SubmitOutcome {
  FeedbackVerdict verdict;
  AnnotationResult annotation;
  size_t attempt = 0;  // 1-based, within the trial
  bool advanced = false;
  bool overridden = false;
  SessionView session;
};

// Attempts needed on a trial before an override is honoured.
inline constexpr size_t kAttemptsBeforeOverride = 2;

class ElicitationService {
 public:
  using Clock = std::function<std::chrono::system_clock::time_point()>;

  // Loads every lexicon and corpus and replays the logs in
  // config.data_dir, creating it if needed. Throws on invalid configuration.
  explicit ElicitationService(ServiceConfig config, Clock clock = nullptr);
  ~ElicitationService();

  ElicitationService(const ElicitationService &) = delete;
  ElicitationService &operator=(const ElicitationService &) = delete;

  // Error(kNotFound) for an unknown experiment, Error(kInvalidArgument) for
  // an empty participant id.
  SessionView StartSession(const std::string &experiment,
                           const std::string &participant);
  // Error(kNotFound) for unknown sessions, Error(kConflict) for expired ones.
  SessionView GetSession(const std::string &session);
  // The scene at the cursor, or nullopt once all trials are done.
  std::optional<Scene> CurrentScene(const std::string &session);
  // Error(kRetryable) when `text` has no tokens; Error(kConflict) when the
  // session is expired or complete.
  SubmitOutcome Submit(const std::string &session, const std::string &text,
                       bool override_requested);

  // Stateless. Error(kNotFound) for an unknown lexicon.
  AnnotationResult AnnotateText(const std::string &text, Language language,
                                const std::string &lexicon);

  // Durable responses of an experiment in log order.
  std::vector<StoredResponse> Responses(const std::string &experiment);

  // Closes sessions idle for longer than the configured timeout. Returns how
  // many were closed.
  size_t ExpireIdle();

  const ServiceConfig &config() const { return config_; }
  // Warnings from startup (skipped log lines and the like).
  const std::vector<std::string> &warnings() const { return warnings_; }

  struct Lexicon;
  struct Experiment;
  struct Session;

 private:
  Session &FindSession(const std::string &id);
  void CheckOpen(Session &session);
  void Replay();
  std::string Now() const;
  std::string NewSessionId();

  ServiceConfig config_;
  Clock clock_;
  std::map<std::string, std::unique_ptr<Lexicon>> lexicons_;
  std::map<std::string, std::unique_ptr<Experiment>> experiments_;

  std::mutex mu_;  // guards sessions_ and the sessions log
  std::map<std::string, std::unique_ptr<Session>> sessions_;
  std::vector<std::string> warnings_;
};

struct ReplayResult {
  size_t checked = 0;
  // One message per response whose annotation or verdict differs.
  std::vector<std::string> mismatches;
  // Unreadable log lines.
  std::vector<std::string> warnings;
};

// Re-runs every stored response of `experiment` through the library with
// the configured lexicon and scene.
ReplayResult ReplayResponses(const ServiceConfig &config,
                                         const std::string &experiment);

// Trial order for a participant: seeded permutation of `scenes`.
std::vector<std::string> TrialOrder(const std::vector<std::string> &scenes,
                                    uint64_t seed,
                                    const std::string &participant);

}  // namespace refannot

#endif  // REFANNOT_SERVICE_H_
