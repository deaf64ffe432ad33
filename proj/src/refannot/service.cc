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

#include "refannot/service.h"

#include <time.h>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>

#include "refannot/error.h"
#include "refannot/fileutil.h"

namespace refannot {

namespace fs = std::filesystem;

struct ElicitationService::Lexicon {
  std::string id;
  MappingTable table;
  DomainSchema schema;
};

struct ElicitationService::Experiment {
  ExperimentConfig config;
  Corpus corpus;
  const Lexicon *lexicon = nullptr;
  std::vector<std::string> scenes;
  std::string log_path;
  std::mutex log_mu;
  std::set<std::pair<std::string, std::string>> stored;  // (session, scene)
};

struct ElicitationService::Session {
  SessionView view;
  Experiment *experiment = nullptr;
  std::chrono::system_clock::time_point last_active;
  std::mutex mu;
};

namespace {

const char kSessionsLog[] = "sessions.jsonl";

std::string Resolve(const std::string &path, const std::string &base_dir) {
  if (path.empty() || fs::path(path).is_absolute() || base_dir.empty()) {
    return path;
  }
  return (fs::path(base_dir) / path).lexically_normal().string();
}

uint64_t Fnv1a(std::string_view text) {
  uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string FormatTime(std::chrono::system_clock::time_point t) {
  std::time_t seconds = std::chrono::system_clock::to_time_t(t);
  std::tm tm;
  gmtime_r(&seconds, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

// Lines of a JSON-lines log. Malformed lines are reported and skipped. With
// `repair`, an unterminated last line (a torn append) is terminated so later
// appends start on a fresh line.
std::vector<Json> ReadLog(const std::string &path,
                          std::vector<std::string> *warnings,
                          bool repair = false) {
  std::vector<Json> records;
  std::error_code ec;
  if (!fs::exists(path, ec)) return records;
  std::string text = ReadFile(path);
  // A crash mid-append leaves an unterminated last line. Terminate it so
  // later appends start on a fresh line.
  const bool torn = !text.empty() && text.back() != '\n';
  if (torn && repair) AppendLineDurable(path, "");
  std::istringstream in(text);
  std::string line;
  size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    Json record = Json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object()) {
      if (warnings) {
        const bool last = in.peek() == std::char_traits<char>::eof();
        warnings->push_back(path + ":" + std::to_string(number) +
                            (torn && last ? ": torn record skipped"
                                          : ": malformed record skipped"));
      }
      continue;
    }
    records.push_back(std::move(record));
  }
  return records;
}

}  // namespace

ServiceConfig ParseServiceConfig(std::string_view text,
                                 const std::string &base_dir) {
  ServiceConfig config;
  try {
    Json doc = Json::parse(text);
    config.host = doc.value("host", config.host);
    config.port = doc.value("port", config.port);
    config.data_dir = Resolve(doc.value("data_dir", config.data_dir), base_dir);
    config.session_idle_timeout_s =
        doc.value("session_idle_timeout_s", config.session_idle_timeout_s);
    if (doc.contains("lexicons")) {
      for (const auto &[id, j] : doc.at("lexicons").items()) {
        LexiconConfig lexicon;
        if (j.is_string()) {
          lexicon.path = Resolve(j.get<std::string>(), base_dir);
        } else {
          lexicon.path = Resolve(j.at("path").get<std::string>(), base_dir);
          lexicon.schema_path = Resolve(j.value("schema", ""), base_dir);
        }
        config.lexicons[id] = std::move(lexicon);
      }
    }
    if (doc.contains("experiments")) {
      for (const Json &j : doc.at("experiments")) {
        ExperimentConfig experiment;
        experiment.id = j.at("id").get<std::string>();
        experiment.corpus_path =
            Resolve(j.at("corpus").get<std::string>(), base_dir);
        experiment.lexicon_id = j.at("lexicon").get<std::string>();
        experiment.language = ParseLanguage(j.value("language", "english"));
        experiment.seed = j.value("seed", uint64_t{0});
        if (j.contains("scenes")) {
          experiment.scenes = j.at("scenes").get<std::vector<std::string>>();
        }
        config.experiments.push_back(std::move(experiment));
      }
    }
  } catch (const Json::exception &e) {
    throw Error(ErrorCode::kParse, std::string("service config: ") + e.what());
  }
  if (config.port < 0 || config.port > 65535) {
    throw Error(ErrorCode::kInvalidArgument, "service config: port out of range");
  }
  if (config.session_idle_timeout_s <= 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "service config: session_idle_timeout_s must be positive");
  }
  return config;
}

void ApplyEnvironment(ServiceConfig *config) {
  if (const char *port = std::getenv("REFANNOT_PORT"); port && *port) {
    char *end = nullptr;
    long value = std::strtol(port, &end, 10);
    if (*end != '\0' || value < 0 || value > 65535) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string("REFANNOT_PORT is not a port: ") + port);
    }
    config->port = static_cast<int>(value);
  }
  if (const char *dir = std::getenv("REFANNOT_DATA_DIR"); dir && *dir) {
    config->data_dir = dir;
  }
}

ServiceConfig LoadServiceConfig(const std::string &path) {
  std::string base = fs::path(path).parent_path().string();
  ServiceConfig config = ParseServiceConfig(ReadFile(path), base);
  ApplyEnvironment(&config);
  return config;
}

std::vector<std::string> TrialOrder(const std::vector<std::string> &scenes,
                                    uint64_t seed,
                                    const std::string &participant) {
  std::vector<size_t> order =
      SeededPermutation(scenes.size(), seed ^ Fnv1a(participant));
  std::vector<std::string> result;
  for (size_t i : order) result.push_back(scenes[i]);
  return result;
}

Json ToJson(const StoredResponse &r) {
  return {{"session", r.session},
          {"experiment", r.experiment},
          {"participant", r.participant},
          {"scene", r.scene},
          {"lexicon", r.lexicon},
          {"language", LanguageName(r.language)},
          {"text", r.text},
          {"annotation", ToJson(r.annotation)},
          {"verdict", ToJson(r.verdict)},
          {"attempts", r.attempts},
          {"override", r.overridden},
          {"timestamp", r.timestamp}};
}

StoredResponse StoredResponseFromJson(const Json &j) {
  StoredResponse r;
  r.session = j.at("session").get<std::string>();
  r.experiment = j.at("experiment").get<std::string>();
  r.participant = j.value("participant", "");
  r.scene = j.at("scene").get<std::string>();
  r.lexicon = j.value("lexicon", "");
  r.language = ParseLanguage(j.value("language", "english"));
  r.text = j.at("text").get<std::string>();
  r.annotation = AnnotationResultFromJson(j.at("annotation"));
  r.verdict = VerdictFromJson(j.at("verdict"));
  r.attempts = j.at("attempts").get<size_t>();
  r.overridden = j.value("override", false);
  r.timestamp = j.value("timestamp", "");
  return r;
}

namespace {

// Loads the lexicons and corpora a configuration names and checks that they
// agree with each other.
void LoadResources(
    const ServiceConfig &config,
    std::map<std::string, std::unique_ptr<ElicitationService::Lexicon>>
        *lexicons,
    std::map<std::string, std::unique_ptr<ElicitationService::Experiment>>
        *experiments) {
  std::map<std::string, Corpus> corpora;
  for (const ExperimentConfig &e : config.experiments) {
    if (e.id.empty() || e.id.find_first_of("/\\.") != std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument,
                  "experiment id '" + e.id + "' must be a plain name");
    }
    if (experiments->contains(e.id)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate experiment '" + e.id + "'");
    }
    if (!config.lexicons.contains(e.lexicon_id)) {
      throw Error(ErrorCode::kNotFound, "experiment '" + e.id +
                                            "' uses unknown lexicon '" +
                                            e.lexicon_id + "'");
    }
    auto experiment = std::make_unique<ElicitationService::Experiment>();
    experiment->config = e;
    experiment->corpus = LoadCorpus(e.corpus_path);
    if (e.scenes.empty()) {
      for (const Scene &scene : experiment->corpus.scenes) {
        experiment->scenes.push_back(scene.id);
      }
    } else {
      for (const std::string &id : e.scenes) {
        if (experiment->corpus.FindScene(id) == nullptr) {
          throw Error(ErrorCode::kNotFound, "experiment '" + e.id +
                                                "' lists unknown scene '" +
                                                id + "'");
        }
        experiment->scenes.push_back(id);
      }
    }
    if (experiment->scenes.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "experiment '" + e.id + "' has no scenes");
    }
    experiment->log_path =
        (fs::path(config.data_dir) / (e.id + ".responses.jsonl")).string();
    (*experiments)[e.id] = std::move(experiment);
  }

  for (const auto &[id, lc] : config.lexicons) {
    auto lexicon = std::make_unique<ElicitationService::Lexicon>();
    lexicon->id = id;
    lexicon->table = LoadLexicon(lc.path);
    if (!lc.schema_path.empty()) {
      lexicon->schema = LoadSchema(lc.schema_path);
    } else {
      const ElicitationService::Experiment *user = nullptr;
      for (const ExperimentConfig &e : config.experiments) {
        if (e.lexicon_id == id) {
          user = experiments->at(e.id).get();
          break;
        }
      }
      if (user == nullptr) {
        throw Error(ErrorCode::kInvalidArgument,
                    "lexicon '" + id +
                        "' has no schema and no experiment that uses it");
      }
      lexicon->schema = user->corpus.schema;
    }
    CheckConsistency(lexicon->table, lexicon->schema);
    (*lexicons)[id] = std::move(lexicon);
  }

  for (auto &[id, experiment] : *experiments) {
    experiment->lexicon = lexicons->at(experiment->config.lexicon_id).get();
    CheckConsistency(experiment->lexicon->table, experiment->corpus.schema);
  }
}

}  // namespace

ElicitationService::ElicitationService(ServiceConfig config, Clock clock)
    : config_(std::move(config)), clock_(std::move(clock)) {
  if (!clock_) clock_ = [] { return std::chrono::system_clock::now(); };
  LoadResources(config_, &lexicons_, &experiments_);
  std::error_code ec;
  fs::create_directories(config_.data_dir, ec);
  if (!fs::is_directory(config_.data_dir)) {
    throw Error(ErrorCode::kIo,
                "cannot create data directory '" + config_.data_dir + "'");
  }
  Replay();
}

ElicitationService::~ElicitationService() = default;

std::string ElicitationService::Now() const { return FormatTime(clock_()); }

std::string ElicitationService::NewSessionId() {
  static thread_local std::mt19937_64 rng(std::random_device{}());
  char buffer[33];
  std::snprintf(buffer, sizeof(buffer), "%016llx%016llx",
                static_cast<unsigned long long>(rng()),
                static_cast<unsigned long long>(rng()));
  return buffer;
}

void ElicitationService::Replay() {
  const std::string sessions_log =
      (fs::path(config_.data_dir) / kSessionsLog).string();
  const auto now = clock_();
  for (const Json &record : ReadLog(sessions_log, &warnings_, true)) {
    std::string event = record.value("event", "");
    std::string id = record.value("session", "");
    if (event == "start") {
      auto it = experiments_.find(record.value("experiment", ""));
      if (it == experiments_.end()) {
        warnings_.push_back("session " + id + ": experiment no longer configured");
        continue;
      }
      auto session = std::make_unique<Session>();
      session->experiment = it->second.get();
      session->view.id = id;
      session->view.experiment = it->first;
      session->view.participant = record.value("participant", "");
      session->view.trial_order =
          record.value("trial_order", std::vector<std::string>{});
      session->last_active = now;
      sessions_[id] = std::move(session);
    } else if (event == "expire") {
      auto it = sessions_.find(id);
      if (it != sessions_.end()) it->second->view.expired = true;
    }
  }

  for (auto &[id, experiment] : experiments_) {
    for (const Json &record : ReadLog(experiment->log_path, &warnings_, true)) {
      std::string session_id = record.value("session", "");
      std::string scene = record.value("scene", "");
      experiment->stored.insert({session_id, scene});
      auto it = sessions_.find(session_id);
      if (it == sessions_.end()) continue;
      SessionView &view = it->second->view;
      for (size_t k = 0; k < view.trial_order.size(); ++k) {
        if (view.trial_order[k] == scene && k + 1 > view.cursor) {
          view.cursor = k + 1;
        }
      }
    }
  }
}

SessionView ElicitationService::StartSession(const std::string &experiment,
                                             const std::string &participant) {
  auto it = experiments_.find(experiment);
  if (it == experiments_.end()) {
    throw Error(ErrorCode::kNotFound, "unknown experiment '" + experiment + "'");
  }
  if (participant.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "participant id is empty");
  }
  auto session = std::make_unique<Session>();
  session->experiment = it->second.get();
  session->view.experiment = experiment;
  session->view.participant = participant;
  session->view.trial_order =
      TrialOrder(it->second->scenes, it->second->config.seed, participant);
  session->last_active = clock_();

  std::lock_guard<std::mutex> lock(mu_);
  do {
    session->view.id = NewSessionId();
  } while (sessions_.contains(session->view.id));
  Json record = {{"event", "start"},
                 {"session", session->view.id},
                 {"experiment", experiment},
                 {"participant", participant},
                 {"trial_order", session->view.trial_order},
                 {"timestamp", Now()}};
  AppendLineDurable((fs::path(config_.data_dir) / kSessionsLog).string(),
                    record.dump());
  SessionView view = session->view;
  sessions_[view.id] = std::move(session);
  return view;
}

ElicitationService::Session &ElicitationService::FindSession(
    const std::string &id) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) {
    throw Error(ErrorCode::kNotFound, "unknown session '" + id + "'");
  }
  return *it->second;
}

// Caller holds session.mu.
void ElicitationService::CheckOpen(Session &session) {
  if (!session.view.expired) {
    auto idle = std::chrono::duration<double>(clock_() - session.last_active);
    if (idle.count() > config_.session_idle_timeout_s) {
      session.view.expired = true;
      Json record = {{"event", "expire"},
                     {"session", session.view.id},
                     {"timestamp", Now()}};
      std::lock_guard<std::mutex> lock(mu_);
      AppendLineDurable((fs::path(config_.data_dir) / kSessionsLog).string(),
                        record.dump());
      std::cerr << "session " << session.view.id << " expired after "
                << idle.count() << "s idle\n";
    }
  }
  if (session.view.expired) {
    throw Error(ErrorCode::kConflict,
                "session '" + session.view.id + "' has expired");
  }
  session.last_active = clock_();
}

SessionView ElicitationService::GetSession(const std::string &id) {
  Session &session = FindSession(id);
  std::lock_guard<std::mutex> lock(session.mu);
  CheckOpen(session);
  return session.view;
}

std::optional<Scene> ElicitationService::CurrentScene(const std::string &id) {
  Session &session = FindSession(id);
  std::lock_guard<std::mutex> lock(session.mu);
  CheckOpen(session);
  if (session.view.completed()) return std::nullopt;
  return *session.experiment->corpus.FindScene(
      session.view.trial_order[session.view.cursor]);
}

SubmitOutcome ElicitationService::Submit(const std::string &id,
                                         const std::string &text,
                                         bool override_requested) {
  Session &session = FindSession(id);
  std::lock_guard<std::mutex> lock(session.mu);
  CheckOpen(session);
  SessionView &view = session.view;
  if (view.completed()) {
    throw Error(ErrorCode::kConflict,
                "session '" + id + "' has completed all trials");
  }
  Experiment &experiment = *session.experiment;
  const Language language = experiment.config.language;
  std::vector<std::string> tokens = Tokenize(text, language);
  if (tokens.empty()) {
    throw Error(ErrorCode::kRetryable, "empty description; please describe "
                                       "the highlighted object");
  }
  const std::string &scene_id = view.trial_order[view.cursor];
  const Scene &scene = *experiment.corpus.FindScene(scene_id);

  SubmitOutcome outcome;
  outcome.annotation = Annotate({tokens, language, scene_id},
                                experiment.lexicon->table,
                                experiment.corpus.schema);
  outcome.verdict = Check(outcome.annotation, scene, experiment.corpus.schema);
  const size_t prior = view.attempts.size();
  view.attempts.push_back({text, outcome.verdict, Now()});
  outcome.attempt = view.attempts.size();

  const bool unique = outcome.verdict.status == FeedbackStatus::kUnique;
  outcome.overridden =
      !unique && override_requested && prior >= kAttemptsBeforeOverride;
  if (unique || outcome.overridden) {
    StoredResponse response;
    response.session = id;
    response.experiment = view.experiment;
    response.participant = view.participant;
    response.scene = scene_id;
    response.lexicon = experiment.lexicon->id;
    response.language = language;
    response.text = text;
    response.annotation = outcome.annotation;
    response.verdict = outcome.verdict;
    response.attempts = outcome.attempt;
    response.overridden = outcome.overridden;
    response.timestamp = view.attempts.back().timestamp;
    {
      std::lock_guard<std::mutex> log_lock(experiment.log_mu);
      if (!experiment.stored.insert({id, scene_id}).second) {
        throw Error(ErrorCode::kInternal, "response for session '" + id +
                                              "' and scene '" + scene_id +
                                              "' already stored");
      }
      try {
        AppendLineDurable(experiment.log_path, ToJson(response).dump());
      } catch (...) {
        experiment.stored.erase({id, scene_id});
        throw;
      }
    }
    ++view.cursor;
    view.attempts.clear();
    outcome.advanced = true;
  }
  outcome.session = view;
  return outcome;
}

AnnotationResult ElicitationService::AnnotateText(const std::string &text,
                                                  Language language,
                                                  const std::string &lexicon) {
  auto it = lexicons_.find(lexicon);
  if (it == lexicons_.end()) {
    throw Error(ErrorCode::kNotFound, "unknown lexicon '" + lexicon + "'");
  }
  return Annotate({Tokenize(text, language), language, ""}, it->second->table,
                  it->second->schema);
}

std::vector<StoredResponse> ElicitationService::Responses(
    const std::string &experiment) {
  auto it = experiments_.find(experiment);
  if (it == experiments_.end()) {
    throw Error(ErrorCode::kNotFound, "unknown experiment '" + experiment + "'");
  }
  std::vector<Json> records;
  {
    std::lock_guard<std::mutex> lock(it->second->log_mu);
    records = ReadLog(it->second->log_path, nullptr);
  }
  std::vector<StoredResponse> responses;
  for (const Json &record : records) {
    try {
      responses.push_back(StoredResponseFromJson(record));
    } catch (const std::exception &) {
      // Skipped, as at startup.
    }
  }
  return responses;
}

size_t ElicitationService::ExpireIdle() {
  std::vector<Session *> sessions;
  {
    std::lock_guard<std::mutex> lock(mu_);
    for (auto &[id, session] : sessions_) sessions.push_back(session.get());
  }
  size_t expired = 0;
  for (Session *session : sessions) {
    std::lock_guard<std::mutex> lock(session->mu);
    if (session->view.expired) continue;
    auto idle = std::chrono::duration<double>(clock_() - session->last_active);
    if (idle.count() <= config_.session_idle_timeout_s) continue;
    try {
      CheckOpen(*session);
    } catch (const Error &) {
      ++expired;
    }
  }
  return expired;
}

ReplayResult ReplayResponses(const ServiceConfig &config,
                                         const std::string &experiment_id) {
  std::map<std::string, std::unique_ptr<ElicitationService::Lexicon>> lexicons;
  std::map<std::string, std::unique_ptr<ElicitationService::Experiment>>
      experiments;
  LoadResources(config, &lexicons, &experiments);
  auto it = experiments.find(experiment_id);
  if (it == experiments.end()) {
    throw Error(ErrorCode::kNotFound,
                "unknown experiment '" + experiment_id + "'");
  }
  const ElicitationService::Experiment &experiment = *it->second;
  ReplayResult result;
  std::vector<std::string> &mismatches = result.mismatches;
  for (const Json &record : ReadLog(experiment.log_path, &result.warnings)) {
    StoredResponse stored;
    try {
      stored = StoredResponseFromJson(record);
    } catch (const std::exception &e) {
      result.warnings.push_back(std::string("unreadable response: ") + e.what());
      continue;
    }
    ++result.checked;
    const std::string at =
        "session " + stored.session + " scene " + stored.scene + ": ";
    const Scene *scene = experiment.corpus.FindScene(stored.scene);
    if (scene == nullptr) {
      mismatches.push_back(at + "scene no longer in corpus");
      continue;
    }
    const ElicitationService::Lexicon *lexicon = experiment.lexicon;
    if (!stored.lexicon.empty() && lexicons.contains(stored.lexicon)) {
      lexicon = lexicons.at(stored.lexicon).get();
    }
    AnnotationResult annotation =
        Annotate({Tokenize(stored.text, stored.language), stored.language,
                  stored.scene},
                 lexicon->table, experiment.corpus.schema);
    FeedbackVerdict verdict = Check(annotation, *scene, experiment.corpus.schema);
    if (ToJson(annotation) != ToJson(stored.annotation)) {
      mismatches.push_back(at + "annotation differs");
    }
    if (!(verdict == stored.verdict)) {
      mismatches.push_back(at + "verdict differs (stored " +
                           FeedbackStatusName(stored.verdict.status) +
                           ", replayed " + FeedbackStatusName(verdict.status) +
                           ")");
    }
  }
  return result;
}

}  // namespace refannot
