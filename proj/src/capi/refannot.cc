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

// extern "C" wrappers over the C++ core. Exceptions never cross this
// boundary: each entry point converts them to a status and records the
// message for refannot_last_error().

#include "refannot/refannot.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "refannot/corpus.h"
#include "refannot/error.h"
#include "refannot/evaluation.h"
#include "refannot/http_server.h"
#include "refannot/lexicon.h"
#include "refannot/pipeline.h"
#include "refannot/serialization.h"
#include "refannot/service.h"
#include "refannot/tagger.h"
#include "refannot/tuna.h"

struct refannot_corpus {
  refannot::Corpus corpus;
};
struct refannot_lexicon {
  refannot::MappingTable table;
};
struct refannot_tagger {
  refannot::TaggerModel model;
};
struct refannot_annotations {
  refannot::AnnotationSet set;
};
struct refannot_report {
  refannot::EvalReport report;
};
struct refannot_service {
  refannot::ServiceConfig config;
  std::unique_ptr<refannot::ElicitationService> service;
  std::unique_ptr<refannot::HttpServer> http;
};

namespace {

thread_local std::string last_error;

refannot_status Fail(refannot_status status, const std::string &message) {
  last_error = message;
  return status;
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
refannot_status Guard(Fn &&fn) {
  try {
    last_error.clear();
    fn();
    return REFANNOT_OK;
  } catch (const refannot::Error &e) {
    return Fail(static_cast<refannot_status>(e.code()), e.what());
  } catch (const std::bad_alloc &) {
    return Fail(REFANNOT_INTERNAL, "out of memory");
  } catch (const std::exception &e) {
    return Fail(REFANNOT_INTERNAL, e.what());
  }
}

void Require(bool condition, const char *what) {
  if (!condition) {
    throw refannot::Error(refannot::ErrorCode::kInvalidArgument,
                          std::string(what) + " must not be NULL");
  }
}

char *Dup(const std::string &s) {
  char *copy = static_cast<char *>(std::malloc(s.size() + 1));
  if (copy == nullptr) throw std::bad_alloc();
  std::memcpy(copy, s.data(), s.size() + 1);
  return copy;
}

std::string Join(const std::vector<std::string> &lines) {
  std::string out;
  for (const std::string &line : lines) out += line + "\n";
  return out;
}

}  // namespace

extern "C" {

const char *refannot_version(void) { return "1.0.0"; }

const char *refannot_status_name(refannot_status status) {
  if (status == REFANNOT_OK) return "ok";
  return refannot::ErrorCodeName(static_cast<refannot::ErrorCode>(status));
}

const char *refannot_last_error(void) { return last_error.c_str(); }

void refannot_string_free(char *s) { std::free(s); }

refannot_status refannot_corpus_load(const char *path, refannot_corpus **out) {
  return Guard([&] {
    Require(path && out, "path and out");
    *out = new refannot_corpus{refannot::LoadCorpus(path)};
  });
}

refannot_status refannot_corpus_save(const refannot_corpus *corpus,
                                     const char *path) {
  return Guard([&] {
    Require(corpus && path, "corpus and path");
    refannot::SaveCorpus(corpus->corpus, path);
  });
}

refannot_status refannot_corpus_split(const refannot_corpus *corpus,
                                      double fraction, uint64_t seed,
                                      refannot_corpus **train,
                                      refannot_corpus **test) {
  return Guard([&] {
    Require(corpus && train && test, "corpus, train and test");
    auto [a, b] = refannot::SplitCorpus(corpus->corpus, fraction, seed);
    auto first = std::make_unique<refannot_corpus>(refannot_corpus{std::move(a)});
    *test = new refannot_corpus{std::move(b)};
    *train = first.release();
  });
}

refannot_status refannot_corpus_import_tuna(const char *path,
                                            refannot_corpus **out,
                                            size_t *plural_skipped,
                                            char **warnings) {
  return Guard([&] {
    Require(path && out, "path and out");
    refannot::TunaImport imported = refannot::ImportTuna(path);
    char *joined = warnings ? Dup(Join(imported.warnings)) : nullptr;
    *out = new refannot_corpus{std::move(imported.corpus)};
    if (plural_skipped) *plural_skipped = imported.plural_skipped;
    if (warnings) *warnings = joined;
  });
}

size_t refannot_corpus_size(const refannot_corpus *corpus) {
  return corpus ? corpus->corpus.items.size() : 0;
}

void refannot_corpus_free(refannot_corpus *corpus) { delete corpus; }

refannot_status refannot_lexicon_load(const char *path,
                                      refannot_lexicon **out) {
  return Guard([&] {
    Require(path && out, "path and out");
    *out = new refannot_lexicon{refannot::LoadLexicon(path)};
  });
}

refannot_status refannot_lexicon_induce(const refannot_corpus *training,
                                        refannot_lexicon **out) {
  return Guard([&] {
    Require(training && out, "training and out");
    *out = new refannot_lexicon{refannot::InduceFromCorpus(training->corpus)};
  });
}

refannot_status refannot_lexicon_save(const refannot_lexicon *lexicon,
                                      const char *path) {
  return Guard([&] {
    Require(lexicon && path, "lexicon and path");
    refannot::SaveLexicon(lexicon->table, path);
  });
}

size_t refannot_lexicon_size(const refannot_lexicon *lexicon) {
  return lexicon ? lexicon->table.size() : 0;
}

void refannot_lexicon_free(refannot_lexicon *lexicon) { delete lexicon; }

refannot_status refannot_tagger_train(const refannot_corpus *training,
                                      const refannot_lexicon *lexicon,
                                      refannot_tagger **out) {
  return Guard([&] {
    Require(training && out, "training and out");
    *out = new refannot_tagger{refannot::TrainTagger(
        training->corpus, lexicon ? &lexicon->table : nullptr)};
  });
}

refannot_status refannot_tagger_load(const char *path, refannot_tagger **out) {
  return Guard([&] {
    Require(path && out, "path and out");
    *out = new refannot_tagger{refannot::LoadTaggerModel(path)};
  });
}

refannot_status refannot_tagger_save(const refannot_tagger *tagger,
                                     const char *path) {
  return Guard([&] {
    Require(tagger && path, "tagger and path");
    refannot::SaveTaggerModel(tagger->model, path);
  });
}

void refannot_tagger_free(refannot_tagger *tagger) { delete tagger; }

refannot_status refannot_annotate_text(const refannot_lexicon *lexicon,
                                       const refannot_corpus *schema_source,
                                       const char *text, const char *language,
                                       char **json) {
  return Guard([&] {
    Require(lexicon && schema_source && text && json,
            "lexicon, schema_source, text and json");
    refannot::Language lang =
        refannot::ParseLanguage(language ? language : "english");
    const refannot::DomainSchema &schema = schema_source->corpus.schema;
    refannot::CheckConsistency(lexicon->table, schema);
    refannot::AnnotationResult result = refannot::Annotate(
        {refannot::Tokenize(text, lang), lang, ""}, lexicon->table, schema);
    *json = Dup(refannot::ToJson(result).dump(2) + "\n");
  });
}

refannot_status refannot_annotate_corpus(const refannot_corpus *corpus,
                                         const refannot_lexicon *lexicon,
                                         refannot_annotations **out) {
  return Guard([&] {
    Require(corpus && lexicon && out, "corpus, lexicon and out");
    *out = new refannot_annotations{
        refannot::AnnotateCorpus(corpus->corpus, lexicon->table)};
  });
}

refannot_status refannot_tag_corpus(const refannot_corpus *corpus,
                                    const refannot_tagger *tagger,
                                    refannot_annotations **out) {
  return Guard([&] {
    Require(corpus && tagger && out, "corpus, tagger and out");
    *out = new refannot_annotations{
        refannot::TagCorpus(corpus->corpus, tagger->model)};
  });
}

refannot_status refannot_annotations_load(const char *path,
                                          refannot_annotations **out) {
  return Guard([&] {
    Require(path && out, "path and out");
    *out = new refannot_annotations{refannot::LoadAnnotations(path)};
  });
}

refannot_status refannot_annotations_save(
    const refannot_annotations *annotations, const char *path) {
  return Guard([&] {
    Require(annotations && path, "annotations and path");
    refannot::SaveAnnotations(annotations->set, path);
  });
}

void refannot_annotations_free(refannot_annotations *annotations) {
  delete annotations;
}

refannot_status refannot_evaluate(const refannot_annotations *annotations,
                                  const refannot_corpus *gold,
                                  refannot_report **out) {
  return Guard([&] {
    Require(annotations && gold && out, "annotations, gold and out");
    *out = new refannot_report{
        refannot::EvaluateAnnotations(annotations->set, gold->corpus)};
  });
}

double refannot_report_mean_dice(const refannot_report *report) {
  return report ? report->report.mean_dice : 0.0;
}

double refannot_report_accuracy(const refannot_report *report) {
  return report ? report->report.accuracy : 0.0;
}

size_t refannot_report_size(const refannot_report *report) {
  return report ? report->report.n() : 0;
}

refannot_status refannot_report_render(const refannot_report *const *reports,
                                       size_t count, refannot_format format,
                                       char **out) {
  return Guard([&] {
    Require(reports && out, "reports and out");
    std::vector<refannot::EvalReport> list;
    for (size_t i = 0; i < count; ++i) {
      Require(reports[i] != nullptr, "report");
      list.push_back(reports[i]->report);
    }
    if (format == REFANNOT_FORMAT_JSON) {
      refannot::Json doc;
      if (list.size() == 1) {
        doc = refannot::ToJson(list.front());
      } else {
        doc = refannot::Json::array();
        for (const refannot::EvalReport &r : list) {
          doc.push_back(refannot::ToJson(r));
        }
      }
      *out = Dup(doc.dump(2) + "\n");
    } else {
      *out = Dup(refannot::RenderReportTable(list));
    }
  });
}

refannot_status refannot_compare_render(const refannot_report *a,
                                        const refannot_report *b, double alpha,
                                        refannot_format format, char **out) {
  return Guard([&] {
    Require(a && b && out, "a, b and out");
    refannot::ComparisonSummary summary =
        refannot::CompareMethods(a->report, b->report, alpha);
    if (format == REFANNOT_FORMAT_JSON) {
      refannot::Json doc = {{"reports",
                             {refannot::ToJson(a->report),
                              refannot::ToJson(b->report)}},
                            {"comparison", refannot::ToJson(summary)}};
      *out = Dup(doc.dump(2) + "\n");
    } else {
      *out = Dup(refannot::RenderComparisonTable(summary));
    }
  });
}

void refannot_report_free(refannot_report *report) { delete report; }

namespace {

refannot::ServiceConfig ServiceConfigFor(const char *config_path,
                                         const char *data_dir, int port) {
  Require(config_path != nullptr, "config_path");
  refannot::ServiceConfig config = refannot::LoadServiceConfig(config_path);
  if (data_dir != nullptr) config.data_dir = data_dir;
  if (port >= 0) config.port = port;
  return config;
}

}  // namespace

refannot_status refannot_service_create(const char *config_path,
                                        const char *data_dir, int port,
                                        refannot_service **out) {
  return Guard([&] {
    Require(out != nullptr, "out");
    auto handle = std::make_unique<refannot_service>();
    handle->config = ServiceConfigFor(config_path, data_dir, port);
    handle->service =
        std::make_unique<refannot::ElicitationService>(handle->config);
    handle->http = std::make_unique<refannot::HttpServer>(handle->service.get());
    *out = handle.release();
  });
}

refannot_status refannot_service_bind(refannot_service *service, int *bound) {
  return Guard([&] {
    Require(service != nullptr, "service");
    int port = service->http->Bind(service->config.host, service->config.port);
    if (bound) *bound = port;
  });
}

refannot_status refannot_service_serve(refannot_service *service) {
  return Guard([&] {
    Require(service != nullptr, "service");
    service->http->Serve();
  });
}

void refannot_service_stop(refannot_service *service) {
  if (service && service->http) service->http->Stop();
}

refannot_status refannot_service_warnings(const refannot_service *service,
                                          char **out) {
  return Guard([&] {
    Require(service && out, "service and out");
    *out = Dup(Join(service->service->warnings()));
  });
}

void refannot_service_free(refannot_service *service) { delete service; }

refannot_status refannot_service_replay(const char *config_path,
                                        const char *data_dir,
                                        const char *experiment, size_t *checked,
                                        size_t *mismatches, char **report) {
  return Guard([&] {
    Require(experiment && mismatches, "experiment and mismatches");
    refannot::ServiceConfig config = ServiceConfigFor(config_path, data_dir, -1);
    refannot::ReplayResult result = refannot::ReplayResponses(config, experiment);
    if (checked) *checked = result.checked;
    *mismatches = result.mismatches.size();
    if (report) *report = Dup(Join(result.mismatches));
  });
}

}  // extern "C"
