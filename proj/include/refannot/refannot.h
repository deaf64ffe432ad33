/* Copyright 2026 The refannot Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the refannot library.
 *
 * Objects are opaque handles created by the load, create and train functions
 * and released with the matching free function. Every fallible call returns a
 * refannot_status; on failure refannot_last_error() describes the problem
 * (per thread, valid until the next call on that thread). Strings returned
 * through char** out-parameters are owned by the caller and released with
 * refannot_string_free().
 */

#ifndef REFANNOT_REFANNOT_H_
#define REFANNOT_REFANNOT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define REFANNOT_API __declspec(dllexport)
#else
#define REFANNOT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum refannot_status {
  REFANNOT_OK = 0,
  REFANNOT_INVALID_ARGUMENT = 1,
  REFANNOT_NOT_FOUND = 2,
  REFANNOT_IO = 3,
  REFANNOT_PARSE = 4,
  REFANNOT_SCHEMA_VIOLATION = 5,
  REFANNOT_STATISTICS = 6,
  REFANNOT_CONFLICT = 7,
  REFANNOT_RETRYABLE = 8,
  REFANNOT_INTERNAL = 9
} refannot_status;

typedef enum refannot_format {
  REFANNOT_FORMAT_TABLE = 0,
  REFANNOT_FORMAT_JSON = 1
} refannot_format;

typedef struct refannot_corpus refannot_corpus;
typedef struct refannot_lexicon refannot_lexicon;
typedef struct refannot_tagger refannot_tagger;
typedef struct refannot_annotations refannot_annotations;
typedef struct refannot_report refannot_report;
typedef struct refannot_service refannot_service;

REFANNOT_API const char *refannot_version(void);
REFANNOT_API const char *refannot_status_name(refannot_status status);
REFANNOT_API const char *refannot_last_error(void);
REFANNOT_API void refannot_string_free(char *s);

/* Corpora. */
REFANNOT_API refannot_status refannot_corpus_load(const char *path,
                                                  refannot_corpus **out);
REFANNOT_API refannot_status refannot_corpus_save(const refannot_corpus *corpus,
                                                  const char *path);
/* round(fraction * n) items go to *train; both keep corpus order. */
REFANNOT_API refannot_status refannot_corpus_split(const refannot_corpus *corpus,
                                                   double fraction,
                                                   uint64_t seed,
                                                   refannot_corpus **train,
                                                   refannot_corpus **test);
/* `path` is a trial file or a directory of *.xml files. `plural_skipped` and
 * `warnings` (newline separated) may be NULL. */
REFANNOT_API refannot_status refannot_corpus_import_tuna(
    const char *path, refannot_corpus **out, size_t *plural_skipped,
    char **warnings);
REFANNOT_API size_t refannot_corpus_size(const refannot_corpus *corpus);
REFANNOT_API void refannot_corpus_free(refannot_corpus *corpus);

/* Lexicons: *.json native files, anything else tab-separated. */
REFANNOT_API refannot_status refannot_lexicon_load(const char *path,
                                                   refannot_lexicon **out);
REFANNOT_API refannot_status refannot_lexicon_induce(
    const refannot_corpus *training, refannot_lexicon **out);
REFANNOT_API refannot_status refannot_lexicon_save(
    const refannot_lexicon *lexicon, const char *path);
REFANNOT_API size_t refannot_lexicon_size(const refannot_lexicon *lexicon);
REFANNOT_API void refannot_lexicon_free(refannot_lexicon *lexicon);

/* Baseline tagger. `lexicon` may be NULL; it labels training items that
 * carry no token labels (an induced lexicon is used otherwise). */
REFANNOT_API refannot_status refannot_tagger_train(
    const refannot_corpus *training, const refannot_lexicon *lexicon,
    refannot_tagger **out);
REFANNOT_API refannot_status refannot_tagger_load(const char *path,
                                                  refannot_tagger **out);
REFANNOT_API refannot_status refannot_tagger_save(const refannot_tagger *tagger,
                                                  const char *path);
REFANNOT_API void refannot_tagger_free(refannot_tagger *tagger);

/* Annotation. The schema comes from `schema_source`. `language` is
 * "english" or "portuguese". *json receives the annotation as JSON. */
REFANNOT_API refannot_status refannot_annotate_text(
    const refannot_lexicon *lexicon, const refannot_corpus *schema_source,
    const char *text, const char *language, char **json);
REFANNOT_API refannot_status refannot_annotate_corpus(
    const refannot_corpus *corpus, const refannot_lexicon *lexicon,
    refannot_annotations **out);
REFANNOT_API refannot_status refannot_tag_corpus(const refannot_corpus *corpus,
                                                 const refannot_tagger *tagger,
                                                 refannot_annotations **out);
REFANNOT_API refannot_status refannot_annotations_load(
    const char *path, refannot_annotations **out);
REFANNOT_API refannot_status refannot_annotations_save(
    const refannot_annotations *annotations, const char *path);
REFANNOT_API void refannot_annotations_free(refannot_annotations *annotations);

/* Evaluation against the gold of `gold`. */
REFANNOT_API refannot_status refannot_evaluate(
    const refannot_annotations *annotations, const refannot_corpus *gold,
    refannot_report **out);
REFANNOT_API double refannot_report_mean_dice(const refannot_report *report);
REFANNOT_API double refannot_report_accuracy(const refannot_report *report);
REFANNOT_API size_t refannot_report_size(const refannot_report *report);
REFANNOT_API refannot_status refannot_report_render(
    const refannot_report *const *reports, size_t count,
    refannot_format format, char **out);
/* Paired comparison: Wilcoxon on Dice, chi-square on exact matches. */
REFANNOT_API refannot_status refannot_compare_render(
    const refannot_report *a, const refannot_report *b, double alpha,
    refannot_format format, char **out);
REFANNOT_API void refannot_report_free(refannot_report *report);

/* Elicitation service. REFANNOT_PORT and REFANNOT_DATA_DIR override the
 * config file; a non-NULL `data_dir` or a `port` >= 0 override both. */
REFANNOT_API refannot_status refannot_service_create(const char *config_path,
                                                     const char *data_dir,
                                                     int port,
                                                     refannot_service **out);
/* Binds the configured host and port; *bound receives the port. */
REFANNOT_API refannot_status refannot_service_bind(refannot_service *service,
                                                   int *bound);
/* Blocks until refannot_service_stop. */
REFANNOT_API refannot_status refannot_service_serve(refannot_service *service);
REFANNOT_API void refannot_service_stop(refannot_service *service);
/* Startup warnings, newline separated. */
REFANNOT_API refannot_status refannot_service_warnings(
    const refannot_service *service, char **out);
REFANNOT_API void refannot_service_free(refannot_service *service);

/* Re-runs an experiment's stored responses through the library. *mismatches
 * is the number of responses whose annotation or verdict differs; *report
 * (may be NULL) lists them. */
REFANNOT_API refannot_status refannot_service_replay(const char *config_path,
                                                     const char *data_dir,
                                                     const char *experiment,
                                                     size_t *checked,
                                                     size_t *mismatches,
                                                     char **report);

#ifdef __cplusplus
}
#endif

#endif /* REFANNOT_REFANNOT_H_ */
