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

// refannot: command-line front end. Links against the C interface only.
//
//   refannot annotate --corpus test.json --lexicon en.tsv --output hyp.json
//   refannot induce-lexicon --train train.json --output induced.tsv
//   refannot train-tagger --train train.json --output tagger.json
//   refannot split --corpus all.json --fraction 0.14 --seed 7
//       --train-out train.json --test-out test.json
//   refannot evaluate --gold test.json --hyp heuristic.json --hyp baseline.json
//   refannot compare-methods --corpus all.json --fraction 0.14 --seed 7
//   refannot import-tuna --input trials/ --output tuna.json
//   refannot serve --config service.json
//   refannot replay-responses --config service.json --experiment pilot
//
// Exit status: 0 on success, 1 on data errors, 2 on usage errors.

#include <signal.h>

#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "refannot/refannot.h"

namespace {

constexpr int kDataError = 1;
constexpr int kUsageError = 2;

// Thrown when a library call fails; carries the diagnostic.
struct Failure {
  std::string message;
};

void Check(refannot_status status, const std::string &what) {
  if (status != REFANNOT_OK) {
    throw Failure{what + ": " + refannot_status_name(status) + ": " +
                  refannot_last_error()};
  }
}

template <typename T, void (*Free)(T *)>
struct Deleter {
  void operator()(T *p) const { Free(p); }
};

using Corpus =
    std::unique_ptr<refannot_corpus, Deleter<refannot_corpus, refannot_corpus_free>>;
using Lexicon = std::unique_ptr<refannot_lexicon,
                                Deleter<refannot_lexicon, refannot_lexicon_free>>;
using Tagger =
    std::unique_ptr<refannot_tagger, Deleter<refannot_tagger, refannot_tagger_free>>;
using Annotations =
    std::unique_ptr<refannot_annotations,
                    Deleter<refannot_annotations, refannot_annotations_free>>;
using Report =
    std::unique_ptr<refannot_report, Deleter<refannot_report, refannot_report_free>>;
using Service = std::unique_ptr<refannot_service,
                                Deleter<refannot_service, refannot_service_free>>;

struct OwnedString {
  char *s = nullptr;
  ~OwnedString() { refannot_string_free(s); }
  std::string str() const { return s ? s : ""; }
};

Corpus LoadCorpus(const std::string &path) {
  refannot_corpus *c = nullptr;
  Check(refannot_corpus_load(path.c_str(), &c), "loading corpus " + path);
  return Corpus(c);
}

Lexicon LoadLexicon(const std::string &path) {
  refannot_lexicon *l = nullptr;
  Check(refannot_lexicon_load(path.c_str(), &l), "loading lexicon " + path);
  return Lexicon(l);
}

Report EvaluateSet(const refannot_annotations *set, const refannot_corpus *gold,
                   const std::string &what) {
  refannot_report *r = nullptr;
  Check(refannot_evaluate(set, gold, &r), "evaluating " + what);
  return Report(r);
}

refannot_format FormatOf(const std::string &name) {
  return name == "json" ? REFANNOT_FORMAT_JSON : REFANNOT_FORMAT_TABLE;
}

void PrintReports(const std::vector<const refannot_report *> &reports,
                  refannot_format format, double alpha) {
  OwnedString text;
  if (reports.size() == 2) {
    Check(refannot_compare_render(reports[0], reports[1], alpha, format, &text.s),
          "comparing methods");
  } else {
    Check(refannot_report_render(reports.data(), reports.size(), format, &text.s),
          "rendering report");
  }
  std::cout << text.str();
}

struct Options {
  std::string corpus, lexicon, tagger, output, method = "heuristic";
  std::string text, language = "english";
  std::string train, train_out, test_out, input, gold;
  std::vector<std::string> hyps;
  std::string format = "table";
  std::string config, data_dir, experiment;
  double fraction = 0;
  double alpha = 0.05;
  uint64_t seed = 0;
  int port = -1;
};

int RunAnnotate(const Options &o) {
  Lexicon lexicon;
  if (o.method == "heuristic") {
    if (o.lexicon.empty()) throw CLI::RequiredError("--lexicon");
    lexicon = LoadLexicon(o.lexicon);
  } else if (o.tagger.empty()) {
    throw CLI::RequiredError("--tagger");
  }
  if (!o.text.empty()) {
    if (o.method != "heuristic") {
      throw CLI::ValidationError("--text", "only the heuristic method annotates free text");
    }
    Corpus schema = LoadCorpus(o.corpus);
    OwnedString json;
    Check(refannot_annotate_text(lexicon.get(), schema.get(), o.text.c_str(),
                                 o.language.c_str(), &json.s),
          "annotating text");
    std::cout << json.str();
    return 0;
  }
  if (o.output.empty()) throw CLI::RequiredError("--output");
  Corpus corpus = LoadCorpus(o.corpus);
  refannot_annotations *set = nullptr;
  if (o.method == "heuristic") {
    Check(refannot_annotate_corpus(corpus.get(), lexicon.get(), &set),
          "annotating " + o.corpus);
  } else {
    refannot_tagger *t = nullptr;
    Check(refannot_tagger_load(o.tagger.c_str(), &t), "loading tagger " + o.tagger);
    Tagger tagger(t);
    Check(refannot_tag_corpus(corpus.get(), tagger.get(), &set),
          "tagging " + o.corpus);
  }
  Annotations annotations(set);
  Check(refannot_annotations_save(annotations.get(), o.output.c_str()),
        "writing " + o.output);
  std::cerr << "annotated " << refannot_corpus_size(corpus.get()) << " items\n";
  return 0;
}

int RunInduce(const Options &o) {
  Corpus train = LoadCorpus(o.train);
  refannot_lexicon *l = nullptr;
  Check(refannot_lexicon_induce(train.get(), &l), "inducing lexicon");
  Lexicon lexicon(l);
  Check(refannot_lexicon_save(lexicon.get(), o.output.c_str()),
        "writing " + o.output);
  std::cerr << "induced " << refannot_lexicon_size(lexicon.get())
            << " entries from " << refannot_corpus_size(train.get())
            << " items\n";
  return 0;
}

int RunTrainTagger(const Options &o) {
  Corpus train = LoadCorpus(o.train);
  Lexicon lexicon;
  if (!o.lexicon.empty()) lexicon = LoadLexicon(o.lexicon);
  refannot_tagger *t = nullptr;
  Check(refannot_tagger_train(train.get(), lexicon.get(), &t), "training tagger");
  Tagger tagger(t);
  Check(refannot_tagger_save(tagger.get(), o.output.c_str()),
        "writing " + o.output);
  return 0;
}

int RunSplit(const Options &o) {
  Corpus corpus = LoadCorpus(o.corpus);
  refannot_corpus *a = nullptr, *b = nullptr;
  Check(refannot_corpus_split(corpus.get(), o.fraction, o.seed, &a, &b),
        "splitting " + o.corpus);
  Corpus train(a), test(b);
  Check(refannot_corpus_save(train.get(), o.train_out.c_str()),
        "writing " + o.train_out);
  Check(refannot_corpus_save(test.get(), o.test_out.c_str()),
        "writing " + o.test_out);
  std::cerr << "train " << refannot_corpus_size(train.get()) << ", test "
            << refannot_corpus_size(test.get()) << "\n";
  return 0;
}

int RunEvaluate(const Options &o) {
  if (o.hyps.empty() || o.hyps.size() > 2) {
    throw CLI::ValidationError("--hyp", "give one or two hypothesis files");
  }
  Corpus gold = LoadCorpus(o.gold);
  std::vector<Report> reports;
  for (const std::string &path : o.hyps) {
    refannot_annotations *set = nullptr;
    Check(refannot_annotations_load(path.c_str(), &set), "loading " + path);
    Annotations annotations(set);
    reports.push_back(EvaluateSet(annotations.get(), gold.get(), path));
  }
  std::vector<const refannot_report *> raw;
  for (const Report &r : reports) raw.push_back(r.get());
  PrintReports(raw, FormatOf(o.format), o.alpha);
  return 0;
}

int RunCompare(const Options &o) {
  Corpus corpus = LoadCorpus(o.corpus);
  refannot_corpus *a = nullptr, *b = nullptr;
  Check(refannot_corpus_split(corpus.get(), o.fraction, o.seed, &a, &b),
        "splitting " + o.corpus);
  Corpus train(a), test(b);

  Lexicon lexicon;
  if (o.lexicon.empty()) {
    refannot_lexicon *l = nullptr;
    Check(refannot_lexicon_induce(train.get(), &l), "inducing lexicon");
    lexicon = Lexicon(l);
  } else {
    lexicon = LoadLexicon(o.lexicon);
  }
  refannot_tagger *t = nullptr;
  Check(refannot_tagger_train(train.get(), lexicon.get(), &t), "training tagger");
  Tagger tagger(t);

  refannot_annotations *h = nullptr, *p = nullptr;
  Check(refannot_annotate_corpus(test.get(), lexicon.get(), &h), "annotating");
  Annotations heuristic(h);
  Check(refannot_tag_corpus(test.get(), tagger.get(), &p), "tagging");
  Annotations baseline(p);
  Report rh = EvaluateSet(heuristic.get(), test.get(), "heuristic");
  Report rb = EvaluateSet(baseline.get(), test.get(), "baseline");
  std::cerr << "train " << refannot_corpus_size(train.get()) << ", test "
            << refannot_corpus_size(test.get()) << ", lexicon "
            << refannot_lexicon_size(lexicon.get()) << " entries\n";
  PrintReports({rh.get(), rb.get()}, FormatOf(o.format), o.alpha);
  return 0;
}

int RunImportTuna(const Options &o) {
  refannot_corpus *c = nullptr;
  size_t plural = 0;
  OwnedString warnings;
  Check(refannot_corpus_import_tuna(o.input.c_str(), &c, &plural, &warnings.s),
        "importing " + o.input);
  Corpus corpus(c);
  std::cerr << warnings.str();
  Check(refannot_corpus_save(corpus.get(), o.output.c_str()),
        "writing " + o.output);
  std::cerr << "imported " << refannot_corpus_size(corpus.get())
            << " items; skipped " << plural << " plural trials\n";
  return 0;
}

int RunServe(const Options &o) {
  // Signals are taken by a dedicated thread so the server can stop cleanly.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  refannot_service *s = nullptr;
  Check(refannot_service_create(o.config.c_str(),
                                o.data_dir.empty() ? nullptr : o.data_dir.c_str(),
                                o.port, &s),
        "starting service");
  Service service(s);
  OwnedString warnings;
  Check(refannot_service_warnings(service.get(), &warnings.s), "startup");
  std::cerr << warnings.str();
  int port = 0;
  Check(refannot_service_bind(service.get(), &port), "binding");
  std::cout << "listening on port " << port << std::endl;

  std::thread waiter([&service, signals] {
    int signal = 0;
    sigwait(&signals, &signal);
    refannot_service_stop(service.get());
  });
  waiter.detach();
  Check(refannot_service_serve(service.get()), "serving");
  return 0;
}

int RunReplay(const Options &o) {
  size_t checked = 0, mismatches = 0;
  OwnedString report;
  Check(refannot_service_replay(o.config.c_str(),
                                o.data_dir.empty() ? nullptr : o.data_dir.c_str(),
                                o.experiment.c_str(), &checked, &mismatches,
                                &report.s),
        "replaying responses");
  std::cout << report.str() << "checked " << checked << " responses, "
            << mismatches << " mismatches\n";
  return mismatches == 0 ? 0 : kDataError;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Semantic annotation of referring expressions"};
  app.require_subcommand(1);
  Options o;
  const auto languages = CLI::IsMember({"english", "en", "portuguese", "pt"});
  const auto formats = CLI::IsMember({"table", "json"});

  CLI::App *annotate = app.add_subcommand(
      "annotate", "Annotate a corpus (or --text) with one method");
  annotate->add_option("--corpus", o.corpus, "Corpus (schema source for --text)")
      ->required();
  annotate->add_option("--lexicon", o.lexicon, "Lexicon for the heuristic method");
  annotate->add_option("--tagger", o.tagger, "Model for the baseline method");
  annotate->add_option("--method", o.method)
      ->check(CLI::IsMember({"heuristic", "baseline"}));
  annotate->add_option("--output", o.output, "Annotations file to write");
  annotate->add_option("--text", o.text, "Annotate one description, print JSON");
  annotate->add_option("--language", o.language)->check(languages);

  CLI::App *induce = app.add_subcommand(
      "induce-lexicon", "Induce a lexicon from a training corpus");
  induce->add_option("--train", o.train)->required();
  induce->add_option("--output", o.output, "*.json or tab-separated")->required();

  CLI::App *train_tagger = app.add_subcommand(
      "train-tagger", "Train the baseline token labeller");
  train_tagger->add_option("--train", o.train)->required();
  train_tagger->add_option("--lexicon", o.lexicon,
                           "Labels items without token labels");
  train_tagger->add_option("--output", o.output)->required();

  CLI::App *split = app.add_subcommand("split", "Seeded train/test split");
  split->add_option("--corpus", o.corpus)->required();
  split->add_option("--fraction", o.fraction, "Training fraction in (0,1)")
      ->required();
  split->add_option("--seed", o.seed)->required();
  split->add_option("--train-out", o.train_out)->required();
  split->add_option("--test-out", o.test_out)->required();

  CLI::App *evaluate = app.add_subcommand(
      "evaluate", "Score one or two annotation files against gold");
  evaluate->add_option("--gold", o.gold)->required();
  evaluate->add_option("--hyp", o.hyps, "Annotations file (repeat for two)")
      ->required();
  evaluate->add_option("--format", o.format)->check(formats);
  evaluate->add_option("--alpha", o.alpha)->check(CLI::Range(0.0, 1.0));

  CLI::App *compare = app.add_subcommand(
      "compare-methods", "Split, train both methods, evaluate and compare");
  compare->add_option("--corpus", o.corpus)->required();
  compare->add_option("--fraction", o.fraction)->required();
  compare->add_option("--seed", o.seed)->required();
  compare->add_option("--lexicon", o.lexicon, "Use instead of an induced lexicon");
  compare->add_option("--format", o.format)->check(formats);
  compare->add_option("--alpha", o.alpha)->check(CLI::Range(0.0, 1.0));

  CLI::App *import = app.add_subcommand(
      "import-tuna", "Convert TUNA-style trial documents to a corpus");
  import->add_option("--input", o.input, "Trial file or directory")->required();
  import->add_option("--output", o.output)->required();

  CLI::App *serve = app.add_subcommand("serve", "Run the elicitation service");
  serve->add_option("--config", o.config)->required();
  serve->add_option("--port", o.port)->check(CLI::Range(0, 65535));
  serve->add_option("--data-dir", o.data_dir);

  CLI::App *replay = app.add_subcommand(
      "replay-responses", "Re-check stored responses against the library");
  replay->add_option("--config", o.config)->required();
  replay->add_option("--experiment", o.experiment)->required();
  replay->add_option("--data-dir", o.data_dir);

  try {
    app.parse(argc, argv);
    if (*annotate) return RunAnnotate(o);
    if (*induce) return RunInduce(o);
    if (*train_tagger) return RunTrainTagger(o);
    if (*split) return RunSplit(o);
    if (*evaluate) return RunEvaluate(o);
    if (*compare) return RunCompare(o);
    if (*import) return RunImportTuna(o);
    if (*serve) return RunServe(o);
    if (*replay) return RunReplay(o);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << "refannot: " << e.what() << "\n";
    CLI::App *sub = app.get_subcommands().empty() ? &app : app.get_subcommands()[0];
    std::cerr << sub->help();
    return kUsageError;
  } catch (const Failure &f) {
    std::cerr << "refannot: " << f.message << "\n";
    return kDataError;
  }
  return kUsageError;
}
