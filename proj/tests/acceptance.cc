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

// Acceptance checks. Prints one PASS or FAIL line per criterion and exits
// non-zero when any criterion fails. Pass --verbose to also print the
// evaluation tables.

#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "refannot/corpus.h"
#include "refannot/error.h"
#include "refannot/evaluation.h"
#include "refannot/feedback.h"
#include "refannot/fileutil.h"
#include "refannot/lexicon.h"
#include "refannot/parser.h"
#include "refannot/pipeline.h"
#include "refannot/service.h"
#include "refannot/statistics.h"
#include "refannot/tuna.h"

namespace refannot {
namespace {

namespace fs = std::filesystem;

constexpr Language kEn = Language::kEnglish;
constexpr Language kPt = Language::kPortuguese;

bool verbose = false;

std::string DataPath(const std::string &name) {
  return std::string(REFANNOT_TEST_DATA) + "/" + name;
}

class TempDir {
 public:
  TempDir() {
    std::string pattern =
        (fs::temp_directory_path() / "refannot-acceptance-XXXXXX").string();
    path_ = ::mkdtemp(pattern.data());
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  std::string File(const std::string &name) const { return path_ + "/" + name; }
  const std::string &path() const { return path_; }

 private:
  std::string path_;
};

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

std::string Format(double value, int digits = 4) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*g", digits, value);
  return buffer;
}

// ---------------------------------------------------------------------------
// GRE3D3-style realizer with parallel English and Portuguese vocabularies.
// Synonym i of a property in one language translates synonym i of the other.

struct Synonyms {
  Property property;
  std::vector<std::string> en;
  std::vector<std::string> pt;
};

const std::vector<Synonyms> &Vocabulary() {
  static const std::vector<Synonyms> words = {
      {{"type", "ball"}, {"ball", "sphere"}, {"bola", "esfera"}},
      {{"type", "cube"}, {"cube", "block"}, {"cubo", "bloco"}},
      {{"type", "box"}, {"box"}, {"caixa"}},
      {{"colour", "red"}, {"red", "crimson"}, {"vermelha", "rubra"}},
      {{"colour", "blue"}, {"blue"}, {"azul"}},
      {{"colour", "green"}, {"green"}, {"verde"}},
      {{"colour", "white"}, {"white"}, {"branca"}},
      {{"colour", "yellow"}, {"yellow"}, {"amarela"}},
      {{"size", "large"}, {"large", "big"}, {"grande", "enorme"}},
      {{"size", "small"}, {"small", "little"}, {"pequena", "minuscula"}},
      {{"near", "lm"}, {"near", "close to"}, {"perto de", "junto a"}},
      {{"beside", "lm"}, {"next to", "beside"}, {"ao lado de", "junto de"}},
      {{"above", "lm"}, {"on top of", "above"}, {"em cima de", "sobre"}},
  };
  return words;
}

const Synonyms &WordsFor(const Property &p) {
  for (const Synonyms &s : Vocabulary()) {
    if (s.property == p) return s;
  }
  throw Error(ErrorCode::kInternal, "no words for " + p.ToString());
}

std::vector<std::string> Split(const std::string &text) {
  std::vector<std::string> tokens;
  std::istringstream in(text);
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

// Complete one-to-one lexicon over both languages.
MappingTable FullLexicon() {
  std::vector<LexicalEntry> entries;
  for (const Synonyms &s : Vocabulary()) {
    for (const std::string &w : s.en) {
      entries.push_back({Split(w), "", s.property, kEn});
    }
    for (const std::string &w : s.pt) {
      entries.push_back({Split(w), "", s.property, kPt});
    }
  }
  return MappingTable(entries);
}

DomainSchema Gre3d3Schema() { return LoadSchema(DataPath("gre3d3_mini.json")); }

// A referent's properties: type always, colour and size optionally.
struct Referent {
  Property type;
  std::optional<Property> colour;
  std::optional<Property> size;
};

struct Plan {
  Referent target;
  std::optional<Property> relation;  // value "lm"
  Referent landmark;
  // Synonym choice per property, shared by both languages.
  std::map<Property, size_t> choice;
};

struct Realization {
  std::string text;
  std::vector<Label> labels;
};

Plan RandomPlan(std::mt19937_64 &rng, double relational_rate) {
  static const std::vector<std::string> types = {"ball", "cube", "box"};
  static const std::vector<std::string> colours = {"red", "blue", "green",
                                                   "white", "yellow"};
  static const std::vector<std::string> sizes = {"large", "small"};
  static const std::vector<std::string> relations = {"near", "beside",
                                                     "above"};
  std::uniform_real_distribution<double> unit(0, 1);
  auto referent = [&] {
    Referent r;
    r.type = {"type", types[rng() % types.size()]};
    if (unit(rng) < 0.7) r.colour = Property{"colour", colours[rng() % 5]};
    if (unit(rng) < 0.5) r.size = Property{"size", sizes[rng() % 2]};
    return r;
  };
  Plan plan;
  plan.target = referent();
  if (unit(rng) < relational_rate) {
    plan.relation = Property{relations[rng() % 3], "lm"};
    plan.landmark = referent();
  }
  for (const Synonyms &s : Vocabulary()) {
    plan.choice[s.property] = rng() % std::max(s.en.size(), s.pt.size());
  }
  return plan;
}

RolePropertySet Gold(const Plan &plan) {
  RolePropertySet gold;
  auto add = [&](const std::string &role, const Referent &r) {
    gold.insert({role, r.type});
    if (r.colour) gold.insert({role, *r.colour});
    if (r.size) gold.insert({role, *r.size});
  };
  add("target", plan.target);
  if (plan.relation) {
    gold.insert({"target", *plan.relation});
    add("lm", plan.landmark);
  }
  return gold;
}

// English: det size colour noun [relation det size colour noun].
// Portuguese mirrors the modifiers: det noun colour size.
Realization Realize(const Plan &plan, Language language,
                    const std::string &determiner = "") {
  Realization out;
  auto word = [&](const Property &p) {
    const Synonyms &s = WordsFor(p);
    const auto &list = language == kEn ? s.en : s.pt;
    return list[plan.choice.at(p) % list.size()];
  };
  auto emit = [&](const std::string &surface, Label label) {
    for (const std::string &token : Split(surface)) {
      if (!out.text.empty()) out.text += ' ';
      out.text += token;
      out.labels.push_back(label);
    }
  };
  auto referent = [&](const Referent &r, const std::string &det) {
    emit(det, std::nullopt);
    if (language == kEn) {
      if (r.size) emit(word(*r.size), r.size);
      if (r.colour) emit(word(*r.colour), r.colour);
      emit(word(r.type), r.type);
    } else {
      emit(word(r.type), r.type);
      if (r.colour) emit(word(*r.colour), r.colour);
      if (r.size) emit(word(*r.size), r.size);
    }
  };
  const std::string det =
      !determiner.empty() ? determiner : (language == kEn ? "the" : "a");
  referent(plan.target, det);
  if (plan.relation) {
    emit(word(*plan.relation), plan.relation);
    referent(plan.landmark, language == kEn ? "the" : "o");
  }
  return out;
}

// Scene consistent with the plan: target, landmark and one distractor.
Scene SceneFor(const Plan &plan, const std::string &id) {
  auto object = [](const std::string &oid, const std::string &role,
                   const Referent &r, const std::string &fill_colour) {
    SceneObject o;
    o.id = oid;
    o.role = role;
    o.properties.insert(r.type);
    o.properties.insert(r.colour ? *r.colour
                                 : Property{"colour", fill_colour});
    o.properties.insert(r.size ? *r.size : Property{"size", "small"});
    return o;
  };
  Scene scene;
  scene.id = id;
  scene.target_id = id + "-t";
  SceneObject target = object(id + "-t", "target", plan.target, "white");
  if (plan.relation) {
    target.properties.insert({plan.relation->attribute, id + "-l"});
  }
  scene.objects.push_back(target);
  Referent lm = plan.relation ? plan.landmark
                              : Referent{{"type", "box"}, std::nullopt,
                                         std::nullopt};
  scene.objects.push_back(object(id + "-l", "lm", lm, "yellow"));
  Referent other = plan.target;
  other.colour = Property{"colour", plan.target.colour &&
                                            plan.target.colour->value == "blue"
                                        ? "green"
                                        : "blue"};
  scene.objects.push_back(object(id + "-d", "", other, "blue"));
  return scene;
}

Corpus SyntheticCorpus(size_t n, uint64_t seed, double relational_rate,
                       bool vary_determiners) {
  std::mt19937_64 rng(seed);
  Corpus corpus;
  corpus.name = "synthetic-gre3d3";
  corpus.schema = Gre3d3Schema();
  static const std::vector<std::string> determiners = {"the", "a", "that"};
  for (size_t i = 0; i < n; ++i) {
    Plan plan = RandomPlan(rng, relational_rate);
    const std::string id = "g" + std::to_string(i);
    corpus.scenes.push_back(SceneFor(plan, "scene-" + id));
    Realization r =
        Realize(plan, kEn,
                vary_determiners ? determiners[rng() % determiners.size()]
                                 : "");
    CorpusItem item;
    item.id = id;
    item.scene_id = "scene-" + id;
    item.text = r.text;
    item.language = kEn;
    item.gold = Gold(plan);
    item.token_labels = r.labels;
    corpus.items.push_back(std::move(item));
  }
  std::vector<std::string> violations = ValidateCorpus(corpus);
  if (!violations.empty()) {
    throw Error(ErrorCode::kInternal, "synthetic corpus: " + violations[0]);
  }
  return corpus;
}

// ---------------------------------------------------------------------------

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Criterion = std::function<Outcome()>;

Outcome WorkedExamples() {
  auto start = std::chrono::steady_clock::now();
  DomainSchema gre3d3 = Gre3d3Schema();
  DomainSchema furniture = LoadSchema(DataPath("furniture.schema.json"));
  DomainSchema people = LoadSchema(DataPath("people.schema.json"));
  MappingTable gre3d3_en = LoadLexicon(DataPath("gre3d3_en.tsv"));
  MappingTable furniture_en = LoadLexicon(DataPath("furniture_en.tsv"));
  MappingTable people_en = LoadLexicon(DataPath("people_en.tsv"));
  auto run = [](const std::string &text, const MappingTable &m,
                const DomainSchema &s) {
    return Annotate({Tokenize(text, kEn), kEn, ""}, m, s).properties;
  };
  using RS = RolePropertySet;
  struct Example {
    std::string text;
    RS got;
    RS want;
  };
  std::vector<Example> examples = {
      {"the red couch", run("the red couch", furniture_en, furniture),
       RS{{"target", {"type", "couch"}}, {"target", {"colour", "red"}}}},
      {"large blue box", run("large blue box", gre3d3_en, gre3d3),
       RS{{"target", {"size", "large"}},
          {"target", {"colour", "blue"}},
          {"target", {"type", "box"}}}},
      {"dark man", run("dark man", people_en, people),
       RS{{"target", {"hair.colour", "dark"}}, {"target", {"type", "person"}}}},
      {"man with dark beard", run("man with dark beard", people_en, people),
       RS{{"target", {"type", "person"}},
          {"target", {"beard.colour", "dark"}},
          {"target", {"hasBeard", "1"}}}},
      {"the green ball near a blue cube",
       run("the green ball near a blue cube", gre3d3_en, gre3d3),
       RS{{"target", {"colour", "green"}},
          {"target", {"type", "ball"}},
          {"target", {"near", "lm"}},
          {"lm", {"colour", "blue"}},
          {"lm", {"type", "cube"}}}},
  };
  std::string failed;
  size_t exact = 0;
  for (const Example &e : examples) {
    if (e.got == e.want) {
      ++exact;
    } else {
      failed += " '" + e.text + "'";
    }
  }
  const double elapsed = Seconds(start);
  Outcome outcome;
  outcome.pass = failed.empty() && elapsed < 1.0;
  outcome.detail = std::to_string(exact) +
                   "/" + std::to_string(examples.size()) +
                   " exact, " + Format(elapsed, 3) + " s";
  if (!failed.empty()) outcome.detail += "; mismatched:" + failed;
  return outcome;
}

Outcome RoundTrip() {
  auto start = std::chrono::steady_clock::now();
  Corpus corpus = SyntheticCorpus(150, 2026, 0.5, false);
  AnnotationSet set = AnnotateCorpus(corpus, FullLexicon());
  EvalReport report = EvaluateAnnotations(set, corpus);
  const double elapsed = Seconds(start);
  Outcome outcome;
  outcome.pass = report.n() >= 100 && report.mean_dice == 1.0 &&
                 report.accuracy == 1.0 && report.role_aware &&
                 elapsed < 5.0;
  outcome.detail = std::to_string(report.n()) + " items, dice " +
                   Format(report.mean_dice) + ", accuracy " +
                   Format(report.accuracy) + ", " + Format(elapsed, 3) + " s";
  return outcome;
}

Outcome BilingualInvariance() {
  DomainSchema schema = Gre3d3Schema();
  MappingTable lexicon = FullLexicon();
  std::mt19937_64 rng(55);
  size_t same = 0, total = 0;
  std::string example;
  for (int i = 0; i < 80; ++i) {
    Plan plan = RandomPlan(rng, 0.5);
    Realization en = Realize(plan, kEn);
    Realization pt = Realize(plan, kPt);
    AnnotationResult a =
        Annotate({Tokenize(en.text, kEn), kEn, ""}, lexicon, schema);
    AnnotationResult b =
        Annotate({Tokenize(pt.text, kPt), kPt, ""}, lexicon, schema);
    ++total;
    if (a.properties == b.properties && a.properties == Gold(plan)) {
      ++same;
    } else if (example.empty()) {
      example = "'" + en.text + "' vs '" + pt.text + "'";
    }
  }
  Outcome outcome;
  outcome.pass = total >= 50 && same == total;
  outcome.detail = std::to_string(same) + "/" + std::to_string(total) +
                   " pairs identical";
  if (!example.empty()) outcome.detail += "; first difference: " + example;
  return outcome;
}

// Exhaustive object filter for the feedback oracle.
std::set<std::string> FilterObjects(const RolePropertySet &description,
                                    const Scene &scene,
                                    const DomainSchema &schema) {
  PropertySet taxonomic, relations, landmark;
  for (const RoleProperty &rp : description) {
    if (rp.role != "target") {
      landmark.insert(rp.property);
    } else if (schema.IsRelational(rp.property.attribute)) {
      relations.insert(rp.property);
    } else {
      taxonomic.insert(rp.property);
    }
  }
  std::set<std::string> ids;
  for (const SceneObject &candidate : scene.objects) {
    bool ok = true;
    for (const Property &p : taxonomic) {
      ok = ok && candidate.properties.contains(p);
    }
    for (const Property &relation : relations) {
      bool found = false;
      for (const SceneObject &other : scene.objects) {
        if (other.id == candidate.id) continue;
        bool fits = true;
        for (const Property &p : landmark) {
          fits = fits && other.properties.contains(p);
        }
        found = found || (fits && candidate.properties.contains(
                                      {relation.attribute, other.id}));
      }
      ok = ok && found;
    }
    if (ok) ids.insert(candidate.id);
  }
  return ids;
}

Outcome OracleEquivalence() {
  DomainSchema schema = Gre3d3Schema();
  // Single-word, head-free, non-relational entries only.
  std::vector<LexicalEntry> entries;
  std::vector<std::string> pool = {"the", "a", "that", "one", "thing",
                                   "shiny", "left", "very"};
  for (const Synonyms &s : Vocabulary()) {
    if (schema.IsRelational(s.property.attribute)) continue;
    for (const std::string &w : s.en) {
      entries.push_back({{w}, "", s.property, kEn});
      pool.push_back(w);
    }
  }
  MappingTable lexicon(entries);
  std::mt19937_64 rng(404);
  size_t equal = 0, total = 0;
  for (int i = 0; i < 300; ++i) {
    std::vector<std::string> tokens;
    const size_t n = rng() % 8;
    for (size_t k = 0; k < n; ++k) tokens.push_back(pool[rng() % pool.size()]);
    RolePropertySet oracle;
    for (const std::string &token : tokens) {
      for (const LexicalEntry &e : entries) {
        if (e.surface.size() == 1 && e.surface[0] == token) {
          oracle.insert({"target", e.property});
        }
      }
    }
    ++total;
    if (Annotate({tokens, kEn, ""}, lexicon, schema).properties == oracle) {
      ++equal;
    }
  }

  // Feedback matching against the exhaustive filter on small scenes.
  static const std::vector<std::string> types = {"ball", "cube", "box"};
  static const std::vector<std::string> colours = {"red", "blue"};
  static const std::vector<std::string> sizes = {"large", "small"};
  static const std::vector<std::string> relations = {"near", "above"};
  size_t scenes_equal = 0, scenes_total = 0;
  for (int i = 0; i < 500; ++i) {
    Scene scene;
    scene.id = "r" + std::to_string(i);
    const size_t n = 1 + rng() % 10;
    for (size_t k = 0; k < n; ++k) {
      SceneObject o;
      o.id = "o" + std::to_string(k);
      o.properties = {{"type", types[rng() % 3]},
                      {"colour", colours[rng() % 2]},
                      {"size", sizes[rng() % 2]}};
      scene.objects.push_back(o);
    }
    for (SceneObject &o : scene.objects) {
      if (rng() % 2) {
        const std::string other = "o" + std::to_string(rng() % n);
        if (other != o.id) o.properties.insert({relations[rng() % 2], other});
      }
    }
    scene.target_id = "o" + std::to_string(rng() % n);
    RolePropertySet description;
    if (rng() % 2) description.insert({"target", {"type", types[rng() % 3]}});
    if (rng() % 2) description.insert({"target", {"colour", colours[rng() % 2]}});
    if (rng() % 2) description.insert({"target", {"size", sizes[rng() % 2]}});
    if (rng() % 2) {
      description.insert({"target", {relations[rng() % 2], "lm"}});
      if (rng() % 2) description.insert({"lm", {"type", types[rng() % 3]}});
      if (rng() % 2) description.insert({"lm", {"colour", colours[rng() % 2]}});
    }
    AnnotationResult result;
    result.properties = description;
    ++scenes_total;
    if (Check(result, scene, schema).matching_ids ==
        FilterObjects(description, scene, schema)) {
      ++scenes_equal;
    }
  }
  Outcome outcome;
  outcome.pass = total >= 200 && equal == total && scenes_equal == scenes_total;
  outcome.detail = "annotate " + std::to_string(equal) + "/" +
                   std::to_string(total) + ", feedback " +
                   std::to_string(scenes_equal) + "/" +
                   std::to_string(scenes_total) + " scenes of <= 10 objects";
  return outcome;
}

Outcome MetricValues() {
  std::vector<std::string> failures;
  auto expect = [&](bool ok, const std::string &what) {
    if (!ok) failures.push_back(what);
  };
  std::set<std::string> ab = {"a", "b"}, bc = {"b", "c"}, none;
  expect(Dice(ab, bc) == 0.5, "dice {a,b} {b,c}");
  expect(Dice(none, none) == 1.0, "dice empty");

  ChiSquareResult chi = ChiSquare2x2({{{30, 10}, {10, 30}}});
  expect(std::abs(chi.chi2 - 20.0) <= 1e-9, "chi2 statistic");
  expect(std::abs(chi.p - 7.744216431044e-06) <= 1e-6, "chi2 p");

  // Reference: scipy.stats.wilcoxon(a, b, zero_method="wilcox",
  // correction=False, method="approx").
  const std::vector<double> a = {0.875, 0.5, 1.0, 0.5,  0.75,
                                 0.625, 1.0, 0.25, 0.75, 0.9375};
  const std::vector<double> b = {0.625, 0.5625, 0.75, 0.5, 0.5,
                                 0.875, 0.75,   0.0,  0.5, 0.375};
  WilcoxonResult w = WilcoxonSignedRank(a, b);
  expect(std::abs(w.w - 33.0) <= 1e-3, "wilcoxon W");
  expect(std::abs(w.z - 2.058483443121) <= 1e-3, "wilcoxon Z");
  expect(std::abs(w.p - 3.954374901622e-02) <= 1e-3, "wilcoxon p");

  Outcome outcome;
  outcome.pass = failures.empty();
  outcome.detail = "chi2=" + Format(chi.chi2, 10) + " p=" + Format(chi.p) +
                   "; W=" + Format(w.w) + " Z=" + Format(w.z) +
                   " p=" + Format(w.p);
  for (const std::string &f : failures) outcome.detail += "; wrong " + f;
  return outcome;
}

// Inserts one unseen modifier before the target's head noun in every test
// item. The gold is unchanged.
void InjectHeldOut(Corpus *test, const std::vector<std::string> &held_out,
                   std::mt19937_64 &rng) {
  std::set<std::string> nouns;
  for (const Synonyms &s : Vocabulary()) {
    if (s.property.attribute == "type") nouns.insert(s.en.begin(), s.en.end());
  }
  for (CorpusItem &item : test->items) {
    std::vector<std::string> tokens = Split(item.text);
    size_t head = 0;
    while (head < tokens.size() && !nouns.contains(tokens[head])) ++head;
    tokens.insert(tokens.begin() + head, held_out[rng() % held_out.size()]);
    item.text.clear();
    for (const std::string &t : tokens) {
      item.text += (item.text.empty() ? "" : " ") + t;
    }
    if (item.token_labels) {
      item.token_labels->insert(item.token_labels->begin() + head,
                                std::nullopt);
    }
  }
}

Outcome MethodComparison() {
  Corpus corpus = SyntheticCorpus(200, 314, 0.5, true);
  auto [train, test] = SplitCorpus(corpus, 0.14, 14);

  std::set<std::string> vocabulary;
  for (const CorpusItem &item : corpus.items) {
    for (const std::string &t : Tokenize(item.text, kEn)) vocabulary.insert(t);
  }
  const std::vector<std::string> candidates = {
      "shiny", "wooden", "matte", "glossy", "plastic", "striped",
      "dull",  "metal",  "round", "square", "solid",   "hollow"};
  const size_t held_count = static_cast<size_t>(
      std::ceil(0.15 * static_cast<double>(vocabulary.size())));
  std::vector<std::string> held_out(candidates.begin(),
                                    candidates.begin() + held_count);
  std::mt19937_64 rng(15);
  InjectHeldOut(&test, held_out, rng);

  MappingTable lexicon = InduceFromCorpus(train);
  TaggerModel tagger = TrainTagger(train, nullptr);
  EvalReport heuristic =
      EvaluateAnnotations(AnnotateCorpus(test, lexicon), test);
  EvalReport baseline = EvaluateAnnotations(TagCorpus(test, tagger), test);
  ComparisonSummary summary = CompareMethods(heuristic, baseline, 0.05);
  if (verbose) {
    std::cout << RenderReportTable({heuristic, baseline})
              << RenderComparisonTable(summary);
  }

  // An imported TUNA-style corpus runs through the same evaluation.
  TempDir dir;
  std::string tuna_detail;
  bool tuna_ok = false;
  try {
    std::mt19937_64 trng(8);
    static const std::vector<std::string> types = {"couch", "chair", "desk",
                                                   "fan"};
    static const std::vector<std::string> colours = {"red", "blue", "green",
                                                     "grey"};
    for (int file = 0; file < 3; ++file) {
      std::ostringstream xml;
      xml << "<?xml version=\"1.0\"?>\n<TRIALS>\n";
      for (int t = 0; t < 30; ++t) {
        const std::string id = "t" + std::to_string(file * 30 + t);
        const std::string type = types[trng() % 4];
        const std::string colour = colours[trng() % 4];
        const std::string other = colours[(trng() % 3 + 1 +
                                           std::find(colours.begin(),
                                                     colours.end(), colour) -
                                           colours.begin()) % 4];
        const bool plural = t == 29;
        xml << "<TRIAL ID=\"" << id << "\"><DOMAIN>\n"
            << "<ENTITY ID=\"" << id << "a\" TYPE=\"target\">"
            << "<ATTRIBUTE NAME=\"type\" VALUE=\"" << type << "\"/>"
            << "<ATTRIBUTE NAME=\"colour\" VALUE=\"" << colour << "\"/>"
            << "</ENTITY>\n"
            << "<ENTITY ID=\"" << id << "b\" TYPE=\""
            << (plural ? "target" : "distractor") << "\">"
            << "<ATTRIBUTE NAME=\"type\" VALUE=\"" << type << "\"/>"
            << "<ATTRIBUTE NAME=\"colour\" VALUE=\"" << other << "\"/>"
            << "</ENTITY>\n</DOMAIN>\n"
            << "<WORD-STRING>the " << colour << " " << type
            << "</WORD-STRING>\n<ATTRIBUTE-SET>"
            << "<ATTRIBUTE NAME=\"colour\" VALUE=\"" << colour << "\"/>"
            << "<ATTRIBUTE NAME=\"type\" VALUE=\"" << type << "\"/>"
            << "</ATTRIBUTE-SET></TRIAL>\n";
      }
      xml << "</TRIALS>\n";
      WriteFileAtomic(dir.File("trials" + std::to_string(file) + ".xml"),
                      xml.str());
    }
    TunaImport import = ImportTuna(dir.path());
    auto [tuna_train, tuna_test] = SplitCorpus(import.corpus, 0.18, 18);
    MappingTable tuna_lexicon = InduceFromCorpus(tuna_train);
    TaggerModel tuna_tagger = TrainTagger(tuna_train, &tuna_lexicon);
    EvalReport h = EvaluateAnnotations(AnnotateCorpus(tuna_test, tuna_lexicon),
                                       tuna_test);
    EvalReport b =
        EvaluateAnnotations(TagCorpus(tuna_test, tuna_tagger), tuna_test);
    ComparisonSummary s = CompareMethods(h, b, 0.05);
    std::string table = RenderReportTable({h, b}) + RenderComparisonTable(s);
    if (verbose) std::cout << table;
    tuna_ok = import.plural_skipped == 3 && h.n() > 0 &&
              table.find("Heuristic") != std::string::npos &&
              table.find("Baseline") != std::string::npos;
    tuna_detail = "TUNA-style import of " +
                  std::to_string(import.corpus.items.size()) +
                  " trials evaluated (dice " + Format(h.mean_dice, 3) + ")";
  } catch (const std::exception &e) {
    tuna_detail = std::string("TUNA-style run failed: ") + e.what();
  }

  Outcome outcome;
  const bool significant = summary.dice_significant &&
                           summary.dice_direction == Direction::kFirstHigher;
  outcome.pass = heuristic.mean_dice >= baseline.mean_dice && significant &&
                 tuna_ok;
  outcome.detail =
      std::to_string(train.items.size()) + " train / " +
      std::to_string(test.items.size()) + " test, " +
      std::to_string(held_out.size()) + " held-out words; Heuristic dice " +
      Format(heuristic.mean_dice, 3) + " vs Baseline " +
      Format(baseline.mean_dice, 3) + ", Wilcoxon p=" +
      (summary.wilcoxon ? Format(summary.wilcoxon->p, 3) : "n/a") + "; " +
      tuna_detail;
  return outcome;
}

Outcome ServiceDurability() {
  TempDir dir;
  ServiceConfig config = LoadServiceConfig(DataPath("service.json"));
  config.data_dir = dir.File("data");
  const std::map<std::string, std::string> unique = {
      {"two-balls", "the red ball"},
      {"stacked", "the green cube on top of the large cube"},
      {"near-pair", "the yellow ball near the white cube"}};

  // The child records responses and is killed without any shutdown.
  int fds[2];
  if (::pipe(fds) != 0) return {false, "pipe failed"};
  pid_t child = ::fork();
  if (child == 0) {
    ::close(fds[0]);
    std::string message;
    try {
      ElicitationService service(config);
      SessionView a = service.StartSession("pilot", "durable-1");
      for (int trial = 0; trial < 2; ++trial) {
        std::string scene = service.CurrentScene(a.id)->id;
        service.Submit(a.id, "the ball", false);
        service.Submit(a.id, unique.at(scene), false);
      }
      SessionView b = service.StartSession("two-balls", "durable-2");
      service.Submit(b.id, "the ball", false);
      service.Submit(b.id, "a ball", false);
      service.Submit(b.id, "the ball", true);
      message = a.id + " " + b.id + "\n";
    } catch (const std::exception &e) {
      message = std::string("error ") + e.what() + "\n";
    }
    if (::write(fds[1], message.data(), message.size()) < 0) ::_exit(3);
    ::kill(::getpid(), SIGKILL);
    ::_exit(2);
  }
  ::close(fds[1]);
  std::string message;
  char buffer[256];
  ssize_t got;
  while ((got = ::read(fds[0], buffer, sizeof(buffer))) > 0) {
    message.append(buffer, static_cast<size_t>(got));
  }
  ::close(fds[0]);
  int status = 0;
  ::waitpid(child, &status, 0);
  if (!WIFSIGNALED(status) || WTERMSIG(status) != SIGKILL ||
      message.rfind("error", 0) == 0) {
    return {false, "child did not run to the kill: " + message};
  }
  std::istringstream ids(message);
  std::string pilot_session, override_session;
  ids >> pilot_session >> override_session;

  ElicitationService restarted(config);
  std::vector<StoredResponse> pilot = restarted.Responses("pilot");
  std::vector<StoredResponse> two = restarted.Responses("two-balls");
  SessionView resumed = restarted.GetSession(pilot_session);
  const bool durable = pilot.size() == 2 && two.size() == 1 &&
                       two[0].attempts == 3 && two[0].overridden &&
                       resumed.cursor == 2 &&
                       restarted.GetSession(override_session).completed();

  ReplayResult replay_pilot = ReplayResponses(config, "pilot");
  ReplayResult replay_two = ReplayResponses(config, "two-balls");
  const size_t checked = replay_pilot.checked + replay_two.checked;
  const size_t mismatches =
      replay_pilot.mismatches.size() + replay_two.mismatches.size();

  Outcome outcome;
  outcome.pass = durable && checked == 3 && mismatches == 0;
  outcome.detail = std::to_string(pilot.size() + two.size()) +
                   " responses survived SIGKILL, cursor " +
                   std::to_string(resumed.cursor) + " restored; replay " +
                   std::to_string(checked) + " checked, " +
                   std::to_string(mismatches) + " mismatches";
  return outcome;
}

}  // namespace
}  // namespace refannot

int main(int argc, char **argv) {
  using namespace refannot;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--verbose") == 0) verbose = true;
  }
  // The durability check forks, so it runs first while single-threaded.
  const std::vector<std::pair<std::string, Criterion>> criteria = {
      {"service-durability-and-replay", ServiceDurability},
      {"worked-examples", WorkedExamples},
      {"round-trip", RoundTrip},
      {"bilingual-invariance", BilingualInvariance},
      {"oracle-equivalence", OracleEquivalence},
      {"metric-values", MetricValues},
      {"method-comparison", MethodComparison},
  };
  int failures = 0;
  for (const auto &[name, check] : criteria) {
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception &e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (outcome.pass ? "PASS " : "FAIL ") << name << ": "
              << outcome.detail << std::endl;
    if (!outcome.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
