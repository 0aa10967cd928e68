// Copyright 2026 The nlps Authors
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

// nlps: build, inspect, query and serve literature snapshots.
//
//   nlps build --papers papers.tsv --citations citations.tsv --out out/
//   nlps query --dir out/ --terms sentiment,emotion --years 2000:2019
//   nlps serve --dir out/ --addr 127.0.0.1:8080
//   nlps report --dir out/
//   nlps generate --out data/ --seed 7 --n 200

#include <atomic>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nlps/api.hpp"
#include "nlps/fixtures.hpp"
#include "nlps/pipeline.hpp"
#include "nlps/service.hpp"

namespace {

constexpr int kExitSpec = 1;
constexpr int kExitIo = 2;

namespace fs = std::filesystem;

struct ViewOptions {
  std::size_t palette = 20;
  std::size_t top_papers = 30;
  std::size_t top_authors = 30;
  std::size_t treemap_top = 40;
  std::string treemap = "venue-type";
  std::string stopwords_file;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--palette", palette, "Number of segment colours")->check(CLI::PositiveNumber);
    cmd.add_option("--top-papers", top_papers, "Length of the top papers list")->check(CLI::PositiveNumber);
    cmd.add_option("--top-authors", top_authors, "Length of the top authors list")->check(CLI::PositiveNumber);
    cmd.add_option("--treemap-top", treemap_top, "Treemap entries to return")->check(CLI::PositiveNumber);
    cmd.add_option("--stopwords", stopwords_file, "Treemap stopword file, one word per line")
        ->check(CLI::ExistingFile);
  }

  nlps::AggregateOptions resolve() const {
    nlps::AggregateOptions opt;
    opt.palette_size = palette;
    opt.top_papers = top_papers;
    opt.top_authors = top_authors;
    opt.treemap_top = treemap_top;
    const auto facet = nlps::treemap_facet_from_string(treemap);
    if (!facet) throw nlps::SpecError("treemap", "unknown facet '" + treemap + "'");
    opt.treemap_facet = *facet;
    if (!stopwords_file.empty()) {
      std::ifstream in(stopwords_file);
      if (!in) throw nlps::IoError("cannot open " + stopwords_file);
      opt.stopwords.clear();
      std::string line;
      while (std::getline(in, line)) {
        const auto w = nlps::text::trim(line);
        if (!w.empty() && w.front() != '#') opt.stopwords.insert(nlps::text::to_lower(w));
      }
    }
    return opt;
  }
};

nlps::LanguageLexicon load_lexicon(const std::string& path) {
  if (path.empty()) return nlps::LanguageLexicon::defaults();
  std::ifstream in(path);
  if (!in) throw nlps::IoError("cannot open " + path);
  return nlps::LanguageLexicon::from_stream(in);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  for (const auto part : nlps::text::split(s, ',')) {
    const auto t = nlps::text::trim(part);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

void print_parse_errors(std::string_view file, const std::vector<nlps::ParseError>& errors) {
  for (const auto& e : errors) std::cerr << "warning: " << file << ":" << e.line << ": " << e.message << '\n';
}

// ---------------------------------------------------------------------------

struct BuildArgs {
  std::string papers, citations, aliases, out, languages;
  bool strict = false;
};

int cmd_build(const BuildArgs& a) {
  nlps::BuildPaths paths{a.papers, a.citations, std::nullopt};
  if (!a.aliases.empty()) paths.aliases = fs::path(a.aliases);
  for (const auto& p : {fs::path(a.papers), fs::path(a.citations)}) {
    if (!fs::is_regular_file(p)) {
      std::cerr << "error: missing input " << p.string() << '\n';
      return kExitIo;
    }
  }
  const auto outcome = nlps::build_from_files(paths, load_lexicon(a.languages));
  print_parse_errors(a.papers, outcome.ingest.parse_errors);
  print_parse_errors(a.citations, outcome.citation_errors);
  if (a.strict && (!outcome.ingest.parse_errors.empty() || !outcome.citation_errors.empty())) {
    std::cerr << "error: parse errors in strict mode; nothing written\n";
    return kExitIo;
  }
  nlps::write_snapshot(*outcome.snapshot, a.out);

  const auto& r = outcome.ingest;
  std::cout << "rows read:        " << r.total_read << '\n'
            << "papers kept:      " << r.kept << '\n'
            << "non-papers:       " << r.discarded_non_papers << '\n'
            << "parse errors:     " << r.parse_errors.size() + outcome.citation_errors.size() << '\n'
            << nlps::alignment_report(outcome.stats) << "output:           " << a.out << '\n';
  return 0;
}

// ---------------------------------------------------------------------------

struct QueryArgs {
  std::string dir;
  std::string spec_file, spec_json;
  std::string terms, years, author, bigram, language;
  std::vector<int> year_clicks;
  std::vector<std::string> venues, types, excludes;
  ViewOptions view;
};

nlohmann::json spec_document(const QueryArgs& a) {
  nlohmann::json doc = nlohmann::json::object();
  if (!a.spec_file.empty()) {
    std::ifstream in(a.spec_file);
    if (!in) throw nlps::IoError("cannot open " + a.spec_file);
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw nlps::SpecError("", std::string("malformed spec file: ") + e.what());
    }
  }
  if (!a.spec_json.empty()) {
    try {
      doc = nlohmann::json::parse(a.spec_json);
    } catch (const nlohmann::json::parse_error& e) {
      throw nlps::SpecError("", std::string("malformed --spec: ") + e.what());
    }
  }
  if (!doc.is_object()) throw nlps::SpecError("", "filter spec must be a JSON object");
  if (!a.terms.empty()) doc["title_terms"] = split_list(a.terms);
  if (!a.years.empty()) {
    const auto colon = a.years.find(':');
    const auto lo = nlps::tsv::parse_int<int>(std::string_view(a.years).substr(0, colon));
    const auto hi = colon == std::string::npos ? lo
                                               : nlps::tsv::parse_int<int>(std::string_view(a.years).substr(colon + 1));
    if (!lo || !hi) throw nlps::SpecError("year_range", "expected LO:HI");
    doc["year_range"] = {*lo, *hi};
  }
  if (!a.year_clicks.empty()) doc["years_clicked"] = a.year_clicks;
  if (!a.venues.empty()) doc["venues"] = a.venues;
  if (!a.types.empty()) doc["paper_types"] = a.types;
  if (!a.author.empty()) doc["author_query"] = a.author;
  if (!a.bigram.empty()) doc["title_bigram"] = a.bigram;
  if (!a.language.empty()) doc["language"] = a.language;
  if (!a.excludes.empty()) doc["excluded_ids"] = a.excludes;
  return doc;
}

int cmd_query(const QueryArgs& a) {
  nlps::FilterSpec spec;
  nlps::AggregateOptions opt;
  try {
    spec = nlps::filter_spec_from_json(spec_document(a));
    opt = a.view.resolve();
  } catch (const nlps::SpecError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSpec;
  }
  const auto snapshot = nlps::load_snapshot(a.dir);
  std::cout << nlps::api::render(nlps::api::answer_query(snapshot, spec, opt));
  return 0;
}

// ---------------------------------------------------------------------------

struct ServeArgs {
  std::string dir;
  std::string addr = "127.0.0.1:8080";
  std::string languages;
  std::string static_dir;
  ViewOptions view;
};

int cmd_serve(const ServeArgs& a) {
  const auto colon = a.addr.rfind(':');
  const auto port = colon == std::string::npos ? std::nullopt
                                               : nlps::tsv::parse_int<int>(std::string_view(a.addr).substr(colon + 1));
  if (!port || *port < 0 || *port > 65535) {
    std::cerr << "error: --addr must be HOST:PORT\n";
    return kExitSpec;
  }
  const auto host = a.addr.substr(0, colon);

  nlps::ServiceConfig config;
  try {
    config.aggregate = a.view.resolve();
  } catch (const nlps::SpecError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSpec;
  }
  config.lexicon = load_lexicon(a.languages);
  if (!a.static_dir.empty()) config.static_dir = fs::path(a.static_dir);
  nlps::Service service(std::move(config));
  service.publish(std::make_shared<const nlps::Snapshot>(nlps::load_snapshot(a.dir)));

  httplib::Server server;
  service.mount(server);
  if (!server.bind_to_port(host, *port)) {
    std::cerr << "error: cannot listen on " << a.addr << '\n';
    return kExitIo;
  }

  // Signals are handled on a dedicated thread so stop() never runs inside a
  // signal handler.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);
  std::atomic<bool> signalled{false};
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    signalled = true;
    server.stop();
  });

  std::cerr << "listening on " << a.addr << '\n';
  server.listen_after_bind();
  // listen can also return on a socket error; wake the waiter then.
  if (!signalled) pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  std::cerr << "stopped\n";
  return 0;
}

int cmd_report(const std::string& dir) {
  std::ifstream in(fs::path(dir) / "stats.json");
  if (!in) throw nlps::IoError("cannot open " + (fs::path(dir) / "stats.json").string());
  nlps::AlignmentStats stats;
  try {
    stats = nlohmann::json::parse(in).get<nlps::AlignmentStats>();
  } catch (const nlohmann::json::exception& e) {
    throw nlps::BuildError(std::string("stats.json: ") + e.what());
  }
  std::cout << nlps::alignment_report(stats);
  return 0;
}

int cmd_generate(const nlps::fixtures::GeneratorConfig& cfg, const std::string& out) {
  const auto corpus = nlps::fixtures::generate_corpus(cfg);
  nlps::fixtures::write_corpus(corpus, out);
  std::cout << "wrote " << cfg.n_papers << " papers to " << out << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Literature analytics: build, query and serve paper/citation snapshots"};
  app.require_subcommand(1);

  BuildArgs build;
  auto* b = app.add_subcommand("build", "Ingest, align and write the tables");
  b->add_option("--papers", build.papers, "Anthology export (papers.tsv)")->required();
  b->add_option("--citations", build.citations, "Citation records (citations.tsv)")->required();
  b->add_option("--aliases", build.aliases, "Author alias table (aliases.tsv)")->check(CLI::ExistingFile);
  b->add_option("--out", build.out, "Output directory")->required();
  b->add_option("--languages", build.languages, "Language lexicon, one name per line")->check(CLI::ExistingFile);
  b->add_flag("--strict", build.strict, "Fail on any malformed input line");

  QueryArgs query;
  auto* q = app.add_subcommand("query", "Filter a built snapshot and print the aggregate bundle as JSON");
  q->add_option("--dir", query.dir, "Built snapshot directory")->required()->check(CLI::ExistingDirectory);
  q->add_option("--spec-file", query.spec_file, "FilterSpec JSON file")->check(CLI::ExistingFile);
  q->add_option("--spec", query.spec_json, "FilterSpec JSON text");
  q->add_option("--terms", query.terms, "Title terms, comma separated (any may match)");
  q->add_option("--years", query.years, "Inclusive year range LO:HI");
  q->add_option("--year", query.year_clicks, "Clicked year (repeatable)");
  q->add_option("--venue", query.venues, "Venue (repeatable)");
  q->add_option("--type", query.types, "Paper type (repeatable)");
  q->add_option("--author", query.author, "Author as \"Last\" or \"Last, First\"");
  q->add_option("--bigram", query.bigram, "Title bigram");
  q->add_option("--language", query.language, "Language mentioned in the title");
  q->add_option("--exclude", query.excludes, "Excluded nlps_id (repeatable)");
  q->add_option("--treemap", query.view.treemap, "venue-type | unigram | bigram | language");
  query.view.add_to(*q);

  ServeArgs serve;
  auto* s = app.add_subcommand("serve", "Serve the JSON API");
  s->add_option("--dir", serve.dir, "Built snapshot directory")
      ->required()
      ->envname("NLPS_DATA_DIR")
      ->check(CLI::ExistingDirectory);
  s->add_option("--addr", serve.addr, "Listen address HOST:PORT")->envname("NLPS_ADDR");
  s->add_option("--languages", serve.languages, "Language lexicon used by /api/reload")
      ->envname("NLPS_LANGUAGES")
      ->check(CLI::ExistingFile);
  s->add_option("--static", serve.static_dir, "Directory served at /")->check(CLI::ExistingDirectory);
  serve.view.add_to(*s);

  std::string report_dir;
  auto* r = app.add_subcommand("report", "Print the alignment report of a built snapshot");
  r->add_option("--dir", report_dir, "Built snapshot directory")->required();

  nlps::fixtures::GeneratorConfig gen;
  std::string gen_out;
  auto* g = app.add_subcommand("generate", "Write a synthetic corpus with a ground-truth manifest");
  g->add_option("--out", gen_out, "Output directory")->required();
  g->add_option("--seed", gen.seed, "Random seed");
  g->add_option("--n", gen.n_papers, "Number of papers");
  g->add_option("--alignment-rate", gen.alignment_rate, "Fraction of papers with one matching citation record");
  g->add_option("--collision-rate", gen.collision_rate, "Fraction of papers with an ambiguous key");
  g->add_option("--year-lo", gen.year_lo, "First year");
  g->add_option("--year-hi", gen.year_hi, "Last year");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitSpec;
  }

  try {
    if (*b) return cmd_build(build);
    if (*q) return cmd_query(query);
    if (*s) return cmd_serve(serve);
    if (*r) return cmd_report(report_dir);
    if (*g) return cmd_generate(gen, gen_out);
  } catch (const nlps::SpecError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSpec;
  } catch (const nlps::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSpec;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return 0;
}
