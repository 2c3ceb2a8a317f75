// askew: conversation-graph bow-tie analysis driver.
//
//   askew generate --users 5000 --preset bbd --seed 7 --output corpus.jsonl
//   askew analyze --tweets corpus.jsonl --lexicon-dir data/lexicons --out report/

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "askew/csv.hpp"
#include "askew/pipeline.hpp"
#include "askew/synth.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

/// "IN=0.63,LSCC=0.12,..." -> per-component values; unnamed components stay empty.
std::array<std::optional<double>, askew::kComponentCount> parse_component_map(const std::string& text,
                                                                             const char* flag) {
  std::array<std::optional<double>, askew::kComponentCount> values{};
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    const auto c = eq == std::string::npos ? std::nullopt : askew::parse_component(item.substr(0, eq));
    if (!c) throw askew::ConfigError(std::string(flag) + ": expected COMPONENT=VALUE, got '" + item + "'");
    try {
      values[askew::index_of(*c)] = askew::csv::parse_real(item.substr(eq + 1));
    } catch (const std::invalid_argument&) {
      throw askew::ConfigError(std::string(flag) + ": bad number in '" + item + "'");
    }
  }
  return values;
}

struct AnalysisFlags {
  std::string tweets;
  std::string meta;
  std::string lexicon_dir;
  std::string days = "AUTO";
  std::string out;
  std::uint64_t seed = 42;
  askew::ClassifierRules rules;

  void attach(CLI::App* cmd) {
    cmd->add_option("--tweets", tweets, "Tweet JSONL file")->required();
    cmd->add_option("--meta", meta, "User metadata TSV");
    cmd->add_option("--lexicon-dir", lexicon_dir, "Directory holding sentiment/pos_tags/curse_words/word_frequency .tsv");
    cmd->add_option("--days", days, "AUTO or comma-separated ascending epoch-second boundaries");
    cmd->add_option("--out", out, "Output directory")->required();
    cmd->add_option("--seed", seed, "Accepted for interface stability; the analyses draw no random numbers");
    cmd->add_option("--pos-threshold", rules.pos_threshold, "PROMOTER sentiment threshold");
    cmd->add_option("--neg-threshold", rules.neg_threshold, "ADVERSARIAL sentiment threshold");
    cmd->add_option("--volume-quantile", rules.volume_quantile, "Tweet-count quantile marking high-volume users");
  }

  askew::RunConfig config() const {
    askew::RunConfig c;
    c.tweets = tweets;
    if (!meta.empty()) c.meta = meta;
    if (!lexicon_dir.empty()) c.lexicon_dir = lexicon_dir;
    c.days = askew::parse_days(days);
    c.out = out;
    c.seed = seed;
    c.rules = rules;
    return c;
  }
};

struct GenerateFlags {
  askew::SynthSpec spec;
  std::string preset;
  std::string masses;
  std::string bias;
  bool normalize_masses = false;
  std::uint64_t seed = 42;
  std::string output;
  std::string planned;

  void attach(CLI::App* cmd) {
    cmd->add_option("--users", spec.user_count, "Number of users");
    cmd->add_option("--days", spec.days, "Days the corpus spans");
    cmd->add_option("--tweets-per-user", spec.tweets_per_user, "Mean tweets per user");
    cmd->add_option("--start", spec.start, "Epoch second of the first day");
    cmd->add_option("--preset", preset, "Component masses: bbd, basd2 or basd3");
    cmd->add_option("--masses", masses, "COMPONENT=FRACTION list, e.g. IN=0.6,LSCC=0.4");
    cmd->add_flag("--normalize-masses", normalize_masses, "Rescale --masses to sum to 1");
    cmd->add_option("--bias", bias, "COMPONENT=P list: probability a sentiment word is positive");
    cmd->add_option("--seed", seed, "Random seed");
    cmd->add_option("--output", output, "Output JSONL (default: stdout)");
    cmd->add_option("--planned", planned, "Also write the planted user,component CSV here");
  }

  void run() {
    if (!preset.empty() && !masses.empty()) throw askew::ConfigError("--preset and --masses are exclusive");
    if (!preset.empty()) {
      const auto masses = askew::preset_masses(preset);
      if (!masses) throw askew::ConfigError("--preset: unknown preset '" + preset + "' (bbd, basd2, basd3)");
      spec.masses = *masses;
    } else if (!masses.empty()) {
      const auto given = parse_component_map(masses, "--masses");
      for (std::size_t c = 0; c < askew::kComponentCount; ++c) spec.masses[c] = given[c].value_or(0.0);
      if (normalize_masses) {
        try {
          spec.masses = askew::normalized(spec.masses);
        } catch (const std::invalid_argument& e) {
          throw askew::ConfigError(std::string("--masses: ") + e.what());
        }
      }
    }
    if (!bias.empty()) {
      const auto given = parse_component_map(bias, "--bias");
      for (std::size_t c = 0; c < askew::kComponentCount; ++c) {
        if (given[c]) spec.positive_bias[c] = *given[c];
      }
    }
    try {
      spec.validate();
    } catch (const std::invalid_argument& e) {
      throw askew::ConfigError(std::string("infeasible corpus spec: ") + e.what());
    }

    const askew::SynthCorpus corpus = askew::generate_corpus(spec, seed);
    if (output.empty()) {
      askew::write_tweets(std::cout, corpus.tweets);
    } else {
      std::ofstream out(output, std::ios::binary | std::ios::trunc);
      if (!out) throw askew::IngestError("cannot write " + output);
      askew::write_tweets(out, corpus.tweets);
    }
    if (!planned.empty()) {
      std::ofstream out(planned, std::ios::binary | std::ios::trunc);
      if (!out) throw askew::IngestError("cannot write " + planned);
      out << "user,component\n";
      for (const auto& [user, c] : corpus.planned) out << askew::csv::escape(user) << ',' << askew::to_string(c) << '\n';
    }
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conversation-graph bow-tie analysis"};
  app.require_subcommand(1);

  GenerateFlags generate;
  generate.attach(app.add_subcommand("generate", "Write a synthetic corpus with planted bow-tie components"));

  struct Stage {
    const char* name;
    const char* help;
    void (*run)(const askew::RunConfig&);
    AnalysisFlags flags;
    CLI::App* cmd = nullptr;
  };
  std::array<Stage, 5> stages{{
      {"analyze", "Run every analysis and write the full report tree", askew::run_analyze, {}},
      {"decompose", "Graph export, bow-tie assignment and component statistics", askew::run_decompose, {}},
      {"migrate", "Cumulative daily slices and the alluvial migration table", askew::run_migrate, {}},
      {"flows", "Formality and sentiment CDFs of IN->LSCC and LSCC->OUT", askew::run_flows, {}},
      {"classify", "Per-user sentiment profiles, user types and influence medians", askew::run_classify, {}},
  }};
  for (Stage& s : stages) {
    s.cmd = app.add_subcommand(s.name, s.help);
    s.flags.attach(s.cmd);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfig;
  }

  try {
    if (app.got_subcommand("generate")) {
      generate.run();
      return 0;
    }
    for (Stage& s : stages) {
      if (s.cmd->parsed()) s.run(s.flags.config());
    }
    return 0;
  } catch (const askew::ConfigError& e) {
    std::cerr << "askew: configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "askew: " << e.what() << '\n';
    return kExitRuntime;
  }
}
