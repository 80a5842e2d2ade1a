#include "app.hpp"

#include <CLI11.hpp>
#include <functional>
#include <ostream>
#include <sstream>

#include "commands.hpp"
#include "lexlab/error.hpp"

namespace lexlab::cli {
namespace {

constexpr const char* kOutEnv = "LEXLAB_OUT_DIR";

void add_common(CLI::App& sub, CommonArgs& c) {
  sub.add_option("--out", c.out, "Output directory")->envname(kOutEnv)->capture_default_str();
  sub.add_option("--seed", c.seed, "Random seed")->capture_default_str();
  sub.add_option("--svg", c.svg, "Write SVG plots (true/false)")->capture_default_str();
}

void add_refgame_options(CLI::App& sub, RefgameArgs& a, bool sweep) {
  sub.add_option("--classes", a.classes, "Number of image classes (candidates per episode)")->capture_default_str();
  sub.add_option("--vocab", a.vocab, "Vocabulary size (list for sweep-rank)")->capture_default_str();
  sub.add_option("--lambda", a.lambda, "Bias (list for sweep-bias)")->capture_default_str();
  sub.add_option("--dim", a.dim, "Embedding dimension")->capture_default_str();
  sub.add_option("--hidden", a.hidden, "Hidden layer width")->capture_default_str();
  sub.add_option("--pool", a.pool, "Samples per class")->capture_default_str();
  sub.add_option("--episodes", a.episodes, "Training episodes")->capture_default_str();
  sub.add_option("--trials", a.trials, "Trials per episode")->capture_default_str();
  sub.add_option("--window", a.window, "Rolling accuracy window")->capture_default_str();
  sub.add_option("--learning-rate", a.learning_rate, "Base step size")->capture_default_str();
  sub.add_option("--noise", a.noise, "Sample noise around class prototypes")->capture_default_str();
  sub.add_option("--listener-input", a.listener_input, "onehot or softmax")->capture_default_str();
  sub.add_option("--image-activation", a.image_activation, "identity or relu")->capture_default_str();
  sub.add_option("--embeddings", a.embeddings, "Embedding CSV (class,dim0,...)")->capture_default_str();
  if (sweep) {
    sub.add_option("--repeats", a.repeats, "Seeds per value")->capture_default_str();
    sub.add_option("--jobs", a.jobs, "Concurrent runs")->capture_default_str();
  } else {
    sub.add_option("--save-params", a.save_params, "Write trained parameters (true/false)")->capture_default_str();
    sub.add_option("--write-embeddings", a.write_embeddings, "Write the embeddings used (true/false)")
        ->capture_default_str();
  }
}

int code_for(const std::exception& e) {
  if (dynamic_cast<const DomainError*>(&e)) return kExitUsage;
  if (dynamic_cast<const QuadratureError*>(&e) || dynamic_cast<const SizeGuardError*>(&e)) return kExitNumeric;
  if (dynamic_cast<const Error*>(&e)) return kExitData;
  if (dynamic_cast<const std::invalid_argument*>(&e)) return kExitUsage;
  return kExitData;
}

// Resolved configuration of the selected subcommand only, in the flat
// `path.key=value` form accepted by --config.
std::string manifest_text(const CLI::App& app) {
  std::string path, prefix;
  for (const CLI::App* sub = &app; !sub->get_subcommands().empty();) {
    sub = sub->get_subcommands().front();
    path += (path.empty() ? "" : " ") + sub->get_name();
    prefix += sub->get_name() + ".";
  }
  std::string text = "# lexlab run manifest\n# subcommand: " + path + "\n# re-run: lexlab --config " +
                     kManifestName + " " + path + " --out <dir>\n";
  std::istringstream all(app.config_to_str(true, false));
  for (std::string line; std::getline(all, line);)
    if (line.rfind(prefix, 0) == 0) text += line + "\n";
  return text;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lexicon emergence and referential game experiments", "lexlab"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Manifest or key=value config file; flags override its values");

  CommonArgs common;
  SlaviArgs slavi;
  ZipfArgs zipf;
  EmergeArgs emerge;
  RefgameArgs game;
  std::function<void(RunDir&)> action;

  auto* s = app.add_subcommand("slavi", "Tabulate the rank transform of a bias function");
  add_common(*s, common);
  s->add_option("--kind", slavi.kind, "step, ramp or table")->capture_default_str();
  s->add_option("--x", slavi.x, "Step transition point(s)")->capture_default_str();
  s->add_option("--r", slavi.r, "Rank grid, e.g. 1..10 or 0.5,1,2")->capture_default_str();
  s->add_option("--table", slavi.table, "lambda:value knots for --kind table")->capture_default_str();
  s->add_option("--tol", slavi.tol, "Quadrature tolerance")->capture_default_str();
  s->add_option("--series", slavi.series, "Also write ranks 1..N to series.csv")->capture_default_str();
  s->add_option("--bounds", slavi.bounds, "Also check the 1/r bounds (true/false)")->capture_default_str();
  s->callback([&] { action = [&](RunDir& d) { run_slavi(common, slavi, d, out); }; });

  auto* z = app.add_subcommand("zipf", "Fit a power law to a rank,frequency CSV");
  add_common(*z, common);
  z->add_option("--input", zipf.input, "CSV with rank,frequency columns")->capture_default_str();
  z->callback([&] { action = [&](RunDir& d) { run_zipf(common, zipf, d, out); }; });

  auto* e = app.add_subcommand("emerge", "Optimal lexical matrices across the bias");
  add_common(*e, common);
  e->add_option("--n", emerge.n, "Signals")->capture_default_str();
  e->add_option("--m", emerge.m, "Objects")->capture_default_str();
  e->add_option("--method", emerge.method, "exhaustive or ga")->capture_default_str();
  e->add_option("--grid", emerge.grid, "Lambda grid")->capture_default_str();
  e->add_option("--population", emerge.population, "GA population size")->capture_default_str();
  e->add_option("--mutation-rate", emerge.mutation_rate, "GA per-cell flip rate, 0 for automatic")
      ->capture_default_str();
  e->add_option("--generations", emerge.generations, "GA generations")->capture_default_str();
  e->add_option("--elitism", emerge.elitism, "GA survivors per generation")->capture_default_str();
  e->callback([&] { action = [&](RunDir& d) { run_emerge(common, emerge, d, out); }; });

  auto* g = app.add_subcommand("refgame", "Referential game with neural agents");
  g->require_subcommand(1);
  auto* train = g->add_subcommand("train", "Train one speaker/listener pair");
  add_common(*train, common);
  add_refgame_options(*train, game, false);
  train->callback([&] { action = [&](RunDir& d) { run_refgame(common, game, RefgameMode::train, d, out); }; });
  auto* rank = g->add_subcommand("sweep-rank", "Final accuracy across vocabulary sizes");
  add_common(*rank, common);
  add_refgame_options(*rank, game, true);
  rank->callback([&] { action = [&](RunDir& d) { run_refgame(common, game, RefgameMode::sweep_rank, d, out); }; });
  auto* bias = g->add_subcommand("sweep-bias", "Final accuracy across bias values");
  add_common(*bias, common);
  add_refgame_options(*bias, game, true);
  bias->callback([&] { action = [&](RunDir& d) { run_refgame(common, game, RefgameMode::sweep_bias, d, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    std::ostringstream o, er;
    app.exit(e, o, er);
    out << o.str() << er.str();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    app.exit(e, o, er);
    err << er.str() << o.str();
    return kExitUsage;
  }

  try {
    RunDir dir(common.out);
    dir.write_text(kManifestName, manifest_text(app));
    action(dir);
    dir.commit();
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return code_for(ex);
  }
  return kExitOk;
}

}  // namespace lexlab::cli
