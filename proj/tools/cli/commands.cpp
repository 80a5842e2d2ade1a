#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "csv.hpp"
#include "lexlab/emergence.hpp"
#include "lexlab/error.hpp"
#include "lexlab/neuralnet.hpp"
#include "lexlab/refgame.hpp"
#include "lexlab/slavi.hpp"
#include "parsing.hpp"
#include "svg_chart.hpp"

namespace lexlab::cli {
namespace {

using slavi::BiasFunction;

// Plot helpers read the CSV back so the charts show exactly what was written.
void plot_columns(RunDir& dir, const std::string& csv_name, const std::string& svg_name, LineChart chart,
                  const std::string& x_col, const std::vector<std::string>& y_cols,
                  const std::string& group_col = {}) {
  const CsvTable t = read_csv(dir.file(csv_name));
  const auto xs = t.numeric_column(x_col);
  for (const auto& y_col : y_cols) {
    const auto ys = t.numeric_column(y_col);
    if (group_col.empty()) {
      chart.series.push_back({y_col, xs, ys});
      continue;
    }
    const std::size_t g = t.column(group_col);
    std::vector<std::string> order;
    std::map<std::string, Series> groups;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      const std::string& key = t.rows[i][g];
      auto [it, fresh] = groups.try_emplace(key, Series{group_col + "=" + key, {}, {}});
      if (fresh) order.push_back(key);
      it->second.x.push_back(xs[i]);
      it->second.y.push_back(ys[i]);
    }
    for (const auto& key : order) chart.series.push_back(std::move(groups[key]));
  }
  dir.write_text(svg_name, chart.render());
}

BiasFunction parse_table(const std::string& text) {
  std::vector<std::pair<double, double>> knots;
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw DomainError("table entry '" + item + "' must be lambda:value");
    const auto l = parse_number_list(item.substr(0, colon));
    const auto v = parse_number_list(item.substr(colon + 1));
    if (l.size() != 1 || v.size() != 1) throw DomainError("table entry '" + item + "' must be lambda:value");
    knots.emplace_back(l[0], v[0]);
  }
  return BiasFunction::tabulated(std::move(knots));
}

void write_series(RunDir& dir, const slavi::RankSeries& s) {
  CsvTable t{{"rank", "frequency"}, {}};
  for (const auto& e : s.entries()) t.rows.push_back({std::to_string(e.rank), format_number(e.frequency)});
  write_csv(dir.file("series.csv"), t);
}

void write_fit(RunDir& dir, const slavi::ZipfFit& fit, std::ostream& out) {
  write_csv(dir.file("zipf.csv"), CsvTable{{"alpha", "log_intercept", "r_squared"},
                                            {{format_number(fit.alpha), format_number(fit.log_intercept),
                                              format_number(fit.r_squared)}}});
  std::ostringstream s;
  s << "alpha=" << format_number(fit.alpha) << "\nlog_intercept=" << format_number(fit.log_intercept)
    << "\nr_squared=" << format_number(fit.r_squared) << "\n";
  dir.write_text("summary.txt", s.str());
  out << s.str();
}

}  // namespace

void run_slavi(const CommonArgs& common, const SlaviArgs& args, RunDir& dir, std::ostream& out) {
  const auto rs = parse_number_list(args.r);
  for (double r : rs)
    if (!(r >= 0.0)) throw DomainError("r must be nonnegative");
  if (!(args.tol > 0.0)) throw DomainError("tol must be positive");

  CsvTable t;
  std::vector<double> xs;
  if (args.kind == "step") {
    xs = parse_number_list(args.x);
    t.header = {"r", "x", "value"};
    for (double x : xs)
      for (double r : rs)
        t.rows.push_back({format_number(r), format_number(x), format_number(slavi::slavi_step(r, x))});
  } else if (args.kind == "ramp") {
    t.header = {"r", "value"};
    for (double r : rs) t.rows.push_back({format_number(r), format_number(slavi::slavi_ramp(r))});
  } else if (args.kind == "table") {
    if (args.table.empty()) throw DomainError("--kind table needs --table");
    const BiasFunction f = parse_table(args.table);
    t.header = {"r", "value"};
    for (double r : rs) t.rows.push_back({format_number(r), format_number(slavi::slavi_numeric(f, r, args.tol))});
  } else {
    throw DomainError("unknown kind '" + args.kind + "' (step, ramp, table)");
  }
  write_csv(dir.file("slavi.csv"), t);

  if (args.series > 0) {
    const BiasFunction f = args.kind == "step"    ? BiasFunction::step(xs.front())
                           : args.kind == "ramp" ? BiasFunction::ramp()
                                                 : parse_table(args.table);
    write_series(dir, slavi::rank_series(f, args.series));
  }

  if (args.bounds) {
    std::vector<double> positive;
    std::copy_if(rs.begin(), rs.end(), std::back_inserter(positive), [](double r) { return r > 0.0; });
    const auto bx = args.kind == "step" ? xs : std::vector<double>{0.0};
    const auto rep = slavi::check_bounds(positive, bx);
    CsvTable b{{"r", "x", "value", "bound", "margin", "ok"}, {}};
    for (const auto& p : rep.step)
      b.rows.push_back({format_number(p.r), format_number(p.x), format_number(p.value), format_number(p.bound),
                        format_number(p.margin), p.ok ? "1" : "0"});
    write_csv(dir.file("bounds.csv"), b);
    CsvTable rb{{"r", "value", "scaled", "ok"}, {}};
    for (const auto& p : rep.ramp)
      rb.rows.push_back({format_number(p.r), format_number(p.value), format_number(p.scaled), p.ok ? "1" : "0"});
    write_csv(dir.file("ramp_bounds.csv"), rb);
    out << "bounds " << (rep.all_ok ? "hold" : "violated") << " worst_step_margin="
        << format_number(rep.worst_step_margin) << "\n";
  }

  if (common.svg) {
    LineChart chart{"Transform of the bias function", "rank r", "N(r)", {}, false};
    if (args.kind == "step")
      plot_columns(dir, "slavi.csv", "slavi.svg", chart, "r", {"value"}, "x");
    else
      plot_columns(dir, "slavi.csv", "slavi.svg", chart, "r", {"value"});
  }
  out << "wrote " << t.rows.size() << " rows\n";
}

void run_zipf(const CommonArgs&, const ZipfArgs& args, RunDir& dir, std::ostream& out) {
  if (args.input.empty()) throw DomainError("--input is required");
  const CsvTable t = read_csv(args.input);
  const auto ranks = t.numeric_column("rank");
  const auto freqs = t.numeric_column("frequency");
  std::vector<slavi::RankEntry> entries;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (ranks[i] != static_cast<double>(static_cast<int>(ranks[i])))
      throw IngestionError("rank must be an integer", static_cast<int>(i) + 2);
    entries.push_back({static_cast<int>(ranks[i]), freqs[i]});
  }
  write_fit(dir, slavi::zipf_fit(slavi::RankSeries(std::move(entries))), out);
}

void run_emerge(const CommonArgs& common, const EmergeArgs& args, RunDir& dir, std::ostream& out) {
  emergence::Method method;
  if (args.method == "exhaustive")
    method = emergence::Method::exhaustive;
  else if (args.method == "ga")
    method = emergence::Method::ga;
  else
    throw DomainError("unknown method '" + args.method + "' (exhaustive, ga)");

  emergence::GAParams ga;
  ga.population_size = args.population;
  if (args.mutation_rate > 0.0) ga.mutation_rate = args.mutation_rate;
  ga.generations = args.generations;
  ga.elitism = args.elitism;
  ga.seed = common.seed;

  const auto curve = emergence::sweep_lambda(args.n, args.m, parse_number_list(args.grid), method, ga);
  CsvTable t{{"lambda", "omega_max", "mean_lexicon", "mean_mutual_info"}, {}};
  for (const auto& p : curve.points)
    t.rows.push_back({format_number(p.lambda), format_number(p.omega_max), format_number(p.mean_lexicon),
                      format_number(p.mean_mutual_info)});
  write_csv(dir.file("emergence.csv"), t);

  std::ostringstream s;
  if (curve.has_transition)
    s << "transition_lambda=" << format_number(curve.transition_lambda) << "\n";
  else
    s << "no transition\n";
  dir.write_text("summary.txt", s.str());

  if (common.svg) {
    plot_columns(dir, "emergence.csv", "emergence_mutual_info.svg",
                 LineChart{"Mutual information of optimal languages", "lambda", "I(S,R) [bits]", {}, false}, "lambda",
                 {"mean_mutual_info"});
    plot_columns(dir, "emergence.csv", "emergence_lexicon.svg",
                 LineChart{"Lexicon size of optimal languages", "lambda", "signals in use", {}, false}, "lambda",
                 {"mean_lexicon"});
  }
  out << s.str();
}

namespace {

refgame::GameConfig game_config(const CommonArgs& common, const RefgameArgs& a) {
  refgame::GameConfig c;
  c.n_classes = a.classes;
  c.embed_dim = a.dim;
  c.hidden = a.hidden;
  c.pool_per_class = a.pool;
  c.episodes = a.episodes;
  c.trials_per_episode = a.trials;
  c.window = a.window;
  c.learning_rate = a.learning_rate;
  c.noise_scale = a.noise;
  c.listener_input = refgame::listener_input_from_string(a.listener_input);
  c.image_activation = nn::activation_from_string(a.image_activation);
  c.seed = common.seed;
  return c;
}

int single_int(const std::string& text, const char* flag) {
  const auto v = parse_int_list(text);
  if (v.size() != 1) throw DomainError(std::string(flag) + " takes a single value here");
  return v.front();
}

double single_double(const std::string& text, const char* flag) {
  const auto v = parse_number_list(text);
  if (v.size() != 1) throw DomainError(std::string(flag) + " takes a single value here");
  return v.front();
}

void write_trace(RunDir& dir, const refgame::TrainResult& res) {
  CsvTable t{{"episode", "reward", "rolling_accuracy"}, {}};
  for (std::size_t e = 0; e < res.episode_rewards.size(); ++e)
    t.rows.push_back({std::to_string(e), format_number(res.episode_rewards[e]), format_number(res.rolling[e])});
  write_csv(dir.file("trace.csv"), t);
}

}  // namespace

void run_refgame(const CommonArgs& common, const RefgameArgs& args, RefgameMode mode, RunDir& dir,
                 std::ostream& out) {
  refgame::GameConfig config = game_config(common, args);

  std::optional<refgame::EmbeddingSet> emb;
  if (!args.embeddings.empty()) emb = refgame::load_embeddings(args.embeddings, config.n_classes, config.embed_dim);

  std::ostringstream summary;
  if (mode == RefgameMode::train) {
    config.vocab_size = single_int(args.vocab, "--vocab");
    config.bias = single_double(args.lambda, "--lambda");
    config.validate();
    if (!emb) emb = refgame::embeddings_for(config);
    const auto res = refgame::train(config, *emb);
    write_trace(dir, res);
    if (args.save_params) {
      std::ofstream(dir.file("speaker.params")) << [&] {
        std::ostringstream s;
        nn::save_params(s, res.agents.speaker);
        return s.str();
      }();
      std::ofstream(dir.file("listener.params")) << [&] {
        std::ostringstream s;
        nn::save_params(s, res.agents.listener);
        return s.str();
      }();
    }
    if (args.write_embeddings) {
      std::ofstream f(dir.file("embeddings.csv"));
      refgame::write_embeddings(f, *emb);
    }
    summary << "episodes=" << res.episode_rewards.size() << "\nfinal_accuracy_pct="
            << format_number(res.final_accuracy_pct()) << "\n";
    dir.write_text("summary.txt", summary.str());
    if (common.svg)
      plot_columns(dir, "trace.csv", "trace.svg",
                   LineChart{"Training accuracy", "episode", "rolling accuracy", {}, false}, "episode",
                   {"rolling_accuracy"});
    out << summary.str();
    return;
  }

  refgame::SweepOptions opt;
  opt.repeats = args.repeats;
  opt.jobs = args.jobs;
  opt.embeddings = emb;
  if (opt.repeats < 1 || opt.jobs < 1) throw DomainError("--repeats and --jobs must be positive");

  refgame::SweepResult res;
  if (mode == RefgameMode::sweep_rank) {
    config.bias = single_double(args.lambda, "--lambda");
    res = refgame::sweep_rank(config, parse_int_list(args.vocab), config.bias, opt);
  } else {
    config.vocab_size = single_int(args.vocab, "--vocab");
    res = refgame::sweep_bias(config, parse_number_list(args.lambda), config.vocab_size, opt);
  }

  CsvTable t{{"param", "value", "final_accuracy_pct", "seed"}, {}};
  for (const auto& run : res.runs)
    t.rows.push_back({res.param, format_number(run.value), format_number(run.final_accuracy_pct),
                      std::to_string(run.seed)});
  write_csv(dir.file("sweep.csv"), t);

  // Rolling accuracy per value, averaged over repeats.
  CsvTable curves{{"value", "episode", "rolling_accuracy"}, {}};
  for (double v : res.values) {
    std::vector<double> sum;
    int count = 0;
    for (std::size_t i = 0; i < res.runs.size(); ++i) {
      if (res.runs[i].value != v) continue;
      const auto& rolling = res.traces[i].rolling;
      if (sum.empty()) sum.assign(rolling.size(), 0.0);
      for (std::size_t e = 0; e < rolling.size(); ++e) sum[e] += rolling[e];
      ++count;
    }
    for (std::size_t e = 0; e < sum.size(); ++e)
      curves.rows.push_back({format_number(v), std::to_string(e), format_number(sum[e] / count)});
  }
  write_csv(dir.file("curves.csv"), curves);

  for (std::size_t i = 0; i < res.values.size(); ++i)
    summary << res.param << "=" << format_number(res.values[i]) << " accuracy_pct="
            << format_number(res.accuracy_pct[i]) << "\n";
  summary << "slope=" << (res.slope ? format_number(*res.slope) : std::string("undefined")) << "\n";
  dir.write_text("summary.txt", summary.str());

  if (common.svg)
    plot_columns(dir, "curves.csv", "curves.svg",
                 LineChart{"Training accuracy by " + res.param, "episode", "rolling accuracy", {}, false}, "episode",
                 {"rolling_accuracy"}, "value");
  out << summary.str();
}

}  // namespace lexlab::cli
