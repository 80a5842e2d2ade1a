#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "run_dir.hpp"

namespace lexlab::cli {

struct CommonArgs {
  std::string out = "lexlab-out";
  std::uint64_t seed = 1;
  bool svg = true;
};

struct SlaviArgs {
  std::string kind = "step";
  std::string x = "0.41";
  std::string r = "1..10";
  std::string table;
  double tol = 1e-10;
  int series = 0;
  bool bounds = false;
};

struct ZipfArgs {
  std::string input;
};

struct EmergeArgs {
  int n = 3;
  int m = 3;
  std::string method = "exhaustive";
  std::string grid = "0.05..0.95:0.05";
  int population = 32;
  double mutation_rate = 0.0;  // 0 selects min(2/(n*m), 0.5)
  int generations = 2000;
  int elitism = 1;
};

struct RefgameArgs {
  int classes = 10;
  std::string vocab = "10";
  std::string lambda = "0.5";
  int dim = 64;
  int hidden = 32;
  int pool = 100;
  int episodes = 1000;
  int trials = 1;
  int window = 100;
  double learning_rate = 0.001;
  double noise = 0.1;
  std::string listener_input = "onehot";
  std::string image_activation = "relu";
  std::string embeddings;
  int repeats = 1;
  int jobs = 1;
  bool save_params = false;
  bool write_embeddings = false;
};

enum class RefgameMode { train, sweep_rank, sweep_bias };

void run_slavi(const CommonArgs& common, const SlaviArgs& args, RunDir& dir, std::ostream& out);
void run_zipf(const CommonArgs& common, const ZipfArgs& args, RunDir& dir, std::ostream& out);
void run_emerge(const CommonArgs& common, const EmergeArgs& args, RunDir& dir, std::ostream& out);
void run_refgame(const CommonArgs& common, const RefgameArgs& args, RefgameMode mode, RunDir& dir,
                 std::ostream& out);

}  // namespace lexlab::cli
