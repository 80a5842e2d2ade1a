#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace lexlab::info {

/// Binary signal-object adjacency matrix. Rows are signals (words), columns
/// are objects (referents); a set cell links a word to an object.
class LexicalMatrix {
 public:
  LexicalMatrix(int n_signals, int n_objects);
  /// Row-major nested list, e.g. {{1, 1}, {0, 1}}. Entries must be 0 or 1.
  LexicalMatrix(std::initializer_list<std::initializer_list<int>> rows);

  /// Bit i*m + j of `code` sets cell (i, j). Requires n*m <= 64.
  static LexicalMatrix from_code(int n_signals, int n_objects, std::uint64_t code);
  static LexicalMatrix identity(int n);

  int n_signals() const noexcept { return n_; }
  int n_objects() const noexcept { return m_; }

  bool link(int signal, int object) const { return cells_[index(signal, object)] != 0; }
  void set(int signal, int object, bool value) { cells_[index(signal, object)] = value ? 1 : 0; }
  void flip(int signal, int object) { cells_[index(signal, object)] ^= 1; }

  /// Number of signals linked to `object` (the synonym count of that object).
  int column_links(int object) const;
  int row_links(int signal) const;

  /// Every object column carries at least one link.
  bool valid() const;
  /// Throws InvalidMatrixError naming the first unlinked column.
  void require_valid() const;

  std::uint64_t code() const;

  friend bool operator==(const LexicalMatrix&, const LexicalMatrix&) = default;

 private:
  std::size_t index(int signal, int object) const;

  int n_;
  int m_;
  std::vector<std::uint8_t> cells_;
};

/// p(s_i, r_j), row-major n_signals x n_objects.
struct JointTable {
  int n_signals = 0;
  int n_objects = 0;
  std::vector<double> p;

  double operator()(int signal, int object) const {
    return p[static_cast<std::size_t>(signal) * n_objects + object];
  }
  std::vector<double> signal_marginal() const;
  std::vector<double> object_marginal() const;
};

struct InfoMeasures {
  double entropy_S = 0.0;               // H(S), bits
  double cond_entropy_S_given_R = 0.0;  // H(S|R), bits
  double mutual_info = 0.0;             // I(S,R) = H(S) - H(S|R), bits
  int lexicon_size = 0;                 // signals with at least one link
};

/// Weight on listener interests. Construction enforces 0 < lambda < 1.
class Bias {
 public:
  explicit Bias(double lambda);
  double value() const noexcept { return lambda_; }

 private:
  double lambda_;
};

/// Objects are equiprobable and a speaker picks uniformly among the synonyms
/// of an object: p(s_i, r_j) = a_ij / (m * w_j) with w_j the column link count.
JointTable joint_distribution(const LexicalMatrix& a);

InfoMeasures measures(const LexicalMatrix& a);

/// I(S,R) by the double sum over the joint table,
/// sum p(s,r) log2(p(s,r) / (p(s) p(r))). Independent of measures().
double mutual_info_direct(const LexicalMatrix& a);

/// Omega(lambda) = lambda I(S,R) - (1 - lambda) H(S), in bits. Larger is better.
double energy(const LexicalMatrix& a, Bias b);
double energy(const InfoMeasures& m, Bias b);

/// -sum p log2 p with 0 log 0 = 0.
double entropy_bits(const std::vector<double>& probs);

}  // namespace lexlab::info
