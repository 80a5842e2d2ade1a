#include "lexlab/infotheory.hpp"

#include <cmath>
#include <string>

#include "lexlab/error.hpp"

namespace lexlab::info {

LexicalMatrix::LexicalMatrix(int n_signals, int n_objects) : n_(n_signals), m_(n_objects) {
  if (n_signals <= 0 || n_objects <= 0)
    throw DomainError("LexicalMatrix: dimensions must be positive");
  cells_.assign(static_cast<std::size_t>(n_) * m_, 0);
}

LexicalMatrix::LexicalMatrix(std::initializer_list<std::initializer_list<int>> rows)
    : n_(static_cast<int>(rows.size())), m_(rows.size() == 0 ? 0 : static_cast<int>(rows.begin()->size())) {
  if (n_ == 0 || m_ == 0) throw DomainError("LexicalMatrix: dimensions must be positive");
  cells_.reserve(static_cast<std::size_t>(n_) * m_);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != m_) throw ShapeError("LexicalMatrix: ragged rows");
    for (int v : row) {
      if (v != 0 && v != 1) throw DomainError("LexicalMatrix: entries must be 0 or 1");
      cells_.push_back(static_cast<std::uint8_t>(v));
    }
  }
}

LexicalMatrix LexicalMatrix::from_code(int n_signals, int n_objects, std::uint64_t code) {
  LexicalMatrix a(n_signals, n_objects);
  if (a.cells_.size() > 64) throw SizeGuardError("LexicalMatrix::from_code: more than 64 cells");
  for (std::size_t k = 0; k < a.cells_.size(); ++k) a.cells_[k] = (code >> k) & 1U;
  return a;
}

LexicalMatrix LexicalMatrix::identity(int n) {
  LexicalMatrix a(n, n);
  for (int i = 0; i < n; ++i) a.set(i, i, true);
  return a;
}

std::size_t LexicalMatrix::index(int signal, int object) const {
  return static_cast<std::size_t>(signal) * m_ + object;
}

int LexicalMatrix::column_links(int object) const {
  int w = 0;
  for (int i = 0; i < n_; ++i) w += cells_[index(i, object)];
  return w;
}

int LexicalMatrix::row_links(int signal) const {
  int w = 0;
  for (int j = 0; j < m_; ++j) w += cells_[index(signal, j)];
  return w;
}

bool LexicalMatrix::valid() const {
  for (int j = 0; j < m_; ++j)
    if (column_links(j) == 0) return false;
  return true;
}

void LexicalMatrix::require_valid() const {
  for (int j = 0; j < m_; ++j)
    if (column_links(j) == 0)
      throw InvalidMatrixError("lexical matrix: object column " + std::to_string(j) + " has no links");
}

std::uint64_t LexicalMatrix::code() const {
  if (cells_.size() > 64) throw SizeGuardError("LexicalMatrix::code: more than 64 cells");
  std::uint64_t c = 0;
  for (std::size_t k = 0; k < cells_.size(); ++k) c |= static_cast<std::uint64_t>(cells_[k]) << k;
  return c;
}

std::vector<double> JointTable::signal_marginal() const {
  std::vector<double> ps(n_signals, 0.0);
  for (int i = 0; i < n_signals; ++i)
    for (int j = 0; j < n_objects; ++j) ps[i] += (*this)(i, j);
  return ps;
}

std::vector<double> JointTable::object_marginal() const {
  std::vector<double> pr(n_objects, 0.0);
  for (int i = 0; i < n_signals; ++i)
    for (int j = 0; j < n_objects; ++j) pr[j] += (*this)(i, j);
  return pr;
}

Bias::Bias(double lambda) : lambda_(lambda) {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw DomainError("bias lambda must lie in the open interval (0, 1), got " + std::to_string(lambda));
}

JointTable joint_distribution(const LexicalMatrix& a) {
  a.require_valid();
  const int n = a.n_signals();
  const int m = a.n_objects();
  JointTable t{n, m, std::vector<double>(static_cast<std::size_t>(n) * m, 0.0)};
  for (int j = 0; j < m; ++j) {
    const double w = a.column_links(j);
    for (int i = 0; i < n; ++i)
      if (a.link(i, j)) t.p[static_cast<std::size_t>(i) * m + j] = 1.0 / (m * w);
  }
  return t;
}

double entropy_bits(const std::vector<double>& probs) {
  double h = 0.0;
  for (double p : probs)
    if (p > 0.0) h -= p * std::log2(p);
  return h;
}

InfoMeasures measures(const LexicalMatrix& a) {
  const JointTable t = joint_distribution(a);
  InfoMeasures out;
  out.entropy_S = entropy_bits(t.signal_marginal());
  // Given object j the speaker is uniform over w_j synonyms: H(S|r_j) = log2 w_j.
  double h_cond = 0.0;
  for (int j = 0; j < a.n_objects(); ++j) h_cond += std::log2(static_cast<double>(a.column_links(j)));
  out.cond_entropy_S_given_R = h_cond / a.n_objects();
  out.mutual_info = out.entropy_S - out.cond_entropy_S_given_R;
  for (int i = 0; i < a.n_signals(); ++i)
    if (a.row_links(i) > 0) ++out.lexicon_size;
  return out;
}

double mutual_info_direct(const LexicalMatrix& a) {
  const JointTable t = joint_distribution(a);
  const auto ps = t.signal_marginal();
  const auto pr = t.object_marginal();
  double mi = 0.0;
  for (int i = 0; i < t.n_signals; ++i)
    for (int j = 0; j < t.n_objects; ++j) {
      const double p = t(i, j);
      if (p > 0.0) mi += p * std::log2(p / (ps[i] * pr[j]));
    }
  return mi;
}

double energy(const InfoMeasures& m, Bias b) {
  const double lambda = b.value();
  return lambda * m.mutual_info - (1.0 - lambda) * m.entropy_S;
}

double energy(const LexicalMatrix& a, Bias b) { return energy(measures(a), b); }

}  // namespace lexlab::info
