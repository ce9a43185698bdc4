#include "symtoda/bruhat.hpp"

#include "symtoda/errors.hpp"
#include "symtoda/poisson.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace symtoda {

WeylElement::WeylElement(std::vector<int> perm) : perm_(std::move(perm)) {
  std::vector<bool> seen(perm_.size(), false);
  for (int v : perm_) {
    if (v < 0 || v >= static_cast<int>(perm_.size()) || seen[v]) {
      throw InputError("WeylElement: not a permutation");
    }
    seen[v] = true;
  }
}

WeylElement WeylElement::identity(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  return WeylElement(std::move(p));
}

WeylElement WeylElement::coxeter(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = (i + 1) % n;
  return WeylElement(std::move(p));
}

WeylElement WeylElement::simple_reflection(int n, int i) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::swap(p.at(i), p.at(i + 1));
  return WeylElement(std::move(p));
}

Matrix WeylElement::matrix() const {
  Matrix m = Matrix::Zero(n(), n());
  for (int i = 0; i < n(); ++i) m(i, perm_[i]) = 1.0;
  return m;
}

int WeylElement::cycle_count() const {
  std::vector<bool> seen(perm_.size(), false);
  int cycles = 0;
  for (int s = 0; s < n(); ++s) {
    if (seen[s]) continue;
    ++cycles;
    for (int x = s; !seen[x]; x = perm_[x]) seen[x] = true;
  }
  return cycles;
}

std::string WeylElement::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < n(); ++i) os << (i ? " " : "") << perm_[i] + 1;
  return os.str();
}

std::vector<int> WeylElement::reduced_word() const {
  // s_i u swaps rows i and i+1; at a descent this shortens u by one.
  std::vector<int> w = perm_;
  std::vector<int> word;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i + 1 < n(); ++i) {
      if (w[i] > w[i + 1]) {
        std::swap(w[i], w[i + 1]);
        word.push_back(i);
        changed = true;
      }
    }
  }
  return word;
}

std::vector<WeylElement> all_permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<WeylElement> out;
  do {
    out.emplace_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

int length(const WeylElement& u) {
  int inv = 0;
  const auto& p = u.perm();
  for (int a = 0; a < u.n(); ++a)
    for (int b = a + 1; b < u.n(); ++b) inv += p[a] > p[b] ? 1 : 0;
  return inv;
}

int torus_fixed_dimension(const WeylElement& u) { return u.cycle_count() - 1; }

int predicted_leaf_dimension(const WeylElement& u) {
  const int d = length(u) + (u.n() - 1) - torus_fixed_dimension(u);
  if (d % 2 != 0) {
    throw std::logic_error("predicted_leaf_dimension: odd dimension " + std::to_string(d) +
                           " for u = " + u.to_string());
  }
  return d;
}

WeylElement bruhat_cell_of(const Matrix& x) {
  const int n = static_cast<int>(x.rows());
  if (x.cols() != n || n < 1) throw InputError("bruhat_cell: expected a square matrix");
  // r[i][j]: rank of rows 0..i-1, columns j-1..n-1 (1-based i, j); zero on
  // the borders i = 0 and j = n+1.
  std::vector<std::vector<int>> r(n + 1, std::vector<int>(n + 2, 0));
  const double scale = std::max(1e-300, x.cwiseAbs().maxCoeff());
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const Matrix corner = x.block(0, j - 1, i, n - j + 1) / scale;
      // Rank relative to the whole matrix so zero corners stay zero.
      Eigen::JacobiSVD<Matrix> svd(corner);
      int rank = 0;
      for (Eigen::Index s = 0; s < svd.singularValues().size(); ++s) {
        const double v = svd.singularValues()(s);
        if (v > 1e-9 && v < 1e-7) {
          throw NumericalError("bruhat_cell: ambiguous rank for corner rows 1.." +
                               std::to_string(i) + ", columns " + std::to_string(j) +
                               "..n (singular value " + std::to_string(v) + ")");
        }
        if (v >= 1e-8) ++rank;
      }
      r[i][j] = rank;
    }
  std::vector<int> perm(n, -1);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (r[i][j] - r[i - 1][j] - r[i][j + 1] + r[i - 1][j + 1] == 1) {
        if (perm[i - 1] != -1) throw NumericalError("bruhat_cell: inconsistent rank pattern");
        perm[i - 1] = j - 1;
      }
    }
  try {
    return WeylElement(std::move(perm));
  } catch (const InputError&) {
    throw NumericalError("bruhat_cell: rank pattern is not a permutation (singular input?)");
  }
}

WeylElement bruhat_cell(const ANElement& b) { return bruhat_cell_of(b.matrix()); }

ANElement sample_cell_point(const WeylElement& u, Rng& rng) {
  const int n = u.n();
  std::uniform_real_distribution<double> param(0.5, 2.0);
  Matrix b = random_positive_diagonal(n, rng).asDiagonal();
  for (int i : u.reduced_word()) {
    Matrix x = Matrix::Identity(n, n);
    x(i, i + 1) = param(rng);
    b = b * x;
  }
  return ANElement(std::move(b));
}

Report verify_leaf_dimension(const ANElement& b) {
  Report report("leaf-dimension");
  const WeylElement u = bruhat_cell(b);
  const int predicted = predicted_leaf_dimension(u);
  const RankInfo measured = bivector_rank_info(b, Chart::AN);
  report.check("rank_equals_predicted", std::abs(measured.rank - predicted), 0.0,
               {{"u", u.to_string()},
                {"length", length(u)},
                {"torus_fixed_dimension", torus_fixed_dimension(u)},
                {"predicted", predicted},
                {"measured", measured.rank},
                {"gap_decades", measured.gap_decades()}});
  return report;
}

}  // namespace symtoda
