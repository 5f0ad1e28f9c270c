#pragma once

#include <optional>
#include <vector>

#include "ftest/core/errors.hpp"
#include "ftest/core/numeric.hpp"

namespace ftest::lp {

enum class Relation { le, ge, eq };
enum class Status { optimal, infeasible, unbounded };

struct Constraint {
  std::vector<Rational> coeffs;
  Relation rel;
  Rational rhs;
};

// minimize objective·x subject to the constraints.  Variables flagged free
// range over all of Q, the others are >= 0.
struct Problem {
  std::size_t nvars = 0;
  std::vector<bool> free;
  std::vector<Constraint> rows;
  std::vector<Rational> objective;

  explicit Problem(std::size_t n, bool all_free = false) : nvars(n), free(n, all_free), objective(n) {}

  void add(std::vector<Rational> coeffs, Relation rel, Rational rhs) {
    if (coeffs.size() != nvars) throw StructuralError("LP row has wrong width");
    rows.push_back({std::move(coeffs), rel, std::move(rhs)});
  }
};

struct Solution {
  Status status = Status::infeasible;
  Rational value;
  std::vector<Rational> x;
};

namespace detail {

// Dense tableau simplex with Bland's rule.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : t_(rows, std::vector<Rational>(cols + 1)), z_(cols + 1), basis_(rows), cols_(cols) {}

  Rational& at(std::size_t r, std::size_t c) { return t_[r][c]; }
  Rational& rhs(std::size_t r) { return t_[r][cols_]; }
  std::size_t& basic(std::size_t r) { return basis_[r]; }
  std::size_t rows() const { return t_.size(); }

  // Installs cost vector c (length cols) and prices out the basis.
  void set_cost(const std::vector<Rational>& c) {
    for (std::size_t j = 0; j < cols_; ++j) z_[j] = c[j];
    z_[cols_] = 0;
    for (std::size_t r = 0; r < rows(); ++r) {
      Rational f = z_[basis_[r]];
      if (f != 0)
        for (std::size_t j = 0; j <= cols_; ++j) z_[j] -= f * t_[r][j];
    }
  }

  Rational value() const { return -z_[cols_]; }

  void pivot(std::size_t r, std::size_t c) {
    Rational inv = 1 / t_[r][c];
    for (auto& v : t_[r]) v *= inv;
    for (std::size_t i = 0; i < rows(); ++i) {
      if (i == r || t_[i][c] == 0) continue;
      Rational f = t_[i][c];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (t_[r][j] != 0) t_[i][j] -= f * t_[r][j];
    }
    if (z_[c] != 0) {
      Rational f = z_[c];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (t_[r][j] != 0) z_[j] -= f * t_[r][j];
    }
    basis_[r] = c;
  }

  // Returns false when unbounded.
  bool optimize(const std::vector<bool>& allowed) {
    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j)
        if (allowed[j] && z_[j] < 0) {
          enter = j;
          break;
        }
      if (enter == cols_) return true;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < rows(); ++i) {
        if (t_[i][enter] <= 0) continue;
        Rational ratio = t_[i][cols_] / t_[i][enter];
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, enter);
    }
  }

  void drop_row(std::size_t r) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

 private:
  std::vector<std::vector<Rational>> t_;
  std::vector<Rational> z_;
  std::vector<std::size_t> basis_;
  std::size_t cols_;
};

}  // namespace detail

// Two-phase simplex over exact rationals.
inline Solution solve(const Problem& lp) {
  // Column layout: split variables, then one slack/surplus per inequality,
  // then one artificial per row.
  std::vector<std::size_t> pos(lp.nvars), neg(lp.nvars, SIZE_MAX);
  std::size_t col = 0;
  for (std::size_t j = 0; j < lp.nvars; ++j) {
    pos[j] = col++;
    if (lp.free[j]) neg[j] = col++;
  }
  const std::size_t m = lp.rows.size();
  std::vector<std::size_t> slack(m, SIZE_MAX);
  for (std::size_t i = 0; i < m; ++i)
    if (lp.rows[i].rel != Relation::eq) slack[i] = col++;
  const std::size_t first_art = col;
  const std::size_t cols = col + m;

  detail::Tableau tab(m, cols);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = lp.rows[i];
    const int sign = row.rhs < 0 ? -1 : 1;
    for (std::size_t j = 0; j < lp.nvars; ++j) {
      tab.at(i, pos[j]) = sign * row.coeffs[j];
      if (neg[j] != SIZE_MAX) tab.at(i, neg[j]) = -sign * row.coeffs[j];
    }
    if (slack[i] != SIZE_MAX) tab.at(i, slack[i]) = sign * (row.rel == Relation::le ? 1 : -1);
    tab.rhs(i) = sign * row.rhs;
    tab.at(i, first_art + i) = 1;
    tab.basic(i) = first_art + i;
  }

  std::vector<bool> allowed(cols, true);
  std::vector<Rational> cost(cols);
  for (std::size_t i = 0; i < m; ++i) cost[first_art + i] = 1;
  tab.set_cost(cost);
  tab.optimize(allowed);
  Solution sol;
  if (tab.value() != 0) return sol;

  // Drive artificials out of the basis; rows where that fails are redundant.
  for (std::size_t i = tab.rows(); i-- > 0;) {
    if (tab.basic(i) < first_art) continue;
    std::size_t c = first_art;
    for (std::size_t j = 0; j < first_art; ++j)
      if (tab.at(i, j) != 0) {
        c = j;
        break;
      }
    if (c == first_art)
      tab.drop_row(i);
    else
      tab.pivot(i, c);
  }
  for (std::size_t j = first_art; j < cols; ++j) allowed[j] = false;

  std::fill(cost.begin(), cost.end(), Rational(0));
  for (std::size_t j = 0; j < lp.nvars; ++j) {
    cost[pos[j]] = lp.objective[j];
    if (neg[j] != SIZE_MAX) cost[neg[j]] = -lp.objective[j];
  }
  tab.set_cost(cost);
  if (!tab.optimize(allowed)) {
    sol.status = Status::unbounded;
    return sol;
  }
  std::vector<Rational> full(cols);
  for (std::size_t i = 0; i < tab.rows(); ++i) full[tab.basic(i)] = tab.rhs(i);
  sol.status = Status::optimal;
  sol.value = tab.value();
  sol.x.resize(lp.nvars);
  for (std::size_t j = 0; j < lp.nvars; ++j) sol.x[j] = full[pos[j]] - (neg[j] != SIZE_MAX ? full[neg[j]] : Rational(0));
  return sol;
}

inline bool feasible(const Problem& lp) {
  Problem f = lp;
  std::fill(f.objective.begin(), f.objective.end(), Rational(0));
  return solve(f).status == Status::optimal;
}

}  // namespace ftest::lp
