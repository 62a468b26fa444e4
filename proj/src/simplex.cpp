#include "ctxkit/simplex.hpp"

#include "ctxkit/errors.hpp"

namespace ctxkit::lp {

std::string to_string(Relation rel) {
  switch (rel) {
    case Relation::Eq:
      return "eq";
    case Relation::Le:
      return "le";
    case Relation::Ge:
      return "ge";
  }
  return "?";
}

void LinearProgram::add_row(std::vector<Rational> coeffs, Relation rel, Rational rhs) {
  if (coeffs.size() != variable_count) throw InputError("row width does not match variable count");
  rows.push_back({std::move(coeffs), rel, std::move(rhs)});
}

namespace {

class Tableau {
 public:
  explicit Tableau(const LinearProgram& lp) : m_(lp.rows.size()), n_(lp.variable_count) {
    for (const auto& row : lp.rows) {
      if (row.coeffs.size() != n_) throw InputError("row width does not match variable count");
      if (row.relation != Relation::Eq) ++slacks_;
    }
    width_ = n_ + slacks_ + m_;
    cells_.assign(m_, std::vector<Rational>(width_ + 1));
    basis_.resize(m_);
    flip_.assign(m_, 1);
    active_.assign(m_, true);
    std::size_t slack = n_;
    for (std::size_t i = 0; i < m_; ++i) {
      const Row& row = lp.rows[i];
      auto& t = cells_[i];
      for (std::size_t j = 0; j < n_; ++j) t[j] = row.coeffs[j];
      if (row.relation == Relation::Le) t[slack++] = 1;
      if (row.relation == Relation::Ge) t[slack++] = -1;
      t[width_] = row.rhs;
      if (row.rhs < 0) {
        flip_[i] = -1;
        for (auto& c : t) c = -c;
      }
      t[artificial(i)] = 1;
      basis_[i] = artificial(i);
    }
  }

  std::size_t artificial(std::size_t row) const { return n_ + slacks_ + row; }
  bool is_artificial(std::size_t col) const { return col >= n_ + slacks_; }

  // Phase 1: minimize the sum of artificials. Returns the optimum.
  Rational phase_one() {
    std::vector<Rational> cost(width_, 0);
    for (std::size_t i = 0; i < m_; ++i) cost[artificial(i)] = 1;
    load_objective(cost);
    optimize(width_);
    return -z_[width_];
  }

  // y with the sign conventions of Result::farkas, read from the phase-1 duals.
  std::vector<Rational> farkas() const {
    std::vector<Rational> y(m_);
    for (std::size_t i = 0; i < m_; ++i) y[i] = flip_[i] * (1 - z_[artificial(i)]);
    return y;
  }

  // Pivots remaining zero-level artificials out of the basis; rows where that
  // is impossible are linearly dependent and are deactivated.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (!is_artificial(basis_[i])) continue;
      bool pivoted = false;
      for (std::size_t j = 0; j < n_ + slacks_; ++j) {
        if (cells_[i][j] != 0) {
          pivot(i, j);
          pivoted = true;
          break;
        }
      }
      if (!pivoted) active_[i] = false;
    }
  }

  // Phase 2 over structural and slack columns. Returns false when unbounded.
  bool phase_two(const std::vector<Rational>& objective) {
    std::vector<Rational> cost(width_, 0);
    for (std::size_t j = 0; j < n_; ++j) cost[j] = objective[j];
    load_objective(cost);
    return optimize(n_ + slacks_);
  }

  std::vector<Rational> solution() const {
    std::vector<Rational> x(n_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (active_[i] && basis_[i] < n_) x[basis_[i]] = cells_[i][width_];
    }
    return x;
  }

  std::size_t pivots() const { return pivots_; }

 private:
  void load_objective(const std::vector<Rational>& cost) {
    cost_ = cost;
    z_.assign(width_ + 1, 0);
    for (std::size_t j = 0; j < width_; ++j) z_[j] = cost[j];
    for (std::size_t i = 0; i < m_; ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= width_; ++j) z_[j] -= cb * cells_[i][j];
    }
  }

  // Bland's rule over columns [0, allowed). False when unbounded.
  bool optimize(std::size_t allowed) {
    for (;;) {
      std::size_t enter = allowed;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (z_[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == allowed) return true;
      std::size_t leave = m_;
      Rational best_ratio;
      for (std::size_t i = 0; i < m_; ++i) {
        if (!active_[i] || cells_[i][enter] <= 0) continue;
        Rational ratio = cells_[i][width_] / cells_[i][enter];
        if (leave == m_ || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    ++pivots_;
    auto& pr = cells_[row];
    Rational inv = 1 / pr[col];
    for (auto& c : pr) {
      if (c != 0) c *= inv;
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row) continue;
      Rational f = cells_[i][col];
      if (f == 0) continue;
      auto& ri = cells_[i];
      for (std::size_t j = 0; j <= width_; ++j) {
        if (pr[j] != 0) ri[j] -= f * pr[j];
      }
    }
    if (!z_.empty()) {
      Rational f = z_[col];
      if (f != 0) {
        for (std::size_t j = 0; j <= width_; ++j) {
          if (pr[j] != 0) z_[j] -= f * pr[j];
        }
      }
    }
    basis_[row] = col;
  }

  std::size_t m_;
  std::size_t n_;
  std::size_t slacks_ = 0;
  std::size_t width_ = 0;
  std::vector<std::vector<Rational>> cells_;
  std::vector<std::size_t> basis_;
  std::vector<int> flip_;
  std::vector<bool> active_;
  std::vector<Rational> cost_;
  std::vector<Rational> z_;
  std::size_t pivots_ = 0;
};

}  // namespace

Result solve(const LinearProgram& program) {
  if (!program.objective.empty() && program.objective.size() != program.variable_count) {
    throw InputError("objective width does not match variable count");
  }
  Tableau tableau(program);
  Result result;
  Rational infeasibility = tableau.phase_one();
  if (infeasibility > 0) {
    result.status = Status::Infeasible;
    result.farkas = tableau.farkas();
    result.pivots = tableau.pivots();
    return result;
  }
  tableau.drive_out_artificials();
  if (!program.objective.empty() && !tableau.phase_two(program.objective)) {
    result.status = Status::Unbounded;
    result.pivots = tableau.pivots();
    return result;
  }
  result.status = Status::Optimal;
  result.x = tableau.solution();
  result.pivots = tableau.pivots();
  if (!program.objective.empty()) {
    for (std::size_t j = 0; j < program.variable_count; ++j) result.objective += program.objective[j] * result.x[j];
  }
  if (!satisfies(program, result.x)) throw InternalError("simplex returned a point violating its constraints");
  return result;
}

bool satisfies(const LinearProgram& program, const std::vector<Rational>& x) {
  if (x.size() != program.variable_count) return false;
  for (const auto& v : x) {
    if (v < 0) return false;
  }
  for (const auto& row : program.rows) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (row.coeffs[j] != 0) lhs += row.coeffs[j] * x[j];
    }
    bool ok = row.relation == Relation::Eq ? lhs == row.rhs
              : row.relation == Relation::Le ? lhs <= row.rhs
                                             : lhs >= row.rhs;
    if (!ok) return false;
  }
  return true;
}

bool verify_farkas(const LinearProgram& program, const std::vector<Rational>& y) {
  if (y.size() != program.rows.size()) return false;
  Rational rhs = 0;
  std::vector<Rational> combo(program.variable_count, 0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    const Row& row = program.rows[i];
    if (row.relation == Relation::Ge && y[i] < 0) return false;
    if (row.relation == Relation::Le && y[i] > 0) return false;
    if (y[i] == 0) continue;
    rhs += y[i] * row.rhs;
    for (std::size_t j = 0; j < combo.size(); ++j) combo[j] += y[i] * row.coeffs[j];
  }
  for (const auto& c : combo) {
    if (c > 0) return false;
  }
  return rhs > 0;
}

Result solve_lexicographic(LinearProgram program, const std::vector<Objective>& objectives) {
  Result result;
  if (objectives.empty()) {
    program.objective.clear();
    return solve(program);
  }
  for (const auto& objective : objectives) {
    program.objective = objective.coeffs;
    if (objective.sense == Sense::Maximize) {
      for (auto& c : program.objective) c = -c;
    }
    result = solve(program);
    if (result.status != Status::Optimal) return result;
    if (objective.sense == Sense::Maximize) result.objective = -result.objective;
    program.add_row(objective.coeffs, Relation::Eq, result.objective);
  }
  return result;
}

}  // namespace ctxkit::lp
