#include "dbbel/ratlp.hpp"

#include <stdexcept>

namespace dbbel {

namespace {

// Dense simplex tableau in equality form A x = b, x >= 0, b >= 0, with an
// explicit reduced-cost row. Columns: the u/w split of the original free
// variables, then one slack per inequality row, then one artificial per
// row (the phase-1 starting basis).
struct Tableau {
  int rows = 0;
  int cols = 0;                        // excluding the rhs column
  std::vector<std::vector<Rat>> a;     // rows x cols
  std::vector<Rat> b;                  // rhs, kept nonnegative
  std::vector<int> basis;              // basic column per row
  std::vector<Rat> reduced;            // reduced costs, length cols
  Rat objective_value = 0;             // value of the current objective

  void pivot(int row, int col) {
    Rat p = a[row][col];
    for (int j = 0; j < cols; ++j) a[row][j] /= p;
    b[row] /= p;
    for (int i = 0; i < rows; ++i) {
      if (i == row || a[i][col] == 0) continue;
      Rat f = a[i][col];
      for (int j = 0; j < cols; ++j) a[i][j] -= f * a[row][j];
      b[i] -= f * b[row];
    }
    if (reduced[col] != 0) {
      Rat f = reduced[col];
      for (int j = 0; j < cols; ++j) reduced[j] -= f * a[row][j];
      objective_value += f * b[row];
    }
    basis[row] = col;
  }

  // Installs a minimization objective (cost per column; columns past
  // cost.size() cost nothing) and prices out the current basis.
  void set_objective(const std::vector<Rat>& cost) {
    reduced.assign(cols, Rat(0));
    for (std::size_t j = 0; j < cost.size(); ++j) reduced[j] = cost[j];
    objective_value = 0;
    for (int i = 0; i < rows; ++i) {
      int bc = basis[i];
      if (bc >= static_cast<int>(cost.size()) || cost[bc] == 0) continue;
      Rat f = cost[bc];
      for (int j = 0; j < cols; ++j) reduced[j] -= f * a[i][j];
      objective_value += f * b[i];
    }
  }

  // Bland's rule: entering column = lowest-index allowed column with a
  // negative reduced cost; leaving row = lexicographically safest ratio
  // (ties broken by lowest basic column index). Returns false when the
  // objective is unbounded below.
  bool run(int allowed_cols) {
    while (true) {
      int enter = -1;
      for (int j = 0; j < allowed_cols; ++j)
        if (reduced[j] < 0) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      int leave = -1;
      Rat best_ratio = 0;
      for (int i = 0; i < rows; ++i) {
        if (a[i][enter] <= 0) continue;
        Rat ratio = b[i] / a[i][enter];
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis[i] < basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpOutcome solve(const LinearProgram& lp) {
  if (lp.num_vars < 0) throw std::invalid_argument("lp: negative variable count");
  for (const LpRow& row : lp.rows)
    if (static_cast<int>(row.coeffs.size()) != lp.num_vars)
      throw std::invalid_argument("lp: row width differs from variable count");
  bool optimizing = lp.sense != Sense::Feasibility;
  if (optimizing) {
    if (!lp.objective)
      throw std::invalid_argument("lp: objective required for an optimizing sense");
    if (static_cast<int>(lp.objective->size()) != lp.num_vars)
      throw std::invalid_argument("lp: objective width differs from variable count");
  }

  int m = static_cast<int>(lp.rows.size());
  int split = 2 * lp.num_vars;
  int slacks = 0;
  for (const LpRow& row : lp.rows)
    if (row.rel != Rel::Eq) ++slacks;

  Tableau t;
  t.rows = m;
  t.cols = split + slacks + m;
  t.a.assign(m, std::vector<Rat>(t.cols, Rat(0)));
  t.b.assign(m, Rat(0));
  t.basis.assign(m, 0);

  int slack_col = split;
  for (int i = 0; i < m; ++i) {
    const LpRow& row = lp.rows[i];
    // x_j = u_j - w_j; <= gains a slack, >= a surplus.
    int sign = row.bound < 0 ? -1 : 1;  // keep the rhs nonnegative
    for (int j = 0; j < lp.num_vars; ++j) {
      t.a[i][2 * j] = sign * row.coeffs[j];
      t.a[i][2 * j + 1] = -sign * row.coeffs[j];
    }
    if (row.rel != Rel::Eq)
      t.a[i][slack_col++] = sign * (row.rel == Rel::Le ? 1 : -1);
    t.b[i] = sign * row.bound;
    t.a[i][split + slacks + i] = 1;  // artificial, the starting basic column
    t.basis[i] = split + slacks + i;
  }

  // Phase 1: minimize the sum of artificials.
  std::vector<Rat> phase1(t.cols, Rat(0));
  for (int i = 0; i < m; ++i) phase1[split + slacks + i] = 1;
  t.set_objective(phase1);
  t.run(t.cols);  // cannot be unbounded: costs are nonnegative
  if (t.objective_value != 0)
    return LpOutcome{LpStatus::Infeasible, std::nullopt, std::nullopt};

  // Drive any artificial still basic (at zero) out of the basis; a row
  // with no real column left is redundant and stays put harmlessly since
  // artificials are excluded from entering below.
  int real_cols = split + slacks;
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < real_cols) continue;
    for (int j = 0; j < real_cols; ++j)
      if (t.a[i][j] != 0) {
        t.pivot(i, j);
        break;
      }
  }

  // Phase 2.
  if (optimizing) {
    std::vector<Rat> cost(real_cols, Rat(0));
    for (int j = 0; j < lp.num_vars; ++j) {
      Rat c = (*lp.objective)[j];
      if (lp.sense == Sense::Maximize) c = -c;
      cost[2 * j] = c;
      cost[2 * j + 1] = -c;
    }
    t.set_objective(cost);
    if (!t.run(real_cols))
      return LpOutcome{LpStatus::Unbounded, std::nullopt, std::nullopt};
  }

  std::vector<Rat> column_value(t.cols, Rat(0));
  for (int i = 0; i < m; ++i) column_value[t.basis[i]] = t.b[i];
  std::vector<Rat> witness(lp.num_vars);
  for (int j = 0; j < lp.num_vars; ++j)
    witness[j] = column_value[2 * j] - column_value[2 * j + 1];

  // Exact re-check of every row; a violation here is a bug, not input error.
  for (const LpRow& row : lp.rows) {
    Rat lhs = 0;
    for (int j = 0; j < lp.num_vars; ++j) lhs += row.coeffs[j] * witness[j];
    bool ok = row.rel == Rel::Le   ? lhs <= row.bound
              : row.rel == Rel::Ge ? lhs >= row.bound
                                   : lhs == row.bound;
    if (!ok) throw std::logic_error("lp: witness failed substitution check");
  }

  LpOutcome out;
  out.status = LpStatus::Optimal;
  out.witness = std::move(witness);
  if (optimizing) {
    Rat value = 0;
    for (int j = 0; j < lp.num_vars; ++j) value += (*lp.objective)[j] * (*out.witness)[j];
    out.optimum = value;
  }
  return out;
}

}  // namespace dbbel
