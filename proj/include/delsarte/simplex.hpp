#pragma once

#include <string>
#include <vector>

#include "delsarte/function.hpp"

namespace delsarte {

enum class Rel { LE, GE, EQ };
enum class LPStatus { Optimal, Infeasible, Unbounded, NumericFailure };

inline const char* to_string(LPStatus s) {
    switch (s) {
        case LPStatus::Optimal: return "optimal";
        case LPStatus::Infeasible: return "infeasible";
        case LPStatus::Unbounded: return "unbounded";
        default: return "numeric_failure";
    }
}

/// A linear program in named variables. Variables are nonnegative or free;
/// constraints are dense rows. Exact instances use rational data throughout.
template <class S>
struct LPProblem {
    bool maximize = false;
    std::vector<std::string> names;
    std::vector<bool> nonneg;
    std::vector<S> objective;
    std::vector<VectorX<S>> rows;
    std::vector<Rel> rels;
    std::vector<S> rhs;

    int add_variable(const std::string& name, bool nonnegative, const S& cost = S(0)) {
        names.push_back(name);
        nonneg.push_back(nonnegative);
        objective.push_back(cost);
        return static_cast<int>(names.size()) - 1;
    }

    void add_constraint(const VectorX<S>& coeffs, Rel rel, const S& b) {
        VectorX<S> row = VectorX<S>::Zero(names.size());
        row.head(coeffs.size()) = coeffs;
        rows.push_back(row);
        rels.push_back(rel);
        rhs.push_back(b);
    }

    int num_vars() const { return static_cast<int>(names.size()); }
    int num_rows() const { return static_cast<int>(rows.size()); }
};

template <class S>
struct LPSolution {
    LPStatus status = LPStatus::NumericFailure;
    S value = S(0);
    VectorX<S> x;        // in the problem's original variables
    long pivots = 0;
};

/// Two-phase dense tableau simplex. Dantzig pricing with a Bland fallback
/// after 2*(rows+cols) consecutive degenerate pivots, which guarantees
/// termination in exact arithmetic.
template <class S>
class SimplexSolver {
public:
    explicit SimplexSolver(const LPProblem<S>& p) : prob_(p) {}

    LPSolution<S> solve() {
        build();
        LPSolution<S> sol;
        if (num_art_ > 0) {
            set_phase1_costs();
            if (!iterate()) { sol.status = LPStatus::NumericFailure; return sol; }
            if (T_(m_, last_) < -eps_tol()) { sol.status = LPStatus::Infeasible; sol.pivots = pivots_; return sol; }
            purge_artificials();
        }
        set_phase2_costs();
        bool ok = iterate();
        sol.pivots = pivots_;
        if (!ok) { sol.status = LPStatus::NumericFailure; return sol; }
        if (unbounded_) { sol.status = LPStatus::Unbounded; return sol; }
        sol.status = LPStatus::Optimal;
        sol.x = VectorX<S>::Zero(prob_.num_vars());
        for (int i = 0; i < m_; ++i) {
            int c = basis_[i];
            if (c < 0 || var_of_col_[c] < 0) continue;
            if (col_sign_[c] > 0)
                sol.x[var_of_col_[c]] += T_(i, last_);
            else
                sol.x[var_of_col_[c]] -= T_(i, last_);
        }
        S v(0);
        for (int j = 0; j < prob_.num_vars(); ++j) v += prob_.objective[j] * sol.x[j];
        sol.value = v;
        return sol;
    }

private:
    static S eps_tol() { return scalar_traits<S>::feas_eps(); }

    void build() {
        m_ = prob_.num_rows();
        // variable columns: one per nonnegative var, two per free var
        for (int j = 0; j < prob_.num_vars(); ++j) {
            var_of_col_.push_back(j);
            col_sign_.push_back(1);
            if (!prob_.nonneg[j]) {
                var_of_col_.push_back(j);
                col_sign_.push_back(-1);
            }
        }
        int struct_cols = static_cast<int>(var_of_col_.size());
        std::vector<Rel> rel = prob_.rels;
        std::vector<int> slack_col(m_, -1), art_col(m_, -1);
        int ncols = struct_cols;
        std::vector<bool> flip(m_, false);
        for (int i = 0; i < m_; ++i) {
            Rel r = rel[i];
            bool neg = prob_.rhs[i] < 0;
            flip[i] = neg;
            if (neg) r = (r == Rel::LE ? Rel::GE : (r == Rel::GE ? Rel::LE : Rel::EQ));
            rel[i] = r;
            if (r != Rel::EQ) slack_col[i] = ncols++;
            if (r != Rel::LE) art_col[i] = ncols++;
        }
        num_art_ = 0;
        for (int i = 0; i < m_; ++i)
            if (art_col[i] >= 0) ++num_art_;
        var_of_col_.resize(ncols, -1);
        col_sign_.resize(ncols, 0);
        is_artificial_.assign(ncols, false);
        last_ = ncols;
        T_ = MatrixX<S>::Zero(m_ + 1, ncols + 1);
        basis_.assign(m_, -1);
        for (int i = 0; i < m_; ++i) {
            S sgn = flip[i] ? S(-1) : S(1);
            for (int c = 0; c < struct_cols; ++c) {
                int v = var_of_col_[c];
                T_(i, c) = sgn * S(col_sign_[c]) * prob_.rows[i][v];
            }
            T_(i, last_) = sgn * prob_.rhs[i];
            if (slack_col[i] >= 0) T_(i, slack_col[i]) = (rel[i] == Rel::LE) ? S(1) : S(-1);
            if (art_col[i] >= 0) {
                T_(i, art_col[i]) = S(1);
                is_artificial_[art_col[i]] = true;
                basis_[i] = art_col[i];
            } else {
                basis_[i] = slack_col[i];
            }
        }
    }

    void set_phase1_costs() {
        T_.row(m_).setZero();
        for (int j = 0; j <= last_; ++j) {
            S z(0);
            for (int i = 0; i < m_; ++i)
                if (is_artificial_[basis_[i]]) z += T_(i, j);
            S c = (j < last_ && is_artificial_[j]) ? S(1) : S(0);
            T_(m_, j) = c - z;
        }
        blocked_.assign(last_, false);
    }

    void purge_artificials() {
        for (int i = 0; i < m_; ++i) {
            if (!is_artificial_[basis_[i]]) continue;
            int piv = -1;
            for (int j = 0; j < last_; ++j)
                if (!is_artificial_[j] && abs_val(T_(i, j)) > eps_tol()) { piv = j; break; }
            if (piv >= 0)
                pivot(i, piv);
            // else: redundant row; the artificial stays basic at value zero
        }
        blocked_ = is_artificial_;
    }

    void set_phase2_costs() {
        if (blocked_.empty()) blocked_.assign(last_, false);
        T_.row(m_).setZero();
        auto cost_of = [&](int j) {
            if (j >= last_ || var_of_col_[j] < 0) return S(0);
            S c = prob_.objective[var_of_col_[j]] * S(col_sign_[j]);
            return prob_.maximize ? S(-c) : c;
        };
        for (int j = 0; j <= last_; ++j) {
            S z(0);
            for (int i = 0; i < m_; ++i) z += cost_of(basis_[i]) * T_(i, j);
            T_(m_, j) = (j < last_ ? cost_of(j) : S(0)) - z;
        }
    }

    bool iterate() {
        unbounded_ = false;
        long degenerate = 0;
        long bland_trigger = 2L * (m_ + last_);
        long max_pivots = 20000L + 200L * static_cast<long>(m_ + last_);
        while (true) {
            if (pivots_ > max_pivots) return false;
            int enter = -1;
            bool bland = degenerate > bland_trigger;
            if (bland) {
                for (int j = 0; j < last_; ++j)
                    if (!blocked_[j] && T_(m_, j) < -eps_tol()) { enter = j; break; }
            } else {
                S best(0);
                for (int j = 0; j < last_; ++j)
                    if (!blocked_[j] && T_(m_, j) < best - eps_tol()) { best = T_(m_, j); enter = j; }
            }
            if (enter < 0) return true;  // optimal
            int leave = -1;
            S best_ratio(0);
            for (int i = 0; i < m_; ++i) {
                if (T_(i, enter) <= eps_tol()) continue;
                S ratio = T_(i, last_) / T_(i, enter);
                if (leave < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave < 0) { unbounded_ = true; return true; }
            bool degen = T_(leave, last_) <= eps_tol();
            degenerate = degen ? degenerate + 1 : 0;
            pivot(leave, enter);
        }
    }

    void pivot(int row, int col) {
        ++pivots_;
        S p = T_(row, col);
        T_.row(row) /= p;
        for (int i = 0; i <= m_; ++i) {
            if (i == row) continue;
            S f = T_(i, col);
            if (f == S(0)) continue;
            T_.row(i) -= f * T_.row(row);
        }
        basis_[row] = col;
    }

    const LPProblem<S>& prob_;
    MatrixX<S> T_;
    std::vector<int> basis_, var_of_col_, col_sign_;
    std::vector<bool> is_artificial_, blocked_;
    int m_ = 0, last_ = 0, num_art_ = 0;
    bool unbounded_ = false;
    long pivots_ = 0;
};

template <class S>
LPSolution<S> solve_lp(const LPProblem<S>& p) {
    return SimplexSolver<S>(p).solve();
}

}  // namespace delsarte
