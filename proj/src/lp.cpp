#include "pvb/lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pvb/util.hpp"

namespace pvb::lp {

int Model::add_col(double cost_coef, double lo_bound, double up_bound, const std::string& name) {
    cost.push_back(cost_coef);
    lo.push_back(lo_bound);
    up.push_back(up_bound);
    if (!name.empty() || !col_names.empty()) {
        col_names.resize(cost.size());
        col_names.back() = name.empty() ? "x" + std::to_string(cost.size() - 1) : name;
    }
    return static_cast<int>(cost.size()) - 1;
}

int Model::add_row(Sense sense, double rhs, std::vector<std::pair<int, double>> terms,
                   const std::string& name) {
    rows.push_back(Row{std::move(terms), sense, rhs});
    if (!name.empty() || !row_names.empty()) {
        row_names.resize(rows.size());
        row_names.back() = name.empty() ? "r" + std::to_string(rows.size() - 1) : name;
    }
    return static_cast<int>(rows.size()) - 1;
}

double Model::objective(const std::vector<double>& x) const {
    double v = obj_constant;
    for (int j = 0; j < num_cols(); ++j) v += cost[j] * x[j];
    return v;
}

CheckReport check_solution(const Model& m, const std::vector<double>& x) {
    CheckReport rep;
    for (int j = 0; j < m.num_cols(); ++j) {
        double viol = std::max(m.lo[j] - x[j], x[j] - m.up[j]);
        if (viol > rep.max_bound_violation) {
            rep.max_bound_violation = viol;
            rep.worst_col = j;
        }
    }
    for (int i = 0; i < m.num_rows(); ++i) {
        const auto& r = m.rows[i];
        double ax = 0;
        for (auto [j, a] : r.terms) ax += a * x[j];
        double viol = 0;
        switch (r.sense) {
        case Sense::LE: viol = ax - r.rhs; break;
        case Sense::GE: viol = r.rhs - ax; break;
        case Sense::EQ: viol = std::abs(ax - r.rhs); break;
        }
        if (viol > rep.max_row_violation) {
            rep.max_row_violation = viol;
            rep.worst_row = i;
        }
    }
    return rep;
}

namespace {
std::string col_name(const Model& m, int j) {
    if (j < static_cast<int>(m.col_names.size()) && !m.col_names[j].empty()) return m.col_names[j];
    return "x" + std::to_string(j);
}
std::string row_name(const Model& m, int i) {
    if (i < static_cast<int>(m.row_names.size()) && !m.row_names[i].empty()) return m.row_names[i];
    return "r" + std::to_string(i);
}
std::string num(double v) { return util::fmt_double(v, 17); }
} // namespace

void write_lp_file(const Model& m, const std::string& path) {
    std::ostringstream os;
    os << "Minimize\n obj:";
    bool first = true;
    for (int j = 0; j < m.num_cols(); ++j) {
        if (m.cost[j] == 0) continue;
        os << (m.cost[j] >= 0 && !first ? " + " : " ") << num(m.cost[j]) << ' ' << col_name(m, j);
        first = false;
    }
    if (first) os << " 0 " << col_name(m, 0);
    os << "\nSubject To\n";
    for (int i = 0; i < m.num_rows(); ++i) {
        const auto& r = m.rows[i];
        os << ' ' << row_name(m, i) << ':';
        for (auto [j, a] : r.terms) os << (a >= 0 ? " + " : " - ") << num(std::abs(a)) << ' ' << col_name(m, j);
        switch (r.sense) {
        case Sense::LE: os << " <= "; break;
        case Sense::GE: os << " >= "; break;
        case Sense::EQ: os << " = "; break;
        }
        os << num(r.rhs) << '\n';
    }
    os << "Bounds\n";
    for (int j = 0; j < m.num_cols(); ++j) {
        if (m.lo[j] == 0 && m.up[j] == kInf) continue;
        if (m.up[j] == kInf)
            os << ' ' << num(m.lo[j]) << " <= " << col_name(m, j) << '\n';
        else
            os << ' ' << num(m.lo[j]) << " <= " << col_name(m, j) << " <= " << num(m.up[j]) << '\n';
    }
    os << "End\n";
    util::write_file_atomic(path, os.str());
}

// ---------------------------------------------------------------------------
// Standard form shared by both solvers:
//   min c'x  s.t.  Ax = b,  0 <= x <= up (up possibly +inf)
// Original columns are shifted by their lower bound; inequality rows gain a
// slack column.
// ---------------------------------------------------------------------------

namespace {

struct Standard {
    int m = 0, n = 0;
    std::vector<double> c, b, up;
    // CSC
    std::vector<int> col_ptr, col_row;
    std::vector<double> col_val;
    double obj_constant = 0;
    int n_orig = 0; // first n_orig std columns map to original columns (shifted)
    std::vector<double> row_scale, col_scale; // Ruiz equilibration factors

    void from_model(const Model& model);
    void equilibrate();
};

void Standard::from_model(const Model& model) {
    m = model.num_rows();
    n_orig = model.num_cols();
    obj_constant = model.obj_constant;
    b.resize(m);
    for (int i = 0; i < m; ++i) b[i] = model.rows[i].rhs;

    c.assign(model.cost.begin(), model.cost.end());
    up.resize(n_orig);
    for (int j = 0; j < n_orig; ++j) {
        double l = model.lo[j];
        if (!std::isfinite(l)) throw util::InputError("lp: lower bounds must be finite");
        up[j] = model.up[j] - l;
        obj_constant += model.cost[j] * l;
    }
    // column entries (from rows), adjusting b for shifted lower bounds
    std::vector<std::vector<std::pair<int, double>>> cols(n_orig);
    for (int i = 0; i < m; ++i) {
        for (auto [j, a] : model.rows[i].terms) {
            cols[j].push_back({i, a});
            b[i] -= a * model.lo[j];
        }
    }
    // ascending row order; duplicate (row, col) terms are summed
    for (int j = 0; j < n_orig; ++j) {
        auto& cj = cols[j];
        std::sort(cj.begin(), cj.end());
        std::size_t w = 0;
        for (std::size_t k = 0; k < cj.size(); ++k) {
            if (w > 0 && cj[w - 1].first == cj[k].first)
                cj[w - 1].second += cj[k].second;
            else
                cj[w++] = cj[k];
        }
        cj.resize(w);
    }
    int n_slack = 0;
    for (const auto& r : model.rows)
        if (r.sense != Sense::EQ) ++n_slack;
    n = n_orig + n_slack;
    c.resize(n, 0.0);
    up.resize(n, kInf);

    col_ptr.assign(n + 1, 0);
    for (int j = 0; j < n_orig; ++j) col_ptr[j + 1] = static_cast<int>(cols[j].size());
    int sj = n_orig;
    std::vector<int> slack_row(n_slack);
    for (int i = 0; i < m; ++i)
        if (model.rows[i].sense != Sense::EQ) {
            col_ptr[sj + 1] = 1;
            slack_row[sj - n_orig] = i;
            ++sj;
        }
    for (int j = 0; j < n; ++j) col_ptr[j + 1] += col_ptr[j];
    col_row.resize(col_ptr[n]);
    col_val.resize(col_ptr[n]);
    for (int j = 0; j < n_orig; ++j) {
        int k = col_ptr[j];
        for (auto [i, a] : cols[j]) {
            col_row[k] = i;
            col_val[k] = a;
            ++k;
        }
    }
    sj = n_orig;
    for (int i = 0; i < m; ++i) {
        if (model.rows[i].sense == Sense::EQ) continue;
        col_row[col_ptr[sj]] = i;
        col_val[col_ptr[sj]] = model.rows[i].sense == Sense::LE ? 1.0 : -1.0;
        ++sj;
    }
}

void Standard::equilibrate() {
    row_scale.assign(m, 1.0);
    col_scale.assign(n, 1.0);
    for (int pass = 0; pass < 3; ++pass) {
        std::vector<double> rmax(m, 0.0);
        for (int j = 0; j < n; ++j)
            for (int k = col_ptr[j]; k < col_ptr[j + 1]; ++k)
                rmax[col_row[k]] = std::max(rmax[col_row[k]], std::abs(col_val[k]));
        std::vector<double> rfac(m, 1.0);
        for (int i = 0; i < m; ++i)
            if (rmax[i] > 0) rfac[i] = 1.0 / std::sqrt(rmax[i]);
        for (int j = 0; j < n; ++j) {
            double cmaxj = 0;
            for (int k = col_ptr[j]; k < col_ptr[j + 1]; ++k) {
                col_val[k] *= rfac[col_row[k]];
                cmaxj = std::max(cmaxj, std::abs(col_val[k]));
            }
            double cfac = cmaxj > 0 ? 1.0 / std::sqrt(cmaxj) : 1.0;
            for (int k = col_ptr[j]; k < col_ptr[j + 1]; ++k) col_val[k] *= cfac;
            col_scale[j] *= cfac;
        }
        for (int i = 0; i < m; ++i) row_scale[i] *= rfac[i];
    }
    for (int i = 0; i < m; ++i) b[i] *= row_scale[i];
    for (int j = 0; j < n; ++j) {
        c[j] *= col_scale[j];
        if (std::isfinite(up[j])) up[j] /= col_scale[j];
    }
}

} // namespace

// ---------------------------------------------------------------------------
// Bounded-variable revised primal simplex (dense; for small models).
// ---------------------------------------------------------------------------

namespace {

class DenseSimplex {
public:
    DenseSimplex(const Standard& s, const SimplexOptions& opt) : s_(s), o_(opt) {}

    Solution run() {
        const int m = s_.m, n = s_.n;
        // Phase-1 with artificial variables: x=lo(=0), bounded vars at a bound.
        basis_.resize(m);
        std::vector<double> x(n + m, 0.0);
        at_upper_.assign(n, false);
        // artificials
        std::vector<double> resid = s_.b;
        for (int j = 0; j < n; ++j) {
            // start all structurals at zero (their lower bound)
            (void)j;
        }
        for (int i = 0; i < m; ++i) {
            basis_[i] = n + i;
            x[n + i] = resid[i];
        }
        art_sign_.resize(m);
        for (int i = 0; i < m; ++i) {
            art_sign_[i] = resid[i] >= 0 ? 1.0 : -1.0;
            x[n + i] = std::abs(resid[i]);
        }
        binv_.assign(static_cast<std::size_t>(m) * m, 0.0);
        for (int i = 0; i < m; ++i) binv_[static_cast<std::size_t>(i) * m + i] = 1.0 / art_sign_[i];

        // Phase 1: minimize sum of artificials
        std::vector<double> cost1(n + m, 0.0);
        for (int i = 0; i < m; ++i) cost1[n + i] = 1.0;
        SolveStatus st = iterate(cost1, x, true);
        if (st != SolveStatus::Optimal) return fail(st, x);
        double art_sum = 0;
        for (int i = 0; i < m; ++i)
            if (basis_[i] >= n) art_sum += x[basis_[i]];
        if (art_sum > o_.feas_tol * (1 + norm_b())) {
            Solution sol;
            sol.status = SolveStatus::Infeasible;
            return sol;
        }
        // Phase 2
        std::vector<double> cost2(n + m, 0.0);
        for (int j = 0; j < n; ++j) cost2[j] = s_.c[j];
        for (int i = 0; i < m; ++i) cost2[n + i] = 1e10; // keep leftover artificials at zero
        st = iterate(cost2, x, false);
        Solution sol;
        sol.status = st;
        sol.iterations = iters_;
        sol.x.assign(x.begin(), x.begin() + s_.n_orig);
        sol.y = dual_values(cost2);
        double obj = s_.obj_constant;
        for (int j = 0; j < n; ++j) obj += s_.c[j] * x[j];
        sol.objective = obj;
        return sol;
    }

private:
    const Standard& s_;
    SimplexOptions o_;
    std::vector<int> basis_;
    std::vector<bool> at_upper_;
    std::vector<double> binv_;
    std::vector<double> art_sign_;
    int iters_ = 0;

    double norm_b() const {
        double v = 0;
        for (double t : s_.b) v = std::max(v, std::abs(t));
        return v;
    }

    Solution fail(SolveStatus st, const std::vector<double>& x) {
        Solution sol;
        sol.status = st;
        sol.iterations = iters_;
        sol.x.assign(x.begin(), x.begin() + std::min<std::size_t>(x.size(), s_.n_orig));
        sol.x.resize(s_.n_orig, 0.0);
        return sol;
    }

    // column j of the full (structural + artificial) matrix
    void col_of(int j, std::vector<double>& out) const {
        std::fill(out.begin(), out.end(), 0.0);
        if (j < s_.n) {
            for (int k = s_.col_ptr[j]; k < s_.col_ptr[j + 1]; ++k) out[s_.col_row[k]] = s_.col_val[k];
        } else {
            out[j - s_.n] = art_sign_[j - s_.n];
        }
    }

    double upper_of(int j) const { return j < s_.n ? s_.up[j] : kInf; }

    std::vector<double> dual_values(const std::vector<double>& cost) const {
        const int m = s_.m;
        std::vector<double> y(m, 0.0);
        for (int i = 0; i < m; ++i) {
            double cb = cost[basis_[i]];
            if (cb == 0) continue;
            for (int r = 0; r < m; ++r) y[r] += cb * binv_[static_cast<std::size_t>(i) * m + r];
        }
        return y;
    }

    SolveStatus iterate(const std::vector<double>& cost, std::vector<double>& x, bool phase1) {
        const int m = s_.m, n = s_.n;
        std::vector<double> y(m), d(m), colbuf(m);
        int stall = 0;
        for (; iters_ < o_.max_iterations; ++iters_) {
            y = dual_values(cost);
            // pricing
            int enter = -1;
            double best = o_.opt_tol;
            bool enter_from_upper = false;
            bool use_bland = stall > 2 * (m + n);
            for (int j = 0; j < n; ++j) {
                bool basic = false;
                for (int i = 0; i < m; ++i)
                    if (basis_[i] == j) {
                        basic = true;
                        break;
                    }
                if (basic) continue;
                double cj = cost[j];
                for (int k = s_.col_ptr[j]; k < s_.col_ptr[j + 1]; ++k)
                    cj -= y[s_.col_row[k]] * s_.col_val[k];
                double score = at_upper_[j] ? cj : -cj;
                if (score > (use_bland ? o_.opt_tol : best)) {
                    best = score;
                    enter = j;
                    enter_from_upper = at_upper_[j];
                    if (use_bland) break;
                }
            }
            if (enter < 0) return SolveStatus::Optimal;

            col_of(enter, colbuf);
            // d = B^-1 a_enter
            for (int i = 0; i < m; ++i) {
                double v = 0;
                for (int r = 0; r < m; ++r) v += binv_[static_cast<std::size_t>(i) * m + r] * colbuf[r];
                d[i] = v;
            }
            double dir = enter_from_upper ? -1.0 : 1.0;
            // ratio test
            double limit = upper_of(enter) == kInf ? kInf : upper_of(enter);
            int leave = -1;
            bool leave_to_upper = false;
            double step = limit; // bound flip
            for (int i = 0; i < m; ++i) {
                double di = d[i] * dir;
                int bj = basis_[i];
                double xb = x[bj];
                if (di > 1e-11) {
                    double t = xb / di;
                    if (t < step - 1e-12) {
                        step = t;
                        leave = i;
                        leave_to_upper = false;
                    }
                } else if (di < -1e-11 && upper_of(bj) < kInf) {
                    double t = (upper_of(bj) - xb) / (-di);
                    if (t < step - 1e-12) {
                        step = t;
                        leave = i;
                        leave_to_upper = true;
                    }
                }
            }
            if (step == kInf) return SolveStatus::Unbounded;
            stall = step < 1e-12 ? stall + 1 : 0;

            // update solution
            for (int i = 0; i < m; ++i) x[basis_[i]] -= dir * step * d[i];
            x[enter] = enter_from_upper ? upper_of(enter) - step : step;
            if (leave < 0) {
                at_upper_[enter] = !enter_from_upper;
                continue; // bound flip, basis unchanged
            }
            int out_var = basis_[leave];
            x[out_var] = leave_to_upper ? upper_of(out_var) : 0.0;
            if (out_var < n) at_upper_[out_var] = leave_to_upper;
            basis_[leave] = enter;
            if (enter < n) at_upper_[enter] = false;
            // rank-1 update of B^-1
            double piv = d[leave];
            std::size_t lrow = static_cast<std::size_t>(leave) * m;
            for (int r = 0; r < m; ++r) binv_[lrow + r] /= piv;
            for (int i = 0; i < m; ++i) {
                if (i == leave) continue;
                double f = d[i];
                if (f == 0) continue;
                std::size_t irow = static_cast<std::size_t>(i) * m;
                for (int r = 0; r < m; ++r) binv_[irow + r] -= f * binv_[lrow + r];
            }
            (void)phase1;
        }
        return SolveStatus::IterationLimit;
    }
};

} // namespace

Solution solve_simplex(const Model& model, const SimplexOptions& opt) {
    Standard s;
    s.from_model(model);
    DenseSimplex sx(s, opt);
    Solution sol = sx.run();
    if (!sol.x.empty()) {
        for (int j = 0; j < model.num_cols(); ++j) sol.x[j] += model.lo[j];
        sol.objective = model.objective(sol.x);
    }
    return sol;
}

Solution solve_ipm_standard(const void* std_form, const IpmOptions& opt); // defined in ipm.cpp

namespace detail {
const void* as_standard(const Model& model, Standard& storage) {
    storage.from_model(model);
    return &storage;
}
} // namespace detail

Solution solve_ipm(const Model& model, const IpmOptions& opt) {
    Standard s;
    s.from_model(model);
    s.equilibrate();
    Solution sol = solve_ipm_standard(&s, opt);
    if (!sol.x.empty()) {
        sol.x.resize(s.n_orig);
        for (int j = 0; j < s.n_orig; ++j) sol.x[j] *= s.col_scale[j];
        for (int j = 0; j < model.num_cols(); ++j) sol.x[j] += model.lo[j];
        sol.objective = model.objective(sol.x);
        for (int i = 0; i < s.m; ++i) sol.y[i] *= s.row_scale[i];
    }
    return sol;
}

// Accessors used by ipm.cpp (kept out of the public header).
namespace detail {
struct StandardView {
    int m, n, n_orig;
    const double *c, *b, *up;
    const int *col_ptr, *col_row;
    const double* col_val;
    double obj_constant;
};
StandardView view(const void* p) {
    const auto& s = *static_cast<const Standard*>(p);
    return {s.m, s.n, s.n_orig, s.c.data(), s.b.data(), s.up.data(), s.col_ptr.data(),
            s.col_row.data(), s.col_val.data(), s.obj_constant};
}
} // namespace detail

} // namespace pvb::lp
