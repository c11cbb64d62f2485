#pragma once

#include <limits>
#include <string>
#include <vector>

namespace pvb::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { LE, GE, EQ };

/// A linear program: minimize cost'x subject to row constraints and column
/// bounds. Rows and columns are stored in builder order; the row order is
/// what gives the hour-block models their near-banded structure.
struct Model {
    struct Row {
        std::vector<std::pair<int, double>> terms;
        Sense sense = Sense::LE;
        double rhs = 0;
    };

    std::vector<double> cost;
    std::vector<double> lo;
    std::vector<double> up;
    std::vector<Row> rows;
    double obj_constant = 0;

    // Optional names, used only by the LP-file writer.
    std::vector<std::string> col_names;
    std::vector<std::string> row_names;

    int add_col(double cost_coef, double lo_bound, double up_bound, const std::string& name = {});
    int add_row(Sense sense, double rhs, std::vector<std::pair<int, double>> terms,
                const std::string& name = {});

    int num_cols() const { return static_cast<int>(cost.size()); }
    int num_rows() const { return static_cast<int>(rows.size()); }

    double objective(const std::vector<double>& x) const;
};

enum class SolveStatus { Optimal, IterationLimit, Numerical, Infeasible, Unbounded };

struct Solution {
    SolveStatus status = SolveStatus::Numerical;
    std::vector<double> x;  // per original column
    std::vector<double> y;  // per row (duals; sign convention: a'y <= c for minimization)
    double objective = 0;   // includes obj_constant
    int iterations = 0;
};

struct CheckReport {
    double max_row_violation = 0;
    double max_bound_violation = 0;
    int worst_row = -1;
    int worst_col = -1;

    bool ok(double tol) const { return max_row_violation <= tol && max_bound_violation <= tol; }
};

CheckReport check_solution(const Model& m, const std::vector<double>& x);

/// Writes the model in CPLEX LP text format for external cross-checking.
void write_lp_file(const Model& m, const std::string& path);

struct SimplexOptions {
    int max_iterations = 200000;
    double feas_tol = 1e-9;
    double opt_tol = 1e-9;
};

/// Bounded-variable revised primal simplex. Intended for small models
/// (cross-checks, reduced test instances); dense internally.
Solution solve_simplex(const Model& m, const SimplexOptions& opt = {});

struct IpmOptions {
    int max_iterations = 120;
    double tol_feas = 1e-8;    // relative primal/dual residual
    double tol_gap = 1e-9;     // relative complementarity gap
    int gondzio_correctors = 2;
    bool verbose = false;
};

/// Primal-dual interior-point solver. Exploits the near-banded row
/// structure of hour-block models through a skyline Cholesky plus a
/// low-rank correction for wide columns (capacity variables).
Solution solve_ipm(const Model& m, const IpmOptions& opt = {});

} // namespace pvb::lp
