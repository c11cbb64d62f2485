#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "pvb/lp.hpp"

// Primal-dual interior point method (Mehrotra predictor-corrector with
// Gondzio centrality correctors) for the standard form produced in lp.cpp:
//
//   min c'x   s.t.  Ax = b,  0 <= x,  x_j <= up_j (j in U)
//
// The normal-equations matrix A*Theta*A' splits into a skyline (envelope)
// part from narrow columns plus a low-rank part from wide columns (capacity
// variables and the cyclic storage link), handled via a Woodbury solve.

namespace pvb::lp {

namespace detail {
struct StandardView {
    int m, n, n_orig;
    const double *c, *b, *up;
    const int *col_ptr, *col_row;
    const double* col_val;
    double obj_constant;
};
StandardView view(const void* p);
} // namespace detail

namespace {

constexpr double kDenseSpan = 192; // columns spanning more rows become low-rank terms

struct Skyline {
    int m = 0;
    std::vector<int> first;  // first coupled row per row
    std::vector<std::size_t> start; // offset of entry (r, first[r])
    std::vector<double> a;   // assembled matrix, row-major envelope
    std::vector<double> l;   // factor

    double& at(int r, int c) { return a[start[r] + static_cast<std::size_t>(c - first[r])]; }

    void symbolic(const detail::StandardView& s, const std::vector<char>& dense) {
        m = s.m;
        first.assign(m, 0);
        for (int r = 0; r < m; ++r) first[r] = r;
        for (int j = 0; j < s.n; ++j) {
            if (dense[j]) continue;
            int lo = s.col_row[s.col_ptr[j]];
            for (int k = s.col_ptr[j]; k < s.col_ptr[j + 1]; ++k) {
                int r = s.col_row[k];
                if (lo < first[r]) first[r] = lo;
            }
        }
        start.assign(m + 1, 0);
        for (int r = 0; r < m; ++r) start[r + 1] = start[r] + static_cast<std::size_t>(r - first[r] + 1);
        a.assign(start[m], 0.0);
        l.assign(start[m], 0.0);
    }

    void assemble(const detail::StandardView& s, const std::vector<char>& dense,
                  const std::vector<double>& theta) {
        std::fill(a.begin(), a.end(), 0.0);
        for (int j = 0; j < s.n; ++j) {
            if (dense[j]) continue;
            double th = theta[j];
            if (th == 0) continue;
            int b0 = s.col_ptr[j], b1 = s.col_ptr[j + 1];
            for (int ka = b0; ka < b1; ++ka) {
                double va = s.col_val[ka] * th;
                int ra = s.col_row[ka];
                for (int kb = ka; kb < b1; ++kb) {
                    int rb = s.col_row[kb];
                    at(rb, ra) += va * s.col_val[kb];
                }
            }
        }
    }

    int factor(double pivot_floor) {
        int boosted = 0;
        for (int r = 0; r < m; ++r) {
            const int fr = first[r];
            double* lr = &l[start[r]];
            const double* ar = &a[start[r]];
            for (int c = fr; c < r; ++c) {
                const int fc = first[c];
                double sum = ar[c - fr];
                int k0 = std::max(fr, fc);
                const double* lc = &l[start[c]];
                const double* x = lr + (k0 - fr);
                const double* yv = lc + (k0 - fc);
                int len = c - k0;
                for (int k = 0; k < len; ++k) sum -= x[k] * yv[k];
                lr[c - fr] = sum / lc[c - fc];
            }
            double d = ar[r - fr];
            for (int k = fr; k < r; ++k) d -= lr[k - fr] * lr[k - fr];
            if (d < pivot_floor) {
                d = pivot_floor;
                ++boosted;
            }
            lr[r - fr] = std::sqrt(d);
        }
        return boosted;
    }

    void solve(std::vector<double>& x) const {
        for (int r = 0; r < m; ++r) {
            const int fr = first[r];
            const double* lr = &l[start[r]];
            double sum = x[r];
            for (int k = fr; k < r; ++k) sum -= lr[k - fr] * x[k];
            x[r] = sum / lr[r - fr];
        }
        for (int r = m - 1; r >= 0; --r) {
            const int fr = first[r];
            const double* lr = &l[start[r]];
            double xr = x[r] / lr[r - fr];
            x[r] = xr;
            for (int k = fr; k < r; ++k) x[k] -= lr[k - fr] * xr;
        }
    }
};

struct Ipm {
    detail::StandardView s;
    IpmOptions opt;

    std::vector<char> dense;
    std::vector<int> dense_cols;
    Skyline sky;

    std::vector<double> x, z, sUp, vUp; // primal, lower dual, upper slack/dual
    std::vector<double> y;
    std::vector<double> theta;
    std::vector<char> hasUp;
    int nUp = 0;

    // Woodbury workspace
    std::vector<std::vector<double>> W; // B^-1 a_d per dense col
    std::vector<double> G;              // k x k, factored in-place

    explicit Ipm(const detail::StandardView& sv, const IpmOptions& o) : s(sv), opt(o) {}

    void mat_vec(const std::vector<double>& v, std::vector<double>& out) const { // out = A v
        std::fill(out.begin(), out.end(), 0.0);
        for (int j = 0; j < s.n; ++j) {
            double vj = v[j];
            if (vj == 0) continue;
            for (int k = s.col_ptr[j]; k < s.col_ptr[j + 1]; ++k) out[s.col_row[k]] += s.col_val[k] * vj;
        }
    }
    void mat_tvec(const std::vector<double>& v, std::vector<double>& out) const { // out = A' v
        for (int j = 0; j < s.n; ++j) {
            double sum = 0;
            for (int k = s.col_ptr[j]; k < s.col_ptr[j + 1]; ++k) sum += s.col_val[k] * v[s.col_row[k]];
            out[j] = sum;
        }
    }

    void detect_dense() {
        dense.assign(s.n, 0);
        for (int j = 0; j < s.n; ++j) {
            int b0 = s.col_ptr[j], b1 = s.col_ptr[j + 1];
            if (b1 - b0 < 2) continue;
            int span = s.col_row[b1 - 1] - s.col_row[b0];
            if (span > kDenseSpan || (b1 - b0) > 64) {
                dense[j] = 1;
                dense_cols.push_back(j);
            }
        }
    }

    // Solve M t = r where M = B + sum_d theta_d a_d a_d', via the symmetric
    // Woodbury form G = I + Theta^1/2 V' B^-1 V Theta^1/2 whose eigenvalues
    // are >= 1 regardless of how large theta grows.
    void solve_normal(std::vector<double>& r) const {
        sky.solve(r);
        int k = static_cast<int>(dense_cols.size());
        if (k == 0) return;
        std::vector<double> g(k);
        for (int i = 0; i < k; ++i) {
            int j = dense_cols[i];
            double sum = 0;
            for (int p = s.col_ptr[j]; p < s.col_ptr[j + 1]; ++p) sum += s.col_val[p] * r[s.col_row[p]];
            g[i] = sum * std::sqrt(theta[j]);
        }
        // h = G^-1 g (G factored as Cholesky, lower in place)
        std::vector<double> h = g;
        for (int i = 0; i < k; ++i) {
            for (int jj = 0; jj < i; ++jj) h[i] -= G[i * k + jj] * h[jj];
            h[i] /= G[i * k + i];
        }
        for (int i = k - 1; i >= 0; --i) {
            for (int jj = i + 1; jj < k; ++jj) h[i] -= G[jj * k + i] * h[jj];
            h[i] /= G[i * k + i];
        }
        for (int i = 0; i < k; ++i) {
            const double hi = h[i] * std::sqrt(theta[dense_cols[i]]);
            if (hi == 0) continue;
            const auto& wi = W[i];
            for (int r2 = 0; r2 < s.m; ++r2) r[r2] -= wi[r2] * hi;
        }
    }

    void prepare_woodbury() {
        int k = static_cast<int>(dense_cols.size());
        if (k == 0) return;
        W.assign(k, std::vector<double>(s.m, 0.0));
        for (int i = 0; i < k; ++i) {
            int j = dense_cols[i];
            auto& wi = W[i];
            std::fill(wi.begin(), wi.end(), 0.0);
            for (int p = s.col_ptr[j]; p < s.col_ptr[j + 1]; ++p) wi[s.col_row[p]] = s.col_val[p];
            sky.solve(wi);
        }
        G.assign(static_cast<std::size_t>(k) * k, 0.0);
        for (int i = 0; i < k; ++i) {
            int ji = dense_cols[i];
            double ti = std::sqrt(theta[ji]);
            for (int l2 = 0; l2 <= i; ++l2) {
                double sum = 0;
                for (int p = s.col_ptr[ji]; p < s.col_ptr[ji + 1]; ++p)
                    sum += s.col_val[p] * W[l2][s.col_row[p]];
                sum *= ti * std::sqrt(theta[dense_cols[l2]]);
                G[i * k + l2] = sum;
                G[l2 * k + i] = sum;
            }
            G[i * k + i] += 1.0;
        }
        // dense Cholesky of G
        for (int i = 0; i < k; ++i) {
            for (int jj = 0; jj <= i; ++jj) {
                double sum = G[i * k + jj];
                for (int p = 0; p < jj; ++p) sum -= G[i * k + p] * G[jj * k + p];
                if (i == jj)
                    G[i * k + i] = std::sqrt(std::max(sum, 1e-300));
                else
                    G[i * k + jj] = sum / G[jj * k + jj];
            }
        }
    }

    Solution run() {
        const int m = s.m, n = s.n;
        Solution sol;
        detect_dense();
        sky.symbolic(s, dense);

        hasUp.assign(n, 0);
        nUp = 0;
        for (int j = 0; j < n; ++j)
            if (std::isfinite(s.up[j])) {
                hasUp[j] = 1;
                ++nUp;
            }

        double bmax = 1.0, cmax = 1.0;
        for (int i = 0; i < m; ++i) bmax = std::max(bmax, std::abs(s.b[i]));
        for (int j = 0; j < n; ++j) cmax = std::max(cmax, std::abs(s.c[j]));

        x.assign(n, 0.0);
        z.assign(n, 0.0);
        sUp.assign(n, 0.0);
        vUp.assign(n, 0.0);
        y.assign(m, 0.0);
        theta.assign(n, 1.0);

        // Mehrotra-style starting point from two least-squares solves:
        // x ~ argmin ||x|| s.t. Ax = b, y from A A' y = A c.
        {
            sky.assemble(s, dense, theta);
            sky.factor(1e-12);
            prepare_woodbury();
            std::vector<double> w(s.b, s.b + m);
            solve_normal(w);
            std::vector<double> x0(n), y0(m), z0(n);
            mat_tvec(w, x0);
            std::vector<double> ac(m, 0.0);
            {
                std::vector<double> cv(s.c, s.c + n);
                mat_vec(cv, ac);
            }
            y0 = ac;
            solve_normal(y0);
            mat_tvec(y0, z0);
            for (int j = 0; j < n; ++j) z0[j] = s.c[j] - z0[j];

            double dx = 0, dz = 0;
            for (int j = 0; j < n; ++j) {
                dx = std::max(dx, -1.5 * x0[j]);
                dz = std::max(dz, -1.5 * z0[j]);
            }
            dx += 0.01 * std::max(1.0, bmax);
            dz += 0.01 * std::max(1.0, cmax);
            double xz = 0, sx = 0, sz = 0;
            for (int j = 0; j < n; ++j) {
                xz += (x0[j] + dx) * (z0[j] + dz);
                sx += x0[j] + dx;
                sz += z0[j] + dz;
            }
            double dhx = dx + 0.5 * xz / std::max(sz, 1e-30);
            double dhz = dz + 0.5 * xz / std::max(sx, 1e-30);
            for (int j = 0; j < n; ++j) {
                x[j] = x0[j] + dhx;
                z[j] = z0[j] + dhz;
                if (hasUp[j]) {
                    // keep a healthy gap to both bounds
                    double cap = 0.9 * s.up[j];
                    if (x[j] > cap) x[j] = std::max(0.5 * s.up[j], cap);
                    if (x[j] < 0.1 * s.up[j]) x[j] = std::min(0.1 * s.up[j], dhx);
                    if (x[j] <= 0) x[j] = 0.5 * s.up[j];
                    sUp[j] = s.up[j] - x[j];
                    vUp[j] = dhz;
                }
            }
            y = y0;
        }

        std::vector<double> rp(m), rd(n), ru(n), rxz(n), rsv(n), rhat(n), rhs(m);
        std::vector<double> dx(n), dz(n), ds(n), dv(n), dy(m), aty(n), tmpn(n);
        std::vector<double> dx_c(n), dz_c(n), ds_c(n), dv_c(n), dy_c(m);

        auto residuals = [&](double& rpinf, double& rdinf, double& mu, double& dobj) {
            mat_vec(x, rhs);
            for (int i = 0; i < m; ++i) rp[i] = s.b[i] - rhs[i];
            mat_tvec(y, aty);
            double g = 0;
            for (int j = 0; j < n; ++j) {
                rd[j] = s.c[j] - aty[j] - z[j] + (hasUp[j] ? vUp[j] : 0.0);
                ru[j] = hasUp[j] ? s.up[j] - x[j] - sUp[j] : 0.0;
                g += x[j] * z[j] + (hasUp[j] ? sUp[j] * vUp[j] : 0.0);
            }
            rpinf = 0;
            for (int i = 0; i < m; ++i) rpinf = std::max(rpinf, std::abs(rp[i]));
            rdinf = 0;
            for (int j = 0; j < n; ++j) rdinf = std::max(rdinf, std::abs(rd[j]));
            mu = g / std::max(1, n + nUp);
            dobj = s.obj_constant;
            for (int i = 0; i < m; ++i) dobj += s.b[i] * y[i];
            for (int j = 0; j < n; ++j)
                if (hasUp[j]) dobj -= s.up[j] * vUp[j];
        };

        // Solves the KKT system for given complementarity targets; outputs
        // into (odx, ody, odz, ods, odv). Uses the current factorization.
        auto solve_dir = [&](const std::vector<double>& txz, const std::vector<double>& tsv,
                             std::vector<double>& odx, std::vector<double>& ody, std::vector<double>& odz,
                             std::vector<double>& ods, std::vector<double>& odv) {
            for (int j = 0; j < n; ++j) {
                double r = rd[j] - txz[j] / x[j];
                if (hasUp[j]) r += tsv[j] / sUp[j] - vUp[j] / sUp[j] * ru[j];
                rhat[j] = r;
                tmpn[j] = theta[j] * r;
            }
            mat_vec(tmpn, rhs);
            for (int i = 0; i < m; ++i) rhs[i] += rp[i];
            ody = rhs;
            solve_normal(ody);
            // one round of iterative refinement on the normal equations
            {
                std::vector<double> res(m, 0.0), tv(n);
                mat_tvec(ody, tv);
                for (int j = 0; j < n; ++j) tv[j] *= theta[j];
                mat_vec(tv, res);
                for (int i = 0; i < m; ++i) res[i] = rhs[i] - res[i];
                double rn = 0, bn = 0;
                for (int i = 0; i < m; ++i) {
                    rn = std::max(rn, std::abs(res[i]));
                    bn = std::max(bn, std::abs(rhs[i]));
                }
                if (rn > 1e-11 * (1 + bn)) {
                    solve_normal(res);
                    for (int i = 0; i < m; ++i) ody[i] += res[i];
                }
            }
            mat_tvec(ody, aty);
            for (int j = 0; j < n; ++j) odx[j] = theta[j] * (aty[j] - rhat[j]);
            for (int j = 0; j < n; ++j) {
                odz[j] = (txz[j] - z[j] * odx[j]) / x[j];
                if (hasUp[j]) {
                    ods[j] = ru[j] - odx[j];
                    odv[j] = (tsv[j] - vUp[j] * ods[j]) / sUp[j];
                } else {
                    ods[j] = 0;
                    odv[j] = 0;
                }
            }
        };

        auto max_step = [&](const std::vector<double>& xx, const std::vector<double>& dd, bool upOnly) {
            double a = 1.0;
            for (int j = 0; j < n; ++j) {
                if (upOnly && !hasUp[j]) continue;
                if (dd[j] < 0) a = std::min(a, -xx[j] / dd[j]);
            }
            return a;
        };

        double rpinf, rdinf, mu, dobj;
        double last_obj = 0;
        // best-so-far iterate, used when the endgame turns ill-conditioned
        double best_score = kInf;
        std::vector<double> bx, by;
        double best_obj = 0;
        bool best_converged = false;
        int best_iter = 0;
        double ap = 0, ad = 0;
        for (int iter = 0; iter < opt.max_iterations; ++iter) {
            residuals(rpinf, rdinf, mu, dobj);
            double pobj = s.obj_constant;
            for (int j = 0; j < n; ++j) pobj += s.c[j] * x[j];
            last_obj = pobj;
            double relp = rpinf / (1 + bmax);
            double reld = rdinf / (1 + cmax);
            double relg = std::abs(pobj - dobj) / (1 + std::abs(pobj));
            if (opt.verbose)
                std::fprintf(stderr, "ipm %3d: rp %.2e rd %.2e gap %.2e mu %.2e obj %.8e ap %.2f ad %.2f\n",
                             iter, relp, reld, relg, mu, pobj, ap, ad);
            double score = std::max({relp, reld, relg});
            if (!std::isfinite(score)) break;
            if (score < best_score) {
                best_score = score;
                bx = x;
                by = y;
                best_obj = pobj;
                best_iter = iter;
            }
            if (relp <= opt.tol_feas && reld <= opt.tol_feas && relg <= opt.tol_gap) {
                best_converged = true;
                bx = x;
                by = y;
                best_obj = pobj;
                sol.iterations = iter;
                break;
            }
            if (score > 1e4 * best_score && best_score < 1e-6) break; // diverging endgame
            if (iter - best_iter > 15) break;                         // stalled
            sol.iterations = iter + 1;

            for (int j = 0; j < n; ++j) {
                double d = z[j] / x[j] + (hasUp[j] ? vUp[j] / sUp[j] : 0.0);
                theta[j] = 1.0 / d;
            }
            sky.assemble(s, dense, theta);
            double dmax = 1e-30;
            for (int r = 0; r < m; ++r) dmax = std::max(dmax, sky.a[sky.start[r] + static_cast<std::size_t>(r - sky.first[r])]);
            sky.factor(std::max(1e-30, 1e-14 * dmax));
            prepare_woodbury();

            // affine direction
            for (int j = 0; j < n; ++j) {
                rxz[j] = -x[j] * z[j];
                rsv[j] = hasUp[j] ? -sUp[j] * vUp[j] : 0.0;
            }
            solve_dir(rxz, rsv, dx, dy, dz, ds, dv);
            double apx = max_step(x, dx, false);
            double aps = max_step(sUp, ds, true);
            double ap = std::min(apx, aps);
            double adz = max_step(z, dz, false);
            double adv = max_step(vUp, dv, true);
            double ad = std::min(adz, adv);
            double mu_aff = 0;
            for (int j = 0; j < n; ++j) {
                mu_aff += (x[j] + ap * dx[j]) * (z[j] + ad * dz[j]);
                if (hasUp[j]) mu_aff += (sUp[j] + ap * ds[j]) * (vUp[j] + ad * dv[j]);
            }
            mu_aff /= std::max(1, n + nUp);
            double sigma = std::pow(std::clamp(mu_aff / mu, 0.0, 1.0), 3.0);
            sigma = std::clamp(sigma, 1e-8, 0.9999);
            // keep centering alive while still infeasible; letting mu collapse
            // first makes the Newton systems inconsistent
            if (relp > 100 * opt.tol_feas || reld > 100 * opt.tol_feas) sigma = std::max(sigma, 0.1);

            // combined Mehrotra direction
            for (int j = 0; j < n; ++j) {
                rxz[j] = sigma * mu - x[j] * z[j] - dx[j] * dz[j];
                rsv[j] = hasUp[j] ? sigma * mu - sUp[j] * vUp[j] - ds[j] * dv[j] : 0.0;
            }
            solve_dir(rxz, rsv, dx, dy, dz, ds, dv);
            ap = std::min(max_step(x, dx, false), max_step(sUp, ds, true));
            ad = std::min(max_step(z, dz, false), max_step(vUp, dv, true));

            // Gondzio centrality correctors (skipped in the endgame)
            int n_gondzio = relg < 1e-8 ? 0 : opt.gondzio_correctors;
            for (int cc = 0; cc < n_gondzio; ++cc) {
                double apt = std::min(1.0, 1.08 * ap + 0.08);
                double adt = std::min(1.0, 1.08 * ad + 0.08);
                const double gl = 0.1, gu = 10.0;
                for (int j = 0; j < n; ++j) {
                    double xt = (x[j] + apt * dx[j]) * (z[j] + adt * dz[j]);
                    double target = std::clamp(xt, gl * sigma * mu, gu * sigma * mu);
                    rxz[j] = target - xt;
                    if (hasUp[j]) {
                        double st = (sUp[j] + apt * ds[j]) * (vUp[j] + adt * dv[j]);
                        double t2 = std::clamp(st, gl * sigma * mu, gu * sigma * mu);
                        rsv[j] = t2 - st;
                    } else {
                        rsv[j] = 0;
                    }
                }
                // corrector solves use zero primal/dual residual targets
                std::vector<double> rp_save = rp, rd_save = rd, ru_save = ru;
                std::fill(rp.begin(), rp.end(), 0.0);
                std::fill(rd.begin(), rd.end(), 0.0);
                std::fill(ru.begin(), ru.end(), 0.0);
                solve_dir(rxz, rsv, dx_c, dy_c, dz_c, ds_c, dv_c);
                rp = rp_save;
                rd = rd_save;
                ru = ru_save;
                for (int j = 0; j < n; ++j) {
                    dx_c[j] += dx[j];
                    dz_c[j] += dz[j];
                    ds_c[j] += ds[j];
                    dv_c[j] += dv[j];
                }
                for (int i = 0; i < m; ++i) dy_c[i] += dy[i];
                double ap2 = std::min(max_step(x, dx_c, false), max_step(sUp, ds_c, true));
                double ad2 = std::min(max_step(z, dz_c, false), max_step(vUp, dv_c, true));
                if (ap2 >= 1.01 * ap || ad2 >= 1.01 * ad) {
                    dx.swap(dx_c);
                    dz.swap(dz_c);
                    ds.swap(ds_c);
                    dv.swap(dv_c);
                    dy.swap(dy_c);
                    ap = ap2;
                    ad = ad2;
                } else {
                    break;
                }
            }

            double frac = relg < 1e-6 ? 0.9995 : 0.995;
            ap = std::min(1.0, frac * ap);
            ad = std::min(1.0, frac * ad);
            for (int j = 0; j < n; ++j) {
                x[j] += ap * dx[j];
                z[j] += ad * dz[j];
                if (hasUp[j]) {
                    sUp[j] += ap * ds[j];
                    vUp[j] += ad * dv[j];
                }
            }
            for (int i = 0; i < m; ++i) y[i] += ad * dy[i];
        }

        if (!bx.empty()) {
            sol.x.assign(bx.begin(), bx.end());
            sol.y.assign(by.begin(), by.end());
            sol.objective = best_obj;
        } else {
            sol.x.assign(x.begin(), x.end());
            sol.y.assign(y.begin(), y.end());
            sol.objective = last_obj;
        }
        // near-converged iterates are accepted when progress stalls; the
        // callers re-check feasibility independently at their own tolerance
        sol.status = best_converged || best_score <= 100 * std::max(opt.tol_feas, opt.tol_gap)
                         ? SolveStatus::Optimal
                         : SolveStatus::IterationLimit;
        return sol;
    }
};

} // namespace

Solution solve_ipm_standard(const void* std_form, const IpmOptions& opt) {
    Ipm ipm(detail::view(std_form), opt);
    return ipm.run();
}

} // namespace pvb::lp
