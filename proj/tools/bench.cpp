// Micro-benchmark of the group solver on synthetic full-year instances.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "pvb/optimizer.hpp"

using namespace pvb;

namespace {

opt::ProblemInstance make_instance(std::mt19937_64& rng, int T, double dep) {
    opt::ProblemInstance in;
    in.label = "bench";
    std::uniform_real_distribution<double> U(0.8, 1.2);
    in.load_kw.resize(T);
    in.pv_unit_kw.resize(T);
    in.retail_weight.resize(T);
    in.inj_weight.resize(T);
    for (int t = 0; t < T; ++t) {
        int hod = t % 24;
        int day = (t / 24) % 365;
        double season = 1.0 + 0.35 * std::cos(2 * M_PI * (day - 15) / 365.0);
        double daily = hod >= 7 && hod <= 22 ? 1.0 + 0.6 * std::sin(M_PI * (hod - 7) / 15.0) : 0.55;
        in.load_kw[t] = 0.55 * season * daily * U(rng);
        double sun = std::max(0.0, std::sin(M_PI * (hod - 6) / 12.0));
        double sun_season = 1.0 - 0.45 * std::cos(2 * M_PI * (day - 172) / 365.0);
        in.pv_unit_kw[t] = 0.8 * sun * sun_season; // about 1000 kWh/kWp/yr
        bool peak = hod >= 6 && hod < 22 && day % 7 != 6;
        in.retail_weight[t] = (peak ? 1.07 : 0.71) * 0.17 * 17.3; // ~ lifetime-composite EUR/kWh
        in.inj_weight[t] = 0.065 * 17.3;
    }
    in.pv_cap_cost = {2000, 1900, 1550, 1030, 660};
    in.pv_voc_life = {0.026 * 17.3, 0.026 * 17.3, 0.026 * 17.3, 0.026 * 17.3, 0.017 * 17.3};
    in.band_lo = {0, 6, 10, 30, 100};
    in.band_hi = {6, 10, 30, 100, 50000};
    in.fixed_subsidy_net = 0.8 * 909 * 0.9;
    in.dep_max_kwp = dep;
    in.bat_e_cost = 320;
    in.bat_p_cost = 280;
    in.bat_voc_life = 0.0014 * 17.3;
    return in;
}

} // namespace

int main(int argc, char** argv) {
    int n = argc > 1 ? std::atoi(argv[1]) : 5;
    int T = argc > 2 ? std::atoi(argv[2]) : 8760;
    std::mt19937_64 rng(7);
    opt::SolveOptions so;
    double total_ms = 0;
    int total_lps = 0;
    for (int i = 0; i < n; ++i) {
        double dep = i % 3 == 0 ? 18.8 : (i % 3 == 1 ? 55 : 420);
        auto in = make_instance(rng, T, dep);
        auto t0 = std::chrono::steady_clock::now();
        auto sol = opt::solve_group(in, so);
        auto t1 = std::chrono::steady_clock::now();
        double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        total_ms += ms;
        total_lps += sol.lps_solved;
        auto rep = opt::validate_solution(in, sol);
        std::printf("inst %d dep %.1f: obj %.2f pv %.2f bat %.2f/%.2f lps %d  %.1f ms  feas %.2e %s\n", i,
                    dep, sol.objective, sol.total_pv(), sol.cap_bat_e, sol.cap_bat_p, sol.lps_solved, ms,
                    rep.max_violation, rep.ok(1e-6) ? "ok" : "VIOLATION");
    }
    std::printf("avg %.1f ms/group, %.2f LPs/group\n", total_ms / n, double(total_lps) / n);
    return 0;
}
