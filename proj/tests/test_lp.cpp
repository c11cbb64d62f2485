#include <doctest.h>

#include <cmath>
#include <random>

#include "pvb/lp.hpp"

using namespace pvb;

namespace {

lp::Model tiny_model() {
    // min -x - 2y  s.t. x + y <= 4, x <= 3, y <= 2    -> x=2? y=2, x+y=4 -> obj -8? check: x=2,y=2
    lp::Model m;
    int x = m.add_col(-1, 0, 3);
    int y = m.add_col(-2, 0, 2);
    m.add_row(lp::Sense::LE, 4, {{x, 1.0}, {y, 1.0}});
    return m;
}

lp::Model random_model(std::mt19937_64& rng, int n, int mrows) {
    std::uniform_real_distribution<double> U(-1, 1);
    std::uniform_real_distribution<double> Upos(0.2, 2.0);
    lp::Model m;
    for (int j = 0; j < n; ++j) {
        double c = U(rng);
        double up = (c >= 0 && rng() % 3 == 0) ? lp::kInf : Upos(rng) * 5;
        m.add_col(c, 0.0, up);
    }
    for (int i = 0; i < mrows; ++i) {
        std::vector<std::pair<int, double>> terms;
        for (int j = 0; j < n; ++j)
            if (rng() % 3 == 0) terms.push_back({j, U(rng)});
        if (terms.empty()) terms.push_back({static_cast<int>(rng() % n), 1.0});
        // keep x = 0 feasible so every draw has an optimum
        bool ge = rng() % 4 == 0;
        double rhs = Upos(rng);
        m.add_row(ge ? lp::Sense::GE : lp::Sense::LE, ge ? -rhs : rhs, terms);
    }
    return m;
}

} // namespace

TEST_CASE("simplex solves a tiny bounded LP") {
    lp::Model m = tiny_model();
    auto sol = lp::solve_simplex(m);
    REQUIRE(sol.status == lp::SolveStatus::Optimal);
    CHECK(sol.objective == doctest::Approx(-6.0).epsilon(1e-9));
    CHECK(sol.x[1] == doctest::Approx(2.0));
    CHECK(sol.x[0] == doctest::Approx(2.0));
}

TEST_CASE("ipm matches simplex on random bounded-feasible LPs") {
    std::mt19937_64 rng(42);
    int solved = 0;
    for (int k = 0; k < 40; ++k) {
        lp::Model m = random_model(rng, 6 + static_cast<int>(rng() % 10), 4 + static_cast<int>(rng() % 8));
        auto s1 = lp::solve_simplex(m);
        if (s1.status != lp::SolveStatus::Optimal) continue; // unbounded draws are skipped
        auto s2 = lp::solve_ipm(m);
        REQUIRE(s2.status == lp::SolveStatus::Optimal);
        CHECK(s2.objective ==
              doctest::Approx(s1.objective).epsilon(1e-6).scale(1 + std::abs(s1.objective)));
        auto rep = lp::check_solution(m, s2.x);
        CHECK(rep.ok(1e-7));
        ++solved;
    }
    CHECK(solved >= 20);
}

TEST_CASE("equality rows and shifted lower bounds") {
    lp::Model m;
    int x = m.add_col(1.0, 2.0, 10.0);
    int y = m.add_col(3.0, 0.0, lp::kInf);
    m.add_row(lp::Sense::EQ, 7.0, {{x, 1.0}, {y, 1.0}});
    auto s1 = lp::solve_simplex(m);
    auto s2 = lp::solve_ipm(m);
    REQUIRE(s1.status == lp::SolveStatus::Optimal);
    REQUIRE(s2.status == lp::SolveStatus::Optimal);
    // cheapest: x as large as possible -> x=7, y=0
    CHECK(s1.objective == doctest::Approx(7.0));
    CHECK(s2.objective == doctest::Approx(7.0).epsilon(1e-7));
}

TEST_CASE("duplicate column terms in one row are coalesced") {
    lp::Model m;
    int x = m.add_col(-1.0, 0.0, lp::kInf);
    m.add_row(lp::Sense::LE, 3.0, {{x, 1.0}, {x, 1.0}});
    auto s = lp::solve_simplex(m);
    REQUIRE(s.status == lp::SolveStatus::Optimal);
    CHECK(s.x[0] == doctest::Approx(1.5));
    auto s2 = lp::solve_ipm(m);
    CHECK(s2.x[0] == doctest::Approx(1.5).epsilon(1e-7));
}

TEST_CASE("infeasible model is reported by simplex") {
    lp::Model m;
    int x = m.add_col(1.0, 0.0, 1.0);
    m.add_row(lp::Sense::GE, 5.0, {{x, 1.0}});
    auto s = lp::solve_simplex(m);
    CHECK(s.status == lp::SolveStatus::Infeasible);
}
