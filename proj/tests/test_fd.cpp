#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dtrw/analytic.hpp"
#include "dtrw/fd.hpp"
#include "dtrw/renewal.hpp"
#include "dtrw/specfn.hpp"

using namespace dtrw;

TEST_CASE("first step from a delta")
{
    const auto domain = LatticeDomain::unbounded();
    const auto geo = fd_solve(GeometricModel(1.0), JumpModel{}, domain, DensityField::delta(domain, 0), 1);
    CHECK(geo[1].at(-1) == 0.5);
    CHECK(geo[1].at(0) == 0.0);
    CHECK(geo[1].at(1) == 0.5);

    const double alpha = 0.6;
    const double r = 0.7;
    const auto sib = fd_solve(SibuyaModel(alpha), JumpModel::symmetric(r), domain,
                              DensityField::delta(domain, 0), 1);
    CHECK(sib[1].at(-1) == doctest::Approx(alpha * r / 2));
    CHECK(sib[1].at(0) == doctest::Approx(1 - alpha * r));
    CHECK(sib[1].at(1) == doctest::Approx(alpha * r / 2));
    CHECK(sib[1].first_site == -1);
    CHECK(sib[1].last_site() == 1);
}

TEST_CASE("zero steps return the initial field")
{
    const auto domain = LatticeDomain::interval(-1.0, 1.0, 0.2);
    const auto init = DensityField::delta(domain, 2);
    const auto out = fd_solve(SibuyaModel(0.5), JumpModel{}, domain, init, 0);
    REQUIRE(out.size() == 1);
    CHECK(out[0].mass == init.mass);
    CHECK(out[0].first_site == init.first_site);
}

TEST_CASE("mass is conserved on a reflecting domain")
{
    for (double alpha : {0.3, 0.7, 1.0}) {
        const auto domain = LatticeDomain::bounded(-10, 10, 0.1, -1.0);
        FdSolver solver(SibuyaModel(alpha), JumpModel{0.3, 0.7, 0.9}, domain, DensityField::delta(domain, 8));
        for (int n = 1; n <= 500; ++n) {
            solver.step();
            CHECK(std::abs(solver.current().total() - 1.0) < 1e-12);
        }
        CHECK(solver.current().mass.minCoeff() >= 0.0);
    }
}

TEST_CASE("kernel form equals the binomial-weight form of the Sibuya scheme")
{
    const double alpha = 0.55;
    const auto domain = LatticeDomain::bounded(-6, 6, 1.0, -6.0);
    const JumpModel jumps{};
    const auto fields = fd_solve(SibuyaModel(alpha), jumps, domain, DensityField::delta(domain, 0), 100);

    // Independent loop: weights (-1)^j binom(1-alpha, j) + delta_{1j}, boundary flux kept on the diagonal.
    const int sites = 13;
    std::vector<Eigen::VectorXd> u{Eigen::VectorXd::Zero(sites)};
    u[0](6) = 1.0;
    for (int n = 1; n <= 100; ++n) {
        Eigen::VectorXd next = u[n - 1];
        for (int m = 0; m < n; ++m) {
            const int j = n - m;
            const double w = ((j % 2 == 0) ? 1.0 : -1.0) * gen_binomial(1.0 - alpha, j) + (j == 1 ? 1.0 : 0.0);
            for (int i = 0; i < sites; ++i) {
                const double from_left = i > 0 ? u[m](i - 1) : u[m](i);
                const double from_right = i < sites - 1 ? u[m](i + 1) : u[m](i);
                next(i) += w * (0.5 * from_left + 0.5 * from_right - u[m](i));
            }
        }
        u.push_back(next);
        CHECK((fields[n].mass - next).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("unbounded solve equals the subordination formula")
{
    for (double alpha : {0.3, 0.5, 0.9}) {
        const auto domain = LatticeDomain::unbounded();
        const auto fields = fd_solve(SibuyaModel(alpha), JumpModel{}, domain, DensityField::delta(domain, 0), 20);
        const auto table = build_jump_counts(alpha, 20, 20);
        double worst = 0.0;
        for (std::int64_t i = -21; i <= 21; ++i)
            worst = std::max(worst, std::abs(fields[20].at(i) - subordinated_density(table, 0.5, i, 20)));
        CAPTURE(alpha);
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("alpha = 1 collapses to the classic stencil")
{
    for (const auto& domain : {LatticeDomain::unbounded(), LatticeDomain::bounded(-4, 4, 1.0, -4.0)}) {
        const JumpModel jumps = JumpModel::symmetric(0.8);
        const auto a = fd_solve(SibuyaModel(1.0), jumps, domain, DensityField::delta(domain, 0), 60);
        const auto b = fd_solve(GeometricModel(1.0), jumps, domain, DensityField::delta(domain, 0), 60);
        for (std::size_t n = 0; n < a.size(); ++n)
            CHECK(max_abs_difference(a[n], b[n]) < 1e-14);
    }
}

TEST_CASE("grid calibration")
{
    CHECK(calibrate_grid(0.5, 0.1, 0.2, 1.0).delta_t == doctest::Approx(0.04).epsilon(1e-14));
    CHECK(calibrate_grid(0.5, 0.1, 0.2, 0.5).delta_t == doctest::Approx(0.01).epsilon(1e-14));
    CHECK(calibrate_grid(1.0, 0.3, 0.1, 0.6).delta_t == doctest::Approx(0.6 * 0.01 / 0.6).epsilon(1e-14));
    const auto g = calibrate_grid(0.5, 0.1, 0.2, 1.0);
    CHECK(g.steps_for(0.48) == 12);
    CHECK(g.steps_for(0.5) == 12);
    CHECK(g.time_of(12) == doctest::Approx(0.48));
    CHECK_THROWS_AS(calibrate_grid(0.5, 0.1, 0.2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(calibrate_grid(0.5, -0.1, 0.2, 1.0), std::invalid_argument);
}

TEST_CASE("operation count is quadratic in steps")
{
    const auto domain = LatticeDomain::interval(-1.0, 1.0, 0.2);
    FdSolver solver(SibuyaModel(0.5), JumpModel{}, domain, DensityField::delta(domain, 0));
    solver.advance(64);
    const double at64 = static_cast<double>(solver.flux_op_count());
    CHECK(at64 == 11.0 * 64 * 65 / 2);
    solver.advance(64);
    const double ratio = static_cast<double>(solver.flux_op_count()) / at64;
    CHECK(ratio >= 3.6);
    CHECK(ratio <= 4.4);
    CHECK(solver.step_counter() == 128);
}

TEST_CASE("extended precision agrees with double")
{
    const auto domain = LatticeDomain::interval(-1.0, 1.0, 0.1);
    const auto init = DensityField::delta(domain, 0);
    const auto d = fd_solve(SibuyaModel(0.4), JumpModel{}, domain, init, 150);
    const auto l = fd_solve<long double>(SibuyaModel(0.4), JumpModel{}, domain, init.cast<long double>(), 150);
    CHECK((d.back().mass - l.back().mass.cast<double>()).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("refining the grid reduces the error against the series solution")
{
    // Fixed t: dx = 0.2, 0.1, 0.05 with r = 1, D = 0.1, alpha = 0.7.
    SeriesSolutionParams p;
    p.alpha = 0.7;
    p.D_alpha = 0.1;
    double previous = INFINITY;
    for (double dx : {0.2, 0.1, 0.05}) {
        const auto domain = LatticeDomain::interval(-1.0, 1.0, dx);
        const auto grid = calibrate_grid(p.alpha, p.D_alpha, dx, 1.0);
        const std::int64_t n = grid.steps_for(0.5);
        const auto fields = fd_solve(SibuyaModel(p.alpha), JumpModel{}, domain, DensityField::delta(domain, 0), n);
        const SeriesSolution u(p, grid.time_of(n));
        double err = 0.0;
        for (std::int64_t i = domain.i_min(); i <= domain.i_max(); ++i)
            err = std::max(err, std::abs(fields.back().at(i) / dx - u(domain.coordinate(i))));
        CAPTURE(dx);
        CHECK(err < previous);
        previous = err;
    }
    CHECK(previous < 0.02);
}

TEST_CASE("solver input checks")
{
    const auto domain = LatticeDomain::interval(-1.0, 1.0, 0.5);
    DensityField bad = DensityField::delta(domain, 0);
    bad.mass *= 0.5;
    CHECK_THROWS_AS(FdSolver(SibuyaModel(0.5), JumpModel{}, domain, bad), std::invalid_argument);
    CHECK_THROWS_AS(FdSolver(SibuyaModel(0.5), JumpModel{0.2, 0.2, 1.0}, domain, DensityField::delta(domain, 0)),
                    std::invalid_argument);
    FdSolver ok(SibuyaModel(0.5), JumpModel{}, domain, DensityField::delta(domain, 0));
    CHECK_THROWS_AS(ok.field(1), std::out_of_range);
}
