#include "conic/scan.hpp"

#include <doctest.h>

#include <sstream>
#include <string>

using namespace conic;

namespace
{

std::string csv(const ScanGrid &g)
{
    std::ostringstream os;
    write_scan_csv(os, g);
    return os.str();
}

}

TEST_SUITE("scan")
{
    TEST_CASE("cell layout")
    {
        const ScanRect r{-0.5, 0.5, 0.5, 2.0};
        const auto g = region_scan(r, 4, 3, 1);
        REQUIRE(g.cells.size() == 12);
        CHECK(g.tau_at(0, 0) == cplx(-0.375, 0.75));
        CHECK(g.tau_at(3, 2) == cplx(0.375, 1.75));
        CHECK(g.at(1, 2).tau == g.tau_at(1, 2));
    }

    TEST_CASE("results do not depend on the number of workers")
    {
        const ScanRect r{-0.5, 0.5, 0.6, 1.2};
        const auto a = region_scan(r, 6, 5, 1);
        const auto b = region_scan(r, 6, 5, 4);
        CHECK(csv(a) == csv(b));
    }

    TEST_CASE("csv")
    {
        const ScanRect r{0.2, 0.4, 0.7, 0.9};
        const auto g = region_scan(r, 2, 2, 2);
        std::istringstream is(csv(g));
        std::string line;
        std::getline(is, line);
        CHECK(line == scan_csv_header);
        int rows = 0;
        while (std::getline(is, line)) {
            ++rows;
            CHECK(std::count(line.begin(), line.end(), ',') == 10);
        }
        CHECK(rows == 4);
    }

    TEST_CASE("cells")
    {
        const auto yes = scan_cell(cplx(0.3, 0.8));
        CHECK(yes.exists);
        REQUIRE(yes.solution.has_value());
        CHECK(yes.max_residual() < 1e-8);
        CHECK(yes.error.empty());
        CHECK(yes.ineq_thm.has_value());
        CHECK(yes.ineq_proof.has_value());

        const auto no = scan_cell(cplx(0.0, 1.0));
        CHECK_FALSE(no.exists);
        CHECK_FALSE(no.solution.has_value());
        CHECK(no.winding_count == 0);
    }

    TEST_CASE("agreement report")
    {
        ScanGrid g;
        g.nx = 6;
        g.ny = 1;
        g.cells.resize(6);
        for (int i = 0; i < 6; ++i) {
            auto &c = g.cells[static_cast<std::size_t>(i)];
            c.exists = i < 3;
            c.ineq_thm = i < 3;
            c.ineq_proof = false;
        }
        const auto none = inequality_agreement(g, 0);
        CHECK(none.exists_cells == 3);
        CHECK(none.empty_cells == 3);
        CHECK(none.theorem.compared == 6);
        CHECK(none.theorem.agree == 6);
        CHECK(none.proof.agree == 3);
        CHECK(none.proof.percent() == doctest::Approx(50.0));

        const auto banded = inequality_agreement(g, 2);
        CHECK(banded.band_cells == 4);
        CHECK(banded.theorem.compared == 2);

        g.cells[5].error = "x";
        const auto failed = inequality_agreement(g, 0);
        CHECK(failed.failed_cells == 1);
        CHECK(failed.theorem.compared == 5);
    }

    TEST_CASE("refinement keeps verdicts away from the boundary")
    {
        const ScanRect r{-0.5, 0.5, 0.5, 2.0};
        const auto coarse = region_scan(r, 10, 10, 4);
        const auto fine = region_scan(r, 20, 20, 4);
        int compared = 0;
        for (int iy = 0; iy < 10; ++iy) {
            for (int ix = 0; ix < 10; ++ix) {
                bool near_change = false;
                for (int dy = -2; dy <= 2; ++dy) {
                    for (int dx = -2; dx <= 2; ++dx) {
                        const int x = ix + dx, y = iy + dy;
                        if (x >= 0 && x < 10 && y >= 0 && y < 10 && coarse.at(x, y).exists != coarse.at(ix, iy).exists) {
                            near_change = true;
                        }
                    }
                }
                if (near_change) {
                    continue;
                }
                // The four fine cells inside this coarse cell.
                for (int sy = 0; sy < 2; ++sy) {
                    for (int sx = 0; sx < 2; ++sx) {
                        CHECK(fine.at(2 * ix + sx, 2 * iy + sy).exists == coarse.at(ix, iy).exists);
                        ++compared;
                    }
                }
            }
        }
        CHECK(compared > 0);
    }

    TEST_CASE("metric grid")
    {
        const auto ctx = EllipticContext::from_tau(cplx(0.3, 0.8));
        const auto res = find_solutions(ctx);
        REQUIRE(res.exists());
        std::ostringstream os;
        write_metric_grid(os, ctx, res.solutions[0], 5);
        std::istringstream is(os.str());
        std::string line;
        std::getline(is, line);
        CHECK(line == metric_csv_header);
        int rows = 0;
        while (std::getline(is, line)) {
            ++rows;
        }
        CHECK(rows == 25);
    }
}
