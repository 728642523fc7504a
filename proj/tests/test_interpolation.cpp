#include <doctest.h>

#include "support.hpp"

#include "ruledmotion/interpolation.hpp"

using namespace rmtest;

namespace {
double quat_err(const Quat<double>& q, const std::array<double, 3>& v) {
    return std::max({std::abs(q.x - v[0]), std::abs(q.y - v[1]), std::abs(q.z - v[2]),
                     std::abs(q.w)});
}
}  // namespace

TEST_CASE("half-turn preimages") {
    SUBCASE("axis direction") {
        auto p = preimage_half_turn(Quat<double>::unit_k());
        CHECK(quat_err(p, {0, 0, 1}) < 1e-15);
    }
    SUBCASE("orthogonal direction") {
        auto p = preimage_half_turn(Quat<double>::unit_i());
        double s = 1.0 / std::sqrt(2.0);
        CHECK(quat_err(p, {s, 0, s}) < 1e-15);
    }
    SUBCASE("antiparallel direction falls back to the alternate branch") {
        auto p = preimage_half_turn(-1.0 * Quat<double>::unit_k());
        CHECK(quat_err(p, {1, 0, 0}) < 1e-15);
        auto img = p * Quat<double>::unit_k() * p.conj();
        CHECK(std::abs(img.z + 1.0) < 1e-15);
    }
    SUBCASE("golden preimages") {
        auto lines = golden::bennett_lines();
        auto expect = golden::bennett_preimages();
        for (int i = 0; i < 3; ++i) {
            auto p = preimage_half_turn(lines[static_cast<size_t>(i)].direction);
            CHECK(quat_err(p, expect[static_cast<size_t>(i)]) < 1e-8);
        }
    }
    SUBCASE("property: preimages solve the half-turn equation") {
        Rng rng(71);
        for (int i = 0; i < 1000; ++i) {
            Quat<double> dir{0, rng.real_in(-3, 3), rng.real_in(-3, 3), rng.real_in(-3, 3)};
            if (std::sqrt(dir.norm()) < 1e-3) continue;
            double phi = rng.real_in(0, 6.283);
            auto p = preimage_half_turn(dir, phi);
            auto img = p * Quat<double>::unit_k() * p.conj();
            double err = std::max({std::abs(img.x - dir.x), std::abs(img.y - dir.y),
                                   std::abs(img.z - dir.z), std::abs(img.w)});
            CHECK(err < 1e-12 * std::max(1.0, std::sqrt(dir.norm())));
        }
    }
}

TEST_CASE("three-line interpolation") {
    auto lines = golden::bennett_lines();
    SUBCASE("golden data set") {
        auto res = interpolate_three_lines(lines, {-1, 0, 1}, {1, 1, 1});
        auto expect = golden::bennett_preimages();
        for (int i = 0; i < 3; ++i)
            CHECK(quat_err(res.preimages[static_cast<size_t>(i)], expect[static_cast<size_t>(i)]) < 1e-8);
        CHECK(res.surface_residual < 1e-8);
        CHECK(res.dual_residual < 1e-7);
        // the trajectory of the moving line passes through the inputs
        auto traj = act_on_line(res.C, PluckerLine<double>::axis_k(), 1e-5);
        for (int i = 0; i < 3; ++i) {
            auto at = traj.ruling_at(-1.0 + i, 1e-4);
            CHECK(at.same_line(lines[static_cast<size_t>(i)], 1e-8));
            auto on_surface = res.L.ruling_at(-1.0 + i, 1e-4);
            CHECK(on_surface.same_line(lines[static_cast<size_t>(i)], 1e-8));
        }
        // both factorizations rebuild the motion to machine precision
        for (const auto* f : {&res.factorization_a, &res.factorization_b}) {
            DualQuatPoly<double> diff = f->remultiply() - res.C.dq();
            CHECK(max_abs_coeff(diff) / std::max(1.0, max_abs_coeff(res.C.dq())) < 1e-12);
            CHECK(f->factors.size() == 2);
        }
        CHECK(res.factorization_a.leading == res.factorization_b.leading);
        // factor axes satisfy the line conditions by construction
        for (const auto& a : res.axes) CHECK(a.direction.norm() > 0);
    }
    SUBCASE("identical lines are rejected") {
        std::array<PluckerLine<double>, 3> same{lines[0], lines[0], lines[1]};
        CHECK_THROWS_AS(interpolate_three_lines(same, {-1, 0, 1}, {1, 1, 1}), DegenerateInputError);
    }
    SUBCASE("bad knots and weights are rejected") {
        CHECK_THROWS_AS(interpolate_three_lines(lines, {0, 0, 1}, {1, 1, 1}), PreconditionError);
        CHECK_THROWS_AS(interpolate_three_lines(lines, {-1, 0, 1}, {1, 0, 1}), PreconditionError);
    }
    SUBCASE("negative weights flip homogeneous representatives only") {
        auto res = interpolate_three_lines(lines, {-1, 0, 1}, {1, -1, 1});
        auto traj = act_on_line(res.C, PluckerLine<double>::axis_k(), 1e-5);
        for (int i = 0; i < 3; ++i)
            CHECK(traj.ruling_at(-1.0 + i, 1e-4).same_line(lines[static_cast<size_t>(i)], 1e-8));
    }
    SUBCASE("perturbed data still interpolates, with a visible residual") {
        Rng rng(72);
        auto noisy = [&](const PluckerLine<double>& l) {
            auto n = [&](double v) { return v + rng.real_in(-1e-3, 1e-3); };
            return PluckerLine<double>(
                Quat<double>{0, n(l.direction.x), n(l.direction.y), n(l.direction.z)},
                Quat<double>{0, n(l.moment.x), n(l.moment.y), n(l.moment.z)}, 1e-2);
        };
        std::array<PluckerLine<double>, 3> pl{noisy(lines[0]), noisy(lines[1]), noisy(lines[2])};
        InterpolateOptions opts;
        opts.tolerance = 1e-2;
        auto res = interpolate_three_lines(pl, {-1, 0, 1}, {1, 1, 1}, opts);
        CHECK(res.surface_residual < 1e-2);
        CHECK(res.dual_residual < 1e-1);
        for (const auto* f : {&res.factorization_a, &res.factorization_b}) {
            DualQuatPoly<double> diff = f->remultiply() - res.C.dq();
            CHECK(max_abs_coeff(diff) / std::max(1.0, max_abs_coeff(res.C.dq())) < 1e-10);
        }
    }
    SUBCASE("shifted knots still interpolate") {
        auto res = interpolate_three_lines(lines, {0, 1, 2}, {1, 1, 1});
        auto traj = act_on_line(res.C, PluckerLine<double>::axis_k(), 1e-5);
        for (int i = 0; i < 3; ++i)
            CHECK(traj.ruling_at(0.0 + i, 1e-4).same_line(lines[static_cast<size_t>(i)], 1e-8));
    }
}

TEST_CASE("norm quadratics of a float motion") {
    auto lines = golden::bennett_lines();
    auto res = interpolate_three_lines(lines, {-1, 0, 1}, {1, 1, 1});
    auto quads = norm_quadratics(res.C);
    REQUIRE(quads.size() == 2);
    CHECK(quads[0].coeff(1) < quads[1].coeff(1));
    FPoly product = quads[0] * quads[1];
    FPoly nrm = res.C.norm();
    FPoly scaled = (1.0 / nrm.lc()) * nrm;
    CHECK(max_abs_coeff(product - scaled) < 1e-9 * std::max(1.0, max_abs_coeff(scaled)));
}
