/*
   Copyright 2026 The scrollkit authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "scrollkit/cover.hpp"
#include "scrollkit/rr.hpp"
#include "scrollkit/scroll.hpp"

using namespace scrollkit;

namespace {

// y^2 = g(x^2) over v^2 = g(u) with g = u^3 + u + 1 over F_11:
// g(0) = 1 is a square and lead(g) = 1 is a square; g is squarefree.
DoubleCover cubic_cover_11() { return make_cover(Poly(11, {1, 1, 0, 1})); }

}  // namespace

TEST_CASE("make_cover genus bookkeeping") {
    DoubleCover cov = cubic_cover_11();
    CHECK(cov.X->genus() == 1);
    CHECK(cov.C->genus() == 2);
    CHECK_FALSE(cov.C->odd_model());
    CHECK(cov.C->infinity_rational());

    // a quintic cover: g_X = 2, g_C = 4
    Poly g5(11, {1, 0, 1, 0, 0, 1});  // x^5 + x^2 + 1
    if (is_squarefree(g5) && g5.eval(Fp::zero(11)).is_square()) {
        DoubleCover c5 = make_cover(g5);
        CHECK(c5.X->genus() == 2);
        CHECK(c5.C->genus() == 4);
    }

    CHECK_THROWS_AS(make_cover(Poly(11, {0, 1, 0, 1})), Error);  // g(0) = 0
}

TEST_CASE("branch and ramification") {
    DoubleCover cov = cubic_cover_11();
    CoverReport rep = branch_and_ramification(cov);
    CHECK(rep.B.degree() == 2);
    CHECK(rep.R.degree() == 2);
    CHECK(rep.B.all_rational());
    CHECK(rep.R.all_rational());
}

TEST_CASE("pushforward twist selection and the branch identity") {
    DoubleCover cov = cubic_cover_11();
    CoverReport rep = branch_and_ramification(cov);
    Divisor E = pushforward_twist(cov, rep);
    CHECK(E.degree() == -1);
    CHECK(is_equivalent(E * -2, rep.B));
    // h0(E) = 0 since the cover is connected
    CHECK(h0(E) == 0);
    // the full cohomology battery
    CHECK(verify_segre(cov, E, 20, Rng(77)));
}

TEST_CASE("involution genus and diagram checks") {
    DoubleCover cov = cubic_cover_11();
    CHECK(involution_genus_check(cov));
    CHECK(h1_diagram_check(cov));
}

TEST_CASE("projection ledger round trips") {
    DoubleCover cov = cubic_cover_11();
    ProjectionState st = projection_start(cov);
    StateReport start = report(st);
    CHECK(start.h0 == cov.C->genus());
    CHECK(start.speciality == 1);

    const Place x = cov.C->rational_points().front();
    project(st, x);
    unproject(st, x);
    StateReport back = report(st);
    CHECK(back.h0 == start.h0);
    CHECK(back.speciality == start.speciality);

    // project r distinct points: speciality equals h0 of the removed set
    ProjectionState st2 = projection_start(cov);
    const auto& pts = cov.C->rational_points();
    REQUIRE(pts.size() >= 3);
    Divisor A(cov.C);
    for (int i = 0; i < 3; ++i) {
        project(st2, pts[static_cast<std::size_t>(i)]);
        A.add(pts[static_cast<std::size_t>(i)], 1);
    }
    StateReport r3 = report(st2);
    CHECK(r3.speciality == h0(A));

    // twist: h0_C(K_C + gamma^* m) = h0_X(b + m) + h0_X(K_X + m)
    CoverReport rep = branch_and_ramification(cov);
    Divisor E = pushforward_twist(cov, rep);
    Divisor b = cov.X->canonical_divisor() - E;
    Rng rng(5);
    for (int iter = 0; iter < 5; ++iter) {
        Divisor m = cov.X->random_effective(2, rng);
        ProjectionState st3 = projection_start(cov);
        twist(st3, m);
        StateReport rt = report(st3);
        CHECK(rt.h0 == h0(b + m) + h0(cov.X->canonical_divisor() + m));
    }
}

TEST_CASE("speciality matches on curve and scroll sides") {
    DoubleCover cov = cubic_cover_11();
    CoverReport rep = branch_and_ramification(cov);
    Divisor E = pushforward_twist(cov, rep);
    Divisor b = cov.X->canonical_divisor() - E;
    // scroll side: e = E = K - b
    PolarizedScroll R = make_canonical_scroll(cov.X, b);
    CHECK(is_equivalent(R.S.e, E));
    CHECK(speciality(R) == 1);
    // curve side
    CHECK(h1(cov.C->canonical_divisor()) == 1);
}
