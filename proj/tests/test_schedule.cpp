#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pfn/schedule.hpp"

using namespace pfn;

TEST_CASE("small schedules by hand") {
    // d_1 = ceil(sqrt(2)) = 2 > 1: no level fits
    DegreeSchedule s0 = degree_schedule(1, 1, 2);
    CHECK(s0.s == 0);
    CHECK(s0.d.empty());

    // D=10, m=1, n=2: d = (2, 2, 3), cumulative 7; d_4 = 4 overflows
    DegreeSchedule s1 = degree_schedule(10, 1, 2);
    CHECK(s1.d == std::vector<int>{2, 2, 3});
    CHECK(s1.s == 3);

    // D=3, m=1, n=1: d = (1, 2)
    DegreeSchedule s2 = degree_schedule(3, 1, 1);
    CHECK(s2.d == std::vector<int>{1, 2});
    CHECK(s2.s == 2);
}

TEST_CASE("bracket inequalities and maximality, exhaustively") {
    for (int D = 1; D <= 50; ++D) {
        for (long m = 1; m <= 4; ++m) {
            for (int n = 1; n <= 4; ++n) {
                DegreeSchedule s = degree_schedule(D, m, n);
                long total = 0;
                for (int l = 1; l <= s.s; ++l) {
                    int d = s.d[l - 1];
                    CHECK(d == schedule_level_degree(m, n, l));
                    // m 2^(l-1) <= d^n / n! < m 2^(n+l-1), exactly
                    Integer dn = int_pow(Integer(d), static_cast<unsigned long>(n));
                    Integer lo = Integer(m) * factorial(n);
                    mpz_mul_2exp(lo.get_mpz_t(), lo.get_mpz_t(), l - 1);
                    Integer hi = lo;
                    mpz_mul_2exp(hi.get_mpz_t(), hi.get_mpz_t(), n);
                    CHECK(lo <= dn);
                    CHECK(dn < hi);
                    total += d;
                }
                CHECK(total <= D);
                CHECK(total + schedule_level_degree(m, n, s.s + 1) > D);
            }
        }
    }
}
