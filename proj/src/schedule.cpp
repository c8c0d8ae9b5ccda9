#include "pfn/schedule.hpp"

#include <stdexcept>

namespace pfn {

int schedule_level_degree(long m, int n, int level) {
    if (m < 1 || n < 1 || level < 1) throw std::invalid_argument("schedule parameters");
    // target = m n! 2^(l-1); d = smallest integer with d^n >= target
    Integer target = Integer(m) * factorial(static_cast<unsigned long>(n));
    mpz_mul_2exp(target.get_mpz_t(), target.get_mpz_t(), static_cast<unsigned long>(level - 1));
    Integer root;
    int exact = mpz_root(root.get_mpz_t(), target.get_mpz_t(), static_cast<unsigned long>(n));
    Integer d = exact ? root : root + 1;
    if (!d.fits_sint_p()) throw std::overflow_error("schedule degree overflow");
    return static_cast<int>(d.get_si());
}

DegreeSchedule degree_schedule(int D, long m, int n) {
    if (D < 1 || m < 1 || n < 1) throw std::invalid_argument("schedule parameters");
    DegreeSchedule out;
    out.D = D;
    out.m = m;
    out.n = n;
    long total = 0;
    for (int level = 1;; ++level) {
        int d = schedule_level_degree(m, n, level);
        // exact bracket check: m 2^(l-1) n! <= d^n < m 2^(n+l-1) n!
        Integer dn = int_pow(Integer(d), static_cast<unsigned long>(n));
        Integer lo = Integer(m) * factorial(static_cast<unsigned long>(n));
        mpz_mul_2exp(lo.get_mpz_t(), lo.get_mpz_t(), static_cast<unsigned long>(level - 1));
        Integer hi = lo;
        mpz_mul_2exp(hi.get_mpz_t(), hi.get_mpz_t(), static_cast<unsigned long>(n));
        if (!(lo <= dn && dn < hi)) throw std::logic_error("schedule bracket violated");
        if (total + d > D) break;
        total += d;
        out.d.push_back(d);
    }
    out.s = static_cast<int>(out.d.size());
    return out;
}

} // namespace pfn
