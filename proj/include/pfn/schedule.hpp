#pragma once

#include <vector>

#include "pfn/rational.hpp"

namespace pfn {

/// Level degrees for a partitioning product of total degree at most D over m
/// collections in dimension n:
///   d_l = ceil((m n! 2^(l-1))^(1/n)),
/// with s maximal such that d_1 + ... + d_s <= D. Both halves of the bracket
///   m 2^(l-1) <= d_l^n / n! < m 2^(n+l-1)
/// are asserted for every emitted level; s = 0 is allowed.
struct DegreeSchedule {
    int D = 1;
    long m = 1;
    int n = 1;
    int s = 0;
    std::vector<int> d;

    long cells() const { return 1L << s; }
};

DegreeSchedule degree_schedule(int D, long m, int n);

/// d_l alone (exact integer ceiling of the n-th root).
int schedule_level_degree(long m, int n, int level);

} // namespace pfn
