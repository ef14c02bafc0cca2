#pragma once

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fibrak {

/// Whether parallel verification sweeps are enabled.  FIBRAK_SERIAL=1 forces
/// the serial path everywhere (useful when tracking a nondeterminism bug,
/// though results are identical either way: parallel loops are only used for
/// order-independent all-quantified sweeps, never for least-witness search).
inline bool parallel_enabled() {
#ifdef _OPENMP
    static const bool on = [] {
        const char* env = std::getenv("FIBRAK_SERIAL");
        return !(env && env[0] == '1');
    }();
    return on;
#else
    return false;
#endif
}

}  // namespace fibrak
