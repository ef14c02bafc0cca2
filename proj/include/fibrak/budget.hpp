#pragma once

#include <atomic>
#include <cstdint>

#include "fibrak/errors.hpp"

namespace fibrak {

/// Candidate-inspection budget for a single universal-property search.
///
/// Every exhaustive check instantiates one of these (with the process-wide
/// cap) and charges it once per candidate inspected.  Overrunning the cap
/// raises BudgetExceeded rather than silently producing a partial answer.
class Budget {
   public:
    static constexpr std::int64_t kDefaultCap = 1'000'000;

    Budget() : cap_(default_cap()) {}
    explicit Budget(std::int64_t cap) : cap_(cap) {}

    void charge(std::int64_t n = 1) {
        if ((used_ += n) > cap_) throw BudgetExceeded("universal-property search exceeded budget of " + std::to_string(cap_) + " candidates");
    }

    std::int64_t used() const { return used_.load(); }
    std::int64_t cap() const { return cap_; }

    /// Process-wide default cap; set from the CLI / FIBRAK_BUDGET env var.
    static std::int64_t default_cap();
    static void set_default_cap(std::int64_t cap);

   private:
    std::atomic<std::int64_t> used_{0};
    std::int64_t cap_;
};

}  // namespace fibrak
