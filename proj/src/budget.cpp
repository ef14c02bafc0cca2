#include "fibrak/budget.hpp"

#include <cstdlib>

namespace fibrak {

namespace {

std::int64_t initial_cap() {
    if (const char* env = std::getenv("FIBRAK_BUDGET")) {
        char* end = nullptr;
        long long v = std::strtoll(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return Budget::kDefaultCap;
}

std::atomic<std::int64_t> g_default_cap{initial_cap()};

}  // namespace

std::int64_t Budget::default_cap() { return g_default_cap.load(); }

void Budget::set_default_cap(std::int64_t cap) { g_default_cap.store(cap); }

}  // namespace fibrak
