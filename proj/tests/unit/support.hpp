#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

#include "plasti/scalar.hpp"

namespace test {

/// Per-test base seed, mixed with PLASTI_SEED when set.
inline std::uint64_t seed(std::uint64_t base)
{
    if (const char* s = std::getenv("PLASTI_SEED")) {
        return base ^ std::strtoull(s, nullptr, 10);
    }
    return base;
}

inline std::string data(const std::string& name) { return std::string(PLASTI_DATA_DIR) + "/" + name; }

inline plasti::Scalar q(long n, long d = 1) { return plasti::Scalar(n, d); }

}  // namespace test
