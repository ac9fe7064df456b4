#pragma once

#include <cstddef>

namespace lacunary {

/// Guards shared by every expanding operation. Exceeding one is a reported
/// error, never a silent truncation.
struct Limits {
    std::size_t term_cap = 1'000'000;
    std::size_t dense_cap = std::size_t{1} << 16;
};

} // namespace lacunary
