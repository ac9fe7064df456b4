#pragma once

#include <gtest/gtest.h>

#include <ostream>

#include "lacunary/error.hpp"
#include "lacunary/series.hpp"
#include "lacunary/sparse_poly.hpp"

namespace lacunary {

inline void PrintTo(const SparsePoly& p, std::ostream* os) { *os << p.str(); }
inline void PrintTo(const DensePoly& p, std::ostream* os) { *os << p.str(); }
inline void PrintTo(const TruncatedSeries& s, std::ostream* os) { *os << s.to_poly().str("y") << " + O(y^" << s.order() << ")"; }

} // namespace lacunary

namespace testutil {

template <class F>
lacunary::ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const lacunary::Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no exception";
    return lacunary::ErrorCode::Parse;
}

} // namespace testutil
