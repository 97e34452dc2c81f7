#pragma once

#include <algorithm>
#include <cmath>
#include <functional>

#include <gtest/gtest.h>

#include "ergocert/error.hpp"

namespace testing_support {

/// Runs fn and returns the code of the ergo::Error it throws.
inline ergo::ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const ergo::Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an ergo::Error";
    return ergo::ErrorCode::InvalidParams;
}

/// |a - b| / max(|a|, |b|)
inline double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace testing_support
