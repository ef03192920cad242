#pragma once

#include <mutex>

namespace cnls::detail {

/// Serializes FFTW planner calls, which are not thread-safe.
std::mutex& planner_mutex();

}  // namespace cnls::detail
