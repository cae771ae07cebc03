#pragma once

#include <mutex>

namespace lmtk::detail {

// FFTW's planner is not re-entrant; every plan create/destroy in the library
// takes this lock. Executing distinct plans concurrently is safe.
std::mutex& fftw_planner_mutex();

}  // namespace lmtk::detail
