#pragma once

namespace simpsonbound {

/// Serial is the reference path; Parallel uses OpenMP and must produce
/// bit-identical results.
enum class ExecutionPolicy { Serial, Parallel };

}  // namespace simpsonbound
