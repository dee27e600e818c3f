#pragma once

#include <filesystem>
#include <string>

#include "afsmc/sim.hpp"

namespace afsmc {

/// Writes content to a temporary sibling and renames it into place, so a
/// partially written file is never observed under the final name.
void atomic_write(const std::filesystem::path& path,
                  const std::string& content);

/// Controller-rate trace, fixed column order:
/// t,x,xd,err,s,u,upsilon,dhat,d,K,V,fault
void write_trace_csv(const std::filesystem::path& path, const SimTrace& trace);

/// Flat key = value document.
void write_metrics(const std::filesystem::path& path, const Metrics& metrics);

}  // namespace afsmc
