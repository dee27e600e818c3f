#include "afsmc/trace_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace afsmc {

void atomic_write(const std::filesystem::path& path,
                  const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw std::runtime_error("cannot open for writing: " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
    throw std::runtime_error("rename failed: " + path.string() + ": " +
                             ec.message());
}

void write_trace_csv(const std::filesystem::path& path,
                     const SimTrace& trace) {
  std::string out;
  out.reserve(trace.size() * 160 + 64);
  out += "t,x,xd,err,s,u,upsilon,dhat,d,K,V,fault\n";
  char line[320];
  for (std::size_t k = 0; k < trace.size(); ++k) {
    std::snprintf(line, sizeof(line),
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                  "%.17g,%.17g,%u\n",
                  trace.t[k], trace.state[k][0], trace.ref[k][0],
                  trace.error(k, 0), trace.s[k], trace.u[k], trace.upsilon[k],
                  trace.d_hat[k], trace.d_true[k], trace.gain[k],
                  trace.v_surrogate[k], static_cast<unsigned>(trace.fault[k]));
    out += line;
  }
  atomic_write(path, out);
}

void write_metrics(const std::filesystem::path& path, const Metrics& metrics) {
  std::string out;
  char line[128];
  for (const auto& [key, value] : metrics_items(metrics)) {
    std::snprintf(line, sizeof(line), "%s = %.17g\n", key.c_str(), value);
    out += line;
  }
  atomic_write(path, out);
}

}  // namespace afsmc
