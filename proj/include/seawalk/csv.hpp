#pragma once

#include <charconv>
#include <fstream>
#include <string>
#include <vector>

#include "seawalk/integrator.hpp"
#include "seawalk/observables.hpp"
#include "seawalk/types.hpp"

namespace seawalk {

/// Locale-independent full-precision rendering: the shortest decimal string
/// that parses back to exactly the same double.
inline std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

inline void write_observables_csv(const std::string& path,
                                  const std::vector<ObservableRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "t_over_tau,msd,loschmidt,entropy_total,entropy_a,entropy_b,"
         "mutual_info,trace_err,leakage,energy_drift,ep_rate\n";
  for (const auto& r : rows) {
    out << format_double(r.t_over_tau) << ',' << format_double(r.msd) << ','
        << format_double(r.loschmidt) << ',' << format_double(r.entropy_total) << ','
        << format_double(r.entropy_a) << ',' << format_double(r.entropy_b) << ','
        << format_double(r.mutual_info) << ',' << format_double(r.trace_err) << ','
        << format_double(r.leakage) << ',' << format_double(r.energy_drift) << ','
        << format_double(r.ep_rate) << '\n';
  }
}

/// Long-format JPD snapshot: one row per site pair.
inline void write_jpd_csv(const std::string& path, const JpdSnapshot& snap) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "t,m,n,p\n";
  const auto n = snap.matrix.rows();
  for (Eigen::Index m = 0; m < n; ++m)
    for (Eigen::Index k = 0; k < n; ++k)
      out << format_double(snap.time) << ',' << m << ',' << k << ','
          << format_double(snap.matrix(m, k)) << '\n';
}

}  // namespace seawalk
