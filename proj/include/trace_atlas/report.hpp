#pragma once

#include "trace_atlas/int_polynomial.hpp"
#include "trace_atlas/version.hpp"

#include <json.hpp>

#include <complex>
#include <cstdlib>
#include <string>

namespace trace_atlas {

using ordered_json = nlohmann::ordered_json;

namespace report {

// Exact rationals travel as strings so consumers never round them.
inline std::string rat_str(const zrat& v) {
  std::string s = numerator(v).str();
  if (denominator(v) != 1) s += "/" + denominator(v).str();
  return s;
}

inline ordered_json complex_json(std::complex<double> z) {
  return ordered_json{{"re", z.real()}, {"im", z.imag()}};
}

// Envelope shared by every subcommand.  The timestamp is included only when
// SOURCE_DATE_EPOCH pins it, keeping reports byte-identical across runs.
inline ordered_json envelope(const std::string& command, ordered_json inputs,
                             ordered_json results, ordered_json tolerances) {
  ordered_json prov;
  prov["version"] = TRACE_ATLAS_VERSION;
  if (const char* e = std::getenv("SOURCE_DATE_EPOCH")) prov["timestamp"] = e;
  prov["tolerances"] = std::move(tolerances);
  ordered_json env;
  env["command"] = command;
  env["inputs"] = std::move(inputs);
  env["results"] = std::move(results);
  env["provenance"] = std::move(prov);
  return env;
}

inline ordered_json error_json(const std::string& command, const std::string& kind,
                               const std::string& message) {
  ordered_json err;
  err["command"] = command;
  err["error"] = ordered_json{{"kind", kind}, {"message", message}};
  return err;
}

}  // namespace report
}  // namespace trace_atlas
