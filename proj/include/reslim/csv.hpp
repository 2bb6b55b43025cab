/*
   Copyright 2026 The reslim Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef RESLIM_CSV_HPP
#define RESLIM_CSV_HPP

// RFC-4180 CSV emission: mandatory header row, CRLF line endings, UTF-8
// pass-through, 17 significant digits for doubles. Every table carries a
// schema_version column; the header strings below are frozen by tests, so
// changing a schema requires a version bump.

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

namespace reslim::csv {

namespace schema {

inline constexpr const char* kConstructVersion = "construct.v1";
inline constexpr const char* kConstructHeader =
    "schema_version,m,delta,k,x,alpha,beta,min_separation,status";

inline constexpr const char* kMdeltaVersion = "mdelta.v1";
inline constexpr const char* kMdeltaHeader =
    "schema_version,delta,mode,m_threshold,log_m_threshold,asymptote_check,status";

inline constexpr const char* kCertifyVersion = "certify.v1";
inline constexpr const char* kCertifyHeader =
    "schema_version,pattern_index,pattern_kind,s,m,interp_residual,off_support_max,construct_valid,"
    "feasibility,best_offmax,status";

inline constexpr const char* kPhaseVersion = "phase.v1";
inline constexpr const char* kPhaseHeader =
    "schema_version,m,separation,sep_times_m,trials,successes,success_rate,status";

inline constexpr const char* kFactsVersion = "facts.v1";
inline constexpr const char* kFactsHeader =
    "schema_version,m,alpha,fact1_min_margin,fact2_cot_margin,fact2_cot_ratio,fact2_csc_margin,"
    "status";

inline constexpr const char* kBoundsVersion = "bounds.v1";
inline constexpr const char* kBoundsHeader =
    "schema_version,m,delta,L_numeric,gamma_star,log_inf_z_tilde,kappa_numeric,kappa_analytic,"
    "c_delta,analytic_lower_bound,chain_L_ge_product,chain_product_ge_analytic,status";

} // namespace schema

/// Shortest round-trip-exact decimal form would be %.17g already; the
/// contract pins exactly 17 significant digits.
inline std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string fmt(long long v) { return std::to_string(v); }
inline std::string fmt(int v) { return std::to_string(v); }

inline std::string quote_if_needed(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

class Writer {
  public:
    Writer(const std::string& path, const std::string& header) : out_(path, std::ios::binary) {
        if (!out_) throw std::ios_base::failure("csv: cannot open " + path);
        out_ << header << "\r\n";
    }

    void row(const std::vector<std::string>& fields) {
        for (size_t i = 0; i < fields.size(); ++i) {
            if (i) out_ << ',';
            out_ << quote_if_needed(fields[i]);
        }
        out_ << "\r\n";
        if (!out_) throw std::ios_base::failure("csv: write failure");
    }

    void flush() { out_.flush(); }

  private:
    std::ofstream out_;
};

} // namespace reslim::csv

#endif // RESLIM_CSV_HPP
