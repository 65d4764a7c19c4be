#pragma once

#include <cmath>
#include <stdexcept>

namespace irs_sense {

// All internal computation uses linear milliwatt / linear-gain units.
// dB and dBm appear only at configuration boundaries.

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

inline double mw_to_dbm(double mw) {
    if (mw <= 0.0) throw std::invalid_argument("mw_to_dbm: power must be positive");
    return 10.0 * std::log10(mw);
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double v) {
    if (v <= 0.0) throw std::invalid_argument("linear_to_db: value must be positive");
    return 10.0 * std::log10(v);
}

}  // namespace irs_sense
