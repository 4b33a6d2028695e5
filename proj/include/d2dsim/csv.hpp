#pragma once

#include <string>
#include <vector>

#include "d2dsim/montecarlo.hpp"

namespace d2dsim {

/// One row of the allocation output.
struct AssignmentRow {
    std::string pair_id;
    std::string relay_id;
    double utility = 0.0;
};

/// Sweep output, one row per (variation rate, grid point):
/// variation_rate,snr_db,trials,outage_point,outage_lo,outage_hi
std::string render_outage_csv(const std::vector<OutageCurve>& curves);

/// Allocation output: pair_id,relay_id,utility
std::string render_assignment_csv(const std::vector<AssignmentRow>& rows);

/// Inverse of render_outage_csv; throws std::runtime_error on a malformed
/// header or row, naming the line.
std::vector<OutageCurve> parse_outage_csv(const std::string& text);

/// Inverse of render_assignment_csv.
std::vector<AssignmentRow> parse_assignment_csv(const std::string& text);

/// Writes text to path via a temp file and rename, so a failed write never
/// leaves a partial file behind. Throws std::runtime_error on I/O errors.
void write_file_atomic(const std::string& path, const std::string& text);

std::string read_file(const std::string& path);

} // namespace d2dsim
