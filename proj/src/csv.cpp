#include "d2dsim/csv.hpp"

#include <cerrno>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace d2dsim {

namespace {

const char kOutageHeader[] = "variation_rate,snr_db,trials,outage_point,outage_lo,outage_hi";
const char kAssignmentHeader[] = "pair_id,relay_id,utility";

// %.6g keeps the files compact and diff-stable; parse-back recovers the
// printed value exactly, which is all the round-trip contract promises.
std::string fmt(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char ch : text) {
        if (ch == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

[[noreturn]] void bad_line(std::size_t lineno, const std::string& why) {
    throw std::runtime_error("csv line " + std::to_string(lineno) + ": " + why);
}

double parse_double(const std::string& s, std::size_t lineno) {
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0' || errno == ERANGE)
        bad_line(lineno, "bad number '" + s + "'");
    return v;
}

std::uint64_t parse_count(const std::string& s, std::size_t lineno) {
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0' || errno == ERANGE)
        bad_line(lineno, "bad count '" + s + "'");
    return v;
}

} // namespace

std::string render_outage_csv(const std::vector<OutageCurve>& curves) {
    std::string out = kOutageHeader;
    out += '\n';
    for (const OutageCurve& curve : curves) {
        for (const OutagePoint& pt : curve.points) {
            char trials[32];
            std::snprintf(trials, sizeof trials, "%" PRIu64, pt.trials);
            out += fmt(curve.variation_rate);
            out += ',';
            out += fmt(pt.snr_db);
            out += ',';
            out += trials;
            out += ',';
            out += fmt(pt.estimate.point);
            out += ',';
            out += fmt(pt.estimate.lo);
            out += ',';
            out += fmt(pt.estimate.hi);
            out += '\n';
        }
    }
    return out;
}

std::string render_assignment_csv(const std::vector<AssignmentRow>& rows) {
    std::string out = kAssignmentHeader;
    out += '\n';
    for (const AssignmentRow& row : rows) {
        out += row.pair_id;
        out += ',';
        out += row.relay_id;
        out += ',';
        out += fmt(row.utility);
        out += '\n';
    }
    return out;
}

std::vector<OutageCurve> parse_outage_csv(const std::string& text) {
    const std::vector<std::string> lines = split_lines(text);
    if (lines.empty() || lines[0] != kOutageHeader)
        throw std::runtime_error("csv line 1: expected header '" +
                                 std::string(kOutageHeader) + "'");
    std::vector<OutageCurve> curves;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const std::vector<std::string> f = split_fields(lines[i]);
        if (f.size() != 6) bad_line(i + 1, "expected 6 fields");
        const double rate = parse_double(f[0], i + 1);
        OutagePoint pt;
        pt.snr_db = parse_double(f[1], i + 1);
        pt.trials = parse_count(f[2], i + 1);
        pt.estimate.point = parse_double(f[3], i + 1);
        pt.estimate.lo = parse_double(f[4], i + 1);
        pt.estimate.hi = parse_double(f[5], i + 1);
        if (curves.empty() || curves.back().variation_rate != rate) {
            OutageCurve curve;
            curve.variation_rate = rate;
            curves.push_back(curve);
        }
        curves.back().points.push_back(pt);
    }
    return curves;
}

std::vector<AssignmentRow> parse_assignment_csv(const std::string& text) {
    const std::vector<std::string> lines = split_lines(text);
    if (lines.empty() || lines[0] != kAssignmentHeader)
        throw std::runtime_error("csv line 1: expected header '" +
                                 std::string(kAssignmentHeader) + "'");
    std::vector<AssignmentRow> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const std::vector<std::string> f = split_fields(lines[i]);
        if (f.size() != 3) bad_line(i + 1, "expected 3 fields");
        AssignmentRow row;
        row.pair_id = f[0];
        row.relay_id = f[1];
        row.utility = parse_double(f[2], i + 1);
        rows.push_back(row);
    }
    return rows;
}

void write_file_atomic(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open '" + tmp + "' for writing");
        f.write(text.data(), static_cast<std::streamsize>(text.size()));
        f.flush();
        if (!f) {
            std::remove(tmp.c_str());
            throw std::runtime_error("write to '" + tmp + "' failed");
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        const int err = errno;
        std::remove(tmp.c_str());
        throw std::runtime_error("cannot rename '" + tmp + "' to '" + path +
                                 "': " + std::strerror(err));
    }
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace d2dsim
