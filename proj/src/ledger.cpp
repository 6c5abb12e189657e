#include "dampflow/ledger.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace dampflow {

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& token, std::size_t line_no) {
    double value = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        throw std::runtime_error("ledger CSV line " + std::to_string(line_no) +
                                 ": bad numeric field '" + token + "'");
    }
    return value;
}

}  // namespace

void EnergyLedger::write_csv(std::ostream& out, const std::vector<std::string>& preamble) const {
    for (const std::string& line : preamble) out << "# " << line << '\n';
    out << kCsvHeader << '\n';
    for (const LedgerRow& row : rows_) {
        out << format_double(row.t) << ',' << format_double(row.energy) << ','
            << format_double(row.visc_cum) << ',' << format_double(row.damp_cum) << ','
            << format_double(row.residual) << ',' << row.saturation_count << '\n';
    }
}

EnergyLedger EnergyLedger::read_csv(std::istream& in) {
    EnergyLedger ledger;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            if (line != kCsvHeader) {
                throw std::runtime_error("ledger CSV line " + std::to_string(line_no) +
                                         ": unexpected header '" + line + "'");
            }
            header_seen = true;
            continue;
        }
        std::vector<std::string> tokens;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            tokens.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (tokens.size() != 6) {
            throw std::runtime_error("ledger CSV line " + std::to_string(line_no) +
                                     ": expected 6 fields, got " + std::to_string(tokens.size()));
        }
        LedgerRow row;
        row.t = parse_double(tokens[0], line_no);
        row.energy = parse_double(tokens[1], line_no);
        row.visc_cum = parse_double(tokens[2], line_no);
        row.damp_cum = parse_double(tokens[3], line_no);
        row.residual = parse_double(tokens[4], line_no);
        row.saturation_count = std::stoll(tokens[5]);
        ledger.append(row);
    }
    if (!header_seen) {
        throw std::runtime_error("ledger CSV: missing header row");
    }
    return ledger;
}

}  // namespace dampflow
