#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dampflow {

/// One sampled row of the discrete energy balance
///   E(t) + visc_cum + damp_cum = E(0) - residual
/// with visc_cum = 2*nu*int ||grad u||^2 and damp_cum = 2*a*int of the
/// damping dissipation, both accumulated with the stepper's own quadrature.
struct LedgerRow {
    double t = 0.0;
    double energy = 0.0;
    double visc_cum = 0.0;
    double damp_cum = 0.0;
    double residual = 0.0;
    long long saturation_count = 0;
};

class EnergyLedger {
  public:
    static constexpr const char* kCsvHeader = "t,energy,visc_cum,damp_cum,residual,saturation_count";

    void append(const LedgerRow& row) { rows_.push_back(row); }
    const std::vector<LedgerRow>& rows() const noexcept { return rows_; }
    bool empty() const noexcept { return rows_.empty(); }

    /// Writes `# key = value` preamble lines (the echoed config), the fixed
    /// header row, then one row per line with round-trip-exact doubles.
    void write_csv(std::ostream& out, const std::vector<std::string>& preamble = {}) const;
    static EnergyLedger read_csv(std::istream& in);

  private:
    std::vector<LedgerRow> rows_;
};

}  // namespace dampflow
