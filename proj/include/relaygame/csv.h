#ifndef RELAYGAME_CSV_H_
#define RELAYGAME_CSV_H_

// Deterministic CSV I/O. Reals are written with 17 significant digits via
// std::to_chars, which round-trips doubles exactly and ignores the locale.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "relaygame/analysis.h"
#include "relaygame/game_core.h"
#include "relaygame/simulator.h"

namespace relaygame {

std::string FormatReal(double x);
// Throws std::invalid_argument on trailing garbage or overflow.
double ParseReal(std::string_view text);
long long ParseInteger(std::string_view text);

// Splits one line on commas; no quoting (numeric files never need it).
std::vector<std::string> SplitCsvLine(std::string_view line);
// Wraps free text in double quotes when it contains a comma or quote.
std::string QuoteCsvField(std::string_view text);

// Header "gamma1,gamma2,action".
void WriteSurfaceCsv(std::ostream& out, const std::vector<SurfaceRow>& rows);
std::vector<SurfaceRow> ReadSurfaceCsv(std::istream& in);

// Header "i1,i2,gamma1,gamma2,a1,a2", row-major.
void WritePolicyCsv(std::ostream& out, const Policy& policy);
Policy ReadPolicyCsv(std::istream& in);

// Header "strategy,avg_snr_db,ber,bits_per_symbol,broadcast_rate,avg_cost1,
// avg_cost2,symbols,seed".
void WriteReportsCsv(std::ostream& out,
                     const std::vector<SimulationReport>& reports);

}  // namespace relaygame

#endif  // RELAYGAME_CSV_H_
