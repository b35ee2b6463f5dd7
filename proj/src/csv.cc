#include "relaygame/csv.h"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <system_error>

namespace relaygame {
namespace {

std::vector<std::vector<std::string>> ReadRows(std::istream& in,
                                               std::string_view header) {
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw std::invalid_argument("expected CSV header '" + std::string(header) +
                                "'");
  }
  const std::size_t columns = SplitCsvLine(header).size();
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = SplitCsvLine(line);
    if (fields.size() != columns) {
      throw std::invalid_argument("CSV row has " +
                                  std::to_string(fields.size()) +
                                  " fields, expected " +
                                  std::to_string(columns));
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

constexpr std::string_view kSurfaceHeader = "gamma1,gamma2,action";
constexpr std::string_view kPolicyHeader = "i1,i2,gamma1,gamma2,a1,a2";

}  // namespace

std::string FormatReal(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double ParseReal(std::string_view text) {
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("not a real number: '" + std::string(text) + "'");
  }
  return value;
}

long long ParseInteger(std::string_view text) {
  long long value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string> SplitCsvLine(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string QuoteCsvField(std::string_view text) {
  if (text.find_first_of(",\"\n") == std::string_view::npos) {
    return std::string(text);
  }
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void WriteSurfaceCsv(std::ostream& out, const std::vector<SurfaceRow>& rows) {
  out << kSurfaceHeader << '\n';
  for (const SurfaceRow& r : rows) {
    out << FormatReal(r.gamma1) << ',' << FormatReal(r.gamma2) << ','
        << r.action << '\n';
  }
}

std::vector<SurfaceRow> ReadSurfaceCsv(std::istream& in) {
  std::vector<SurfaceRow> out;
  for (const auto& f : ReadRows(in, kSurfaceHeader)) {
    out.push_back({ParseReal(f[0]), ParseReal(f[1]),
                   static_cast<int>(ParseInteger(f[2]))});
  }
  return out;
}

void WritePolicyCsv(std::ostream& out, const Policy& policy) {
  const SnrGrid& grid = policy.grid();
  out << kPolicyHeader << '\n';
  for (std::size_t k = 0; k < grid.num_points(); ++k) {
    const GridIndex idx = grid.Unflat(k);
    const SnrVector snr = grid.At(idx);
    const ActionProfile& a = policy.at(idx);
    out << idx.i1 << ',' << idx.i2 << ',' << FormatReal(snr.gamma1) << ','
        << FormatReal(snr.gamma2) << ',' << a.a1 << ',' << a.a2 << '\n';
  }
}

Policy ReadPolicyCsv(std::istream& in) {
  const auto rows = ReadRows(in, kPolicyHeader);
  if (rows.empty()) throw std::invalid_argument("policy CSV has no rows");
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  for (const auto& f : rows) {
    n1 = std::max<std::size_t>(n1, ParseInteger(f[0]) + 1);
    n2 = std::max<std::size_t>(n2, ParseInteger(f[1]) + 1);
  }
  if (n1 * n2 != rows.size()) {
    throw std::invalid_argument("policy CSV does not cover a full grid");
  }
  std::vector<double> levels1(n1, 0.0), levels2(n2, 0.0);
  std::vector<ActionProfile> table(rows.size());
  std::vector<bool> seen(rows.size(), false);
  for (const auto& f : rows) {
    const long long i1 = ParseInteger(f[0]);
    const long long i2 = ParseInteger(f[1]);
    if (i1 < 0 || i2 < 0) throw std::invalid_argument("negative grid index");
    const std::size_t flat = static_cast<std::size_t>(i1) * n2 + i2;
    if (seen[flat]) throw std::invalid_argument("duplicate grid point in CSV");
    seen[flat] = true;
    levels1[i1] = ParseReal(f[2]);
    levels2[i2] = ParseReal(f[3]);
    table[flat] = {static_cast<int>(ParseInteger(f[4])),
                   static_cast<int>(ParseInteger(f[5]))};
  }
  return Policy(SnrGrid(std::move(levels1), std::move(levels2)),
                std::move(table));
}

void WriteReportsCsv(std::ostream& out,
                     const std::vector<SimulationReport>& reports) {
  out << "strategy,avg_snr_db,ber,bits_per_symbol,broadcast_rate,avg_cost1,"
         "avg_cost2,symbols,seed\n";
  for (const SimulationReport& r : reports) {
    out << r.strategy << ',' << FormatReal(r.avg_snr_db) << ','
        << FormatReal(r.ber) << ',' << FormatReal(r.bits_per_symbol) << ','
        << FormatReal(r.broadcast_rate) << ',' << FormatReal(r.avg_cost1)
        << ',' << FormatReal(r.avg_cost2) << ',' << r.symbols << ',' << r.seed
        << '\n';
  }
}

}  // namespace relaygame
