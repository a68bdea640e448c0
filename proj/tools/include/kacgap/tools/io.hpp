#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "kacgap/gapbounds.hpp"
#include "kacgap/montecarlo.hpp"

namespace kacgap::tools {

/// 12 significant digits, the precision used for every emitted number.
std::string format_number(double v);
double round_significant(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column; throws std::out_of_range.
  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
};

void write_csv(std::ostream& os, const CsvTable& t);
/// Plain comma-separated parser (no quoting); every row must match the header width.
CsvTable read_csv(std::istream& is);
CsvTable read_csv_file(const std::filesystem::path& p);

/// n,ell,kappa,kappa_hat,kappa_tilde for ell in [ell_lo, ell_hi], n in [0, n_max].
CsvTable kappa_csv(int ell_lo, int ell_hi, int n_max);

nlohmann::json to_json(const gapbounds::SectorBound& s);
nlohmann::json to_json(const gapbounds::GapReport& r);

/// Writes hist_<frame>_<particle>.csv per frame and particle, entropy.csv and
/// summary.json into dir (created if needed). Returns the files written.
std::vector<std::filesystem::path> write_simulation(const std::filesystem::path& dir,
                                                    const montecarlo::SimulationReport& rep);

nlohmann::json simulation_summary(const montecarlo::SimulationReport& rep);

inline constexpr const char* kParticleNames[] = {"sampled", "implied1", "implied2"};

}  // namespace kacgap::tools
