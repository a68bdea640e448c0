#include "kacgap/tools/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "kacgap/kspectrum.hpp"

namespace kacgap::tools {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double round_significant(double v) { return std::stod(format_number(v)); }

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw std::out_of_range("csv: no column " + name);
}

double CsvTable::number(std::size_t row, const std::string& name) const {
  return std::stod(rows.at(row).at(column(name)));
}

void write_csv(std::ostream& os, const CsvTable& t) {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      os << cells[i];
    }
    os << '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  if (!std::getline(is, line)) {
    throw std::runtime_error("csv: empty input");
  }
  t.header = split(line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != t.header.size()) {
      throw std::runtime_error("csv: row width does not match header");
    }
    t.rows.push_back(std::move(cells));
  }
  return t;
}

CsvTable read_csv_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("csv: cannot open " + p.string());
  return read_csv(in);
}

CsvTable kappa_csv(int ell_lo, int ell_hi, int n_max) {
  const kspectrum::KappaTable table = kspectrum::kappa_table(n_max, ell_hi);
  CsvTable t;
  t.header = {"n", "ell", "kappa", "kappa_hat", "kappa_tilde"};
  for (int ell = ell_lo; ell <= ell_hi; ++ell) {
    for (int n = 0; n <= n_max; ++n) {
      t.rows.push_back({std::to_string(n), std::to_string(ell), format_number(table.value(n, ell)),
                        format_number(table.hat(n, ell)), format_number(table.tilde(n, ell))});
    }
  }
  return t;
}

nlohmann::json to_json(const gapbounds::SectorBound& s) {
  nlohmann::json evidence = nlohmann::json::object();
  for (const auto& [k, v] : s.evidence.items()) evidence[k] = round_significant(v);
  nlohmann::json j{{"sector", gapbounds::to_string(s.sector)},
                   {"label", s.label()},
                   {"lambda_bound", round_significant(s.lambda_bound)},
                   {"evidence", evidence}};
  j["ell"] = s.ell ? nlohmann::json(*s.ell) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const gapbounds::GapReport& r) {
  nlohmann::json sectors = nlohmann::json::array();
  for (const auto& s : r.sectors) sectors.push_back(to_json(s));
  nlohmann::json trend = nlohmann::json::array();
  for (const auto& [ell, v] : r.large_ell_trend) {
    trend.push_back({{"ell", ell}, {"lambda_bound", round_significant(v)}});
  }
  return {{"sectors", sectors},
          {"mu3", round_significant(r.mu3)},
          {"gap", round_significant(r.gap)},
          {"binding", r.binding},
          {"large_ell_trend", trend},
          {"large_ell_monotone", r.large_ell_monotone}};
}

nlohmann::json simulation_summary(const montecarlo::SimulationReport& rep) {
  nlohmann::json frames = nlohmann::json::array();
  for (double t : rep.config.frames) frames.push_back(round_significant(t));
  nlohmann::json rates = nlohmann::json::object();
  for (std::size_t k = 0; k < montecarlo::kParticles; ++k) {
    const auto& fit = rep.entropy[k].fit;
    if (fit) {
      rates[kParticleNames[k]] = {{"rate", round_significant(fit->rate)},
                                  {"points", fit->points},
                                  {"t_first", round_significant(fit->t_first)},
                                  {"t_last", round_significant(fit->t_last)}};
    } else {
      rates[kParticleNames[k]] = nullptr;
    }
  }
  return {{"alpha", rep.config.alpha},
          {"replicas", rep.config.replicas},
          {"seed", rep.config.seed},
          {"bins", rep.config.bins},
          {"initial", montecarlo::to_string(rep.config.initial)},
          {"frames", frames},
          {"entropy_floor", round_significant(montecarlo::kEntropyFloor)},
          {"decay_rates", rates}};
}

std::vector<std::filesystem::path> write_simulation(const std::filesystem::path& dir,
                                                    const montecarlo::SimulationReport& rep) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  const auto& h = rep.histograms;
  for (std::size_t f = 0; f < h.times.size(); ++f) {
    for (std::size_t k = 0; k < montecarlo::kParticles; ++k) {
      const auto& hist = h.hist[f][k];
      CsvTable t;
      t.header = {"bin_left", "bin_right", "density"};
      for (int i = 0; i < hist.bins(); ++i) {
        t.rows.push_back({format_number(hist.left(i)), format_number(hist.right(i)),
                          format_number(hist.density(i))});
      }
      char name[64];
      std::snprintf(name, sizeof name, "hist_%03zu_%s.csv", f, kParticleNames[k]);
      std::ofstream out(dir / name);
      write_csv(out, t);
      written.push_back(dir / name);
    }
  }
  CsvTable e;
  e.header = {"time", "H_sampled", "H_implied1", "H_implied2"};
  for (std::size_t f = 0; f < h.times.size(); ++f) {
    e.rows.push_back({format_number(h.times[f]), format_number(rep.entropy[0].values[f]),
                      format_number(rep.entropy[1].values[f]), format_number(rep.entropy[2].values[f])});
  }
  {
    std::ofstream out(dir / "entropy.csv");
    write_csv(out, e);
    written.push_back(dir / "entropy.csv");
  }
  {
    std::ofstream out(dir / "summary.json");
    out << simulation_summary(rep).dump(2) << '\n';
    written.push_back(dir / "summary.json");
  }
  return written;
}

}  // namespace kacgap::tools
