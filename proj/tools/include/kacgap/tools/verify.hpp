#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace kacgap::tools {

struct VerifyRow {
  std::string name;
  std::string topic;
  std::string expected;
  std::string computed;
  std::string tolerance;
  bool pass = false;
  bool statistical = false;
  std::string note;
};

struct VerifyReport {
  std::vector<VerifyRow> rows;

  bool pass() const;
  std::size_t failures() const;
};

struct VerifyOptions {
  bool quick = false;
  std::uint64_t seed = 0;
  /// Overrides the replica count of the statistical rows (1e5, or 1e4 when quick).
  std::optional<std::int64_t> replicas;
  bool include_statistical = true;
};

VerifyReport verify_all(const VerifyOptions& options = {});

void print_report(std::ostream& os, const VerifyReport& r);
nlohmann::json to_json(const VerifyReport& r);

}  // namespace kacgap::tools
