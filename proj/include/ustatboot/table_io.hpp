#pragma once

#include <string>
#include <string_view>

#include "ustatboot/experiments.hpp"

namespace ustatboot {

/// Parses the run configuration
///   {cells: [{n, l}], reps, boot_reps, ref_reps, scheme,
///    process: {kind, phi, sd}, kernel: {name, t}, seed}
/// Omitted fields keep their defaults; l = 0 or absent means round(n^(1/3)).
/// Syntax errors report line and column, semantic errors the offending field.
[[nodiscard]] TableConfig parse_table_config(std::string_view json_text);

[[nodiscard]] std::string table_csv_header();
[[nodiscard]] std::string table_to_csv(const TableResult& table);
[[nodiscard]] std::string table_to_json(const TableResult& table);

/// Shortest decimal that round-trips.
[[nodiscard]] std::string format_double(double v);

}  // namespace ustatboot
