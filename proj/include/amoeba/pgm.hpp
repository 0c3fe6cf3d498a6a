#pragma once

#include <string>
#include <vector>

#include "amoeba/field.hpp"

namespace amoeba {

/// Reads a binary (P5) or ASCII (P2) PGM file, maxval <= 65535.
/// Values are kept as stored (no rescaling); spacing is set to 1.
ScalarField load_pgm(const std::string& path);

/// Writes a binary PGM (P5, maxval 255); values are clamped and rounded.
void save_pgm(const std::string& path, const ScalarField& field);

/// Writes a CSV file with a header row and 17-significant-digit values.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace amoeba
