#pragma once

#include <string>

#include "screenbem/inverse.hpp"

namespace screenbem {

// CSV exports. Column names follow the module interfaces; all numeric
// output uses %.17g so equal inputs produce byte-identical files.

void write_density_csv(const std::string& path, const Density& density);
Eigen::VectorXcd read_density_csv(const std::string& path);

void write_farfield_csv(const std::string& path, const FarField& ff);
FarField read_farfield_csv(const std::string& path, const WaveNumber& k);

void write_spectrum_csv(const std::string& path, const DiskSpectrum& spec);
void write_support_csv(const std::string& path, const SupportEstimate& est);
void write_asymptotics_csv(const std::string& path,
                           const AsymptoticsReport& report);
void write_mesh_csv(const std::string& vertex_path,
                    const std::string& triangle_path, const ScreenMesh& mesh);

/// Field samples on a caller-provided list of (x, u(x)).
void write_field_csv(const std::string& path,
                     const std::vector<std::pair<Vec3, Complex>>& samples);

}  // namespace screenbem
