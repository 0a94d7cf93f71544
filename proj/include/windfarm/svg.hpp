#pragma once

#include <string>
#include <vector>

#include "windfarm/flow_field.hpp"
#include "windfarm/grid.hpp"
#include "windfarm/solvers.hpp"
#include "windfarm/turbine.hpp"

namespace wf {

/// All emitters return the SVG document as a string; output is
/// deterministic byte-for-byte for identical inputs.

/// Farm boundary, candidate sites as dots, selected turbines as markers
/// with minimum-spacing circles of radius factor * D.
std::string plot_layout(const CandidateGrid& grid, const std::vector<int>& selected,
                        const TurbineSpec& turbine, double spacing_factor = 2.0);

/// AEP versus iteration line chart.
std::string plot_history(const std::vector<IterationRecord>& history);

/// 20-bin histogram of final densities over [0, 1].
std::string plot_density_histogram(const Eigen::VectorXd& rho);

/// Heatmap of the effective wind speed raster.
std::string plot_flow_field(const FlowField& field, const CandidateGrid& grid,
                            const std::vector<int>& selected, double v_inf);

}  // namespace wf
