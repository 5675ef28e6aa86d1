#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wavescat/field_cube.hpp"
#include "wavescat/lattice.hpp"
#include "wavescat/types.hpp"

namespace wavescat {

/// Sup over aggregation subcubes of the mean absolute difference inside each:
/// sup_q (1/N_q) sum_{x_i in q} |a_i - b(x_i)|.
struct DiffReport {
    std::string pair;  // "ORI-RED", "RED-IE", "ORI-IE", or caller-chosen
    double metric = 0.0;
    std::vector<std::pair<std::int64_t, double>> per_subcube;  // (subcube id, mean abs diff)
};

/// Lattice samples against a cell field, aggregated over `agg` subcubes. The
/// comparison value for a sample is the cell field's value at the sample's
/// position. Rejects aggregation cells that contain no sample.
DiffReport diff_lattice_vs_cells(const UniformLattice& lat, const std::vector<Cplx>& u_lat, const CellField& other,
                                 const SubcubePartition& agg, std::string pair);

/// Point samples against a cell field, same construction.
DiffReport diff_points_vs_cells(const std::vector<Vec3>& points, const std::vector<Cplx>& values,
                                const CellField& other, const SubcubePartition& agg, std::string pair);

/// Original-vs-reduced difference: the partition must be the reduced grid.
DiffReport diff_ori_red(const UniformLattice& lat, const std::vector<Cplx>& u_ori, const CellField& red,
                        const SubcubePartition& part);

/// Table output convention: nearest ten-thousandth.
double round4(double v);

}  // namespace wavescat
