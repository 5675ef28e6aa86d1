#pragma once

#include <memory>
#include <vector>

#include "wavescat/fftconv.hpp"
#include "wavescat/field_cube.hpp"
#include "wavescat/lattice.hpp"
#include "wavescat/material.hpp"
#include "wavescat/solvers.hpp"

namespace wavescat {

enum class Formulation { ORI, RED, IE };
const char* to_string(Formulation f);

/// Incident plane wave e^{i k alpha . x}.
Cplx incident_field(const MaterialSpec& spec, const Vec3& x);

template <typename Real>
struct OriResult {
    UniformLattice lat;
    FieldCube<Real> u;  // effective field at the particles
    SolveReport<Real> report;
    std::shared_ptr<const SpectralKernel<Real>> sk;
};

template <typename Real>
struct CellResult {
    Formulation formulation = Formulation::RED;
    int side = 0;       // cells per axis
    double cell = 1.0;  // cell edge length
    Vec3 origin;
    std::vector<std::complex<Real>> u;  // field at cell centers, z-fastest
    SolveReport<Real> report;

    Cplx coupling;  // c_s h N |cell|^3, the representation-formula weight
    CellField field() const;
};

/// Particle system (I + c_s h a^(2-kappa) G)u = u0 at the lattice nodes,
/// solved matrix-free with COCG over the FFT convolution. The degenerate
/// single-particle lattice has an empty interaction sum and yields u = u0.
template <typename Real>
OriResult<Real> solve_ori(const UniformLattice& lat, const MaterialSpec& spec, const SolveOptions& opts = {},
                          PadMode pad = PadMode::Exact, KernelCache<Real>* cache = nullptr);

/// Reduced system over the subcube centers, coupling weighted by the cell
/// volume. The operator is applied densely (no FFT, no stored matrix) and
/// solved with restarted GMRES.
template <typename Real>
CellResult<Real> solve_red(const SubcubePartition& part, const MaterialSpec& spec, const SolveOptions& opts = {});

/// Collocation of the limiting integral equation on c_side^3 cell centers.
/// The centers form a uniform lattice, so the FFT engine is reused; a dense
/// path (solve_red on the collocation partition) exists for validation.
template <typename Real>
CellResult<Real> solve_ie(int c_side, double domain_side, Vec3 origin, const MaterialSpec& spec,
                          const SolveOptions& opts = {}, PadMode pad = PadMode::Exact,
                          KernelCache<Real>* cache = nullptr);

/// Particle charges Q_m = -c_s a^(2-kappa) h u_e(x_m).
template <typename Real>
FieldCube<Real> charges(const FieldCube<Real>& u_e, const UniformLattice& lat, const MaterialSpec& spec);

/// u(x) = u0(x) + sum_m G(x, x_m) Q_m; a particle coinciding with x is skipped.
template <typename Real>
Cplx evaluate_field(const Vec3& x, const FieldCube<Real>& q, const UniformLattice& lat, const MaterialSpec& spec);

/// evaluate_field over many points, parallel across points.
template <typename Real>
std::vector<Cplx> evaluate_field_many(const std::vector<Vec3>& points, const FieldCube<Real>& q,
                                      const UniformLattice& lat, const MaterialSpec& spec);

/// Representation-formula values of a cell solution at arbitrary points:
/// u(x) = u0(x) - coupling * sum_c G(x, x_c) u_c, skipping coincident centers.
std::vector<Cplx> cell_field_values(const std::vector<Vec3>& points, const CellField& u, Cplx coupling,
                                    const MaterialSpec& spec);

/// The 5x5x5-style report grid: tick coordinates repeated over all three axes.
std::vector<Vec3> report_grid_points(const std::vector<double>& ticks, Vec3 origin = {});

extern template struct OriResult<double>;
extern template struct OriResult<float>;
extern template struct CellResult<double>;
extern template struct CellResult<float>;
extern template OriResult<double> solve_ori<double>(const UniformLattice&, const MaterialSpec&, const SolveOptions&,
                                                    PadMode, KernelCache<double>*);
extern template OriResult<float> solve_ori<float>(const UniformLattice&, const MaterialSpec&, const SolveOptions&,
                                                  PadMode, KernelCache<float>*);
extern template CellResult<double> solve_red<double>(const SubcubePartition&, const MaterialSpec&,
                                                     const SolveOptions&);
extern template CellResult<float> solve_red<float>(const SubcubePartition&, const MaterialSpec&, const SolveOptions&);
extern template CellResult<double> solve_ie<double>(int, double, Vec3, const MaterialSpec&, const SolveOptions&,
                                                    PadMode, KernelCache<double>*);
extern template CellResult<float> solve_ie<float>(int, double, Vec3, const MaterialSpec&, const SolveOptions&,
                                                  PadMode, KernelCache<float>*);
extern template FieldCube<double> charges<double>(const FieldCube<double>&, const UniformLattice&,
                                                  const MaterialSpec&);
extern template FieldCube<float> charges<float>(const FieldCube<float>&, const UniformLattice&, const MaterialSpec&);
extern template Cplx evaluate_field<double>(const Vec3&, const FieldCube<double>&, const UniformLattice&,
                                            const MaterialSpec&);
extern template Cplx evaluate_field<float>(const Vec3&, const FieldCube<float>&, const UniformLattice&,
                                           const MaterialSpec&);
extern template std::vector<Cplx> evaluate_field_many<double>(const std::vector<Vec3>&, const FieldCube<double>&,
                                                              const UniformLattice&, const MaterialSpec&);
extern template std::vector<Cplx> evaluate_field_many<float>(const std::vector<Vec3>&, const FieldCube<float>&,
                                                             const UniformLattice&, const MaterialSpec&);

}  // namespace wavescat
