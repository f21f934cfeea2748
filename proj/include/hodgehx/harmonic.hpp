#ifndef HODGEHX_HARMONIC_HPP
#define HODGEHX_HARMONIC_HPP

#include <cstdint>
#include <vector>

#include "hodgehx/fespace.hpp"
#include "hodgehx/krylov.hpp"
#include "hodgehx/operators.hpp"
#include "hodgehx/rng.hpp"

namespace hodgehx {

// Mixed formulation of the Hodge-Laplace problem on the field space:
// unknowns (sigma, u) with sigma the scalar potential, coupled through
//   [[ M0, (M1 G)^T ],
//    [ M1 G,   -K   ]].
// The kernel of this operator is {0} x {discrete harmonic fields}.
struct HodgeSaddleSystem {
  Family family;
  int n_scalar = 0;
  int n_field = 0;
  CsrMatrix matrix;
  CsrMatrix mass_scalar;
  CsrMatrix mass_field;
  CsrMatrix stiffness;
  CsrMatrix dminus;
  CsrMatrix gram;  // mass_field + stiffness, the natural field inner product
};

HodgeSaddleSystem assemble_hodge_saddle(const SurfaceMesh& mesh, Family family);

struct HarmonicBasis {
  // Orthonormal in the gram inner product, one per kernel slot.
  std::vector<std::vector<double>> fields;
  std::vector<SolveReport> reports;  // the accepted solve for each slot
  int attempts = 0;                  // total singular solves run
};

// Extracts n_fields gram-orthonormal discrete harmonic fields by running the
// singular iteration on random right-hand sides and orthogonalizing the
// returned kernel vectors. Retries a slot on a dependent sample; throws
// RankDeficientSamplingError after five failures on one slot.
HarmonicBasis compute_harmonic_basis(const HodgeSaddleSystem& sys,
                                     const LinearOperator& precond, int n_fields,
                                     double tol = 1e-6, std::uint64_t seed = kDefaultSeed,
                                     int max_iterations = 2000);

}  // namespace hodgehx

#endif
