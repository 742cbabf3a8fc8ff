// Seeded random states for property sweeps. Sampling uses only the raw
// 64-bit engine output, so streams are identical across standard libraries.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "osmp/dense.hpp"
#include "osmp/fock.hpp"

namespace osmp {

using Rng = std::mt19937_64;

double uniform01(Rng& rng);
std::uint64_t uniform_int(Rng& rng, std::uint64_t lo, std::uint64_t hi);  // inclusive
double standard_normal(Rng& rng);
Complex complex_normal(Rng& rng);

/// Random ket supported on up to `max_support` tuples with total photons <= max_total.
PureState random_pure_state(Rng& rng, std::size_t modes, std::uint64_t max_total,
                            std::size_t max_support);

FockDiagonalState random_diagonal_state(Rng& rng, std::size_t modes, std::uint64_t max_total,
                                        std::size_t max_support);

/// Random Fock basis {total photons <= a} on 1-3 modes with at most max_dim vectors.
std::vector<FockIndex> random_fock_basis(Rng& rng, std::size_t max_dim);

/// G G^dagger / tr with G a dim x rank complex Gaussian matrix.
DenseOperator random_density_operator(Rng& rng, std::vector<FockIndex> basis, std::size_t rank);

/// A ket at trace distance exactly t from psi, mixing in a random orthogonal
/// direction supported on psi's support plus `extra` (0 <= t <= 1).
PureState perturb(Rng& rng, const PureState& psi, double t, const std::vector<FockIndex>& extra);

}  // namespace osmp
