#pragma once

// Nearest-neighbour spin chain obtained as the logarithmic derivative of the
// elementary transfer matrix at the regular point:
//   H = sum_k h_{k,k+1} (periodic),  h = I/3 + P - E/3
// on a pair of four-state sites. The same bond operator has a closed form in
// terms of two commuting qubit families (each site split as a pair of qubits,
// digit = 2*s + t):
//   h = [ sigma.sigma + 2 (tau.tau - (1/2) tauz.tauz)
//         + (sigma.sigma)(tau.tau) + (sigma.sigma)(tauz.tauz) + 4 I ] / 6.

#include <sp4/algebra.hpp>
#include <sp4/exact.hpp>

namespace sp4 {

// 16x16 bond operator I/3 + P - E/3 (exact and floating forms).
ExactMatrix bond_hamiltonian_exact();
const RMat& bond_hamiltonian();

// The same operator assembled from two-qubit Pauli products; equal to
// bond_hamiltonian_exact() entry by entry.
ExactMatrix bond_hamiltonian_pauli_exact();

// y = H x on a periodic chain of L sites, matrix-free.
void apply_hamiltonian(int L, const RVec& x, RVec& y);

// Dense H; L <= 6.
RMat dense_hamiltonian(int L);

}  // namespace sp4
