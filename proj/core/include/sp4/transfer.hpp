#pragma once

// Row-to-row transfer matrices of the vertex model on a periodic chain of L
// four-state sites, with auxiliary space of dimension 4 (rep = 4, elementary
// weight R44) or 5 (rep = 5, mixed weight R54).
//
// Basis convention: a product state is indexed by its base-4 digit string
// read left to right, site 1 most significant:
//   index(d_1 .. d_L) = sum_k d_k * 4^(L-k).
//
// The transfer matrix element is the traced product of one local weight per
// site, the auxiliary index chained through all sites:
//   T[s, t] = sum_{a, b_1..b_{L-1}} prod_k R[(b_{k-1}, s_k), (b_k, t_k)],
// with b_0 = b_L = a. Matrix-free application sweeps one site at a time,
// carrying the auxiliary index alongside the partially transformed digits.

#include <sp4/algebra.hpp>

#include <cstdint>
#include <utility>

namespace sp4 {

// Largest admitted chain length; reads the environment variable SP4_MAX_L
// once (default 12). Guards against accidental exponential blowups.
int max_chain_length();

// 4^L, validated against max_chain_length().
std::size_t physical_dim(int L);

// y = T^(rep)(lambda) x, matrix-free. rep is 4 or 5. x.size() == 4^L.
void apply_transfer(int rep, int L, double lambda, const RVec& x, RVec& y);
void apply_transfer(int rep, int L, cplx lambda, const CVec& x, CVec& y);

// Dense transfer matrix via explicit monodromy accumulation; L <= 5.
RMat dense_transfer_real(int rep, int L, double lambda);
CMat dense_transfer(int rep, int L, cplx lambda);

// Untraced monodromy matrix on (auxiliary x physical), size (B 4^L)^2 with
// the auxiliary index slowest; tracing its auxiliary diagonal blocks gives
// the transfer matrix. L <= 5.
CMat dense_monodromy(int rep, int L, cplx lambda);

// Cyclic site relabeling (y)[d_1..d_L] = x[d_2..d_L d_1].
void apply_shift(int L, const RVec& x, RVec& y);
void apply_shift(int L, const CVec& x, CVec& y);

// Conserved pair of charges; single-site weights
//   digit 0 -> (+1, 0), 1 -> (0, +1), 2 -> (0, -1), 3 -> (-1, 0).
std::pair<int, int> state_charge(std::size_t state, int L);

// Zero out all amplitudes outside the (q1, q2) charge sector (in place).
void project_charge(int L, int q1, int q2, RVec& x);

// Replace x by its average over all cyclic shifts (in place).
void project_momentum_zero(int L, RVec& x);

// Number of basis states in one charge sector.
std::size_t charge_sector_dimension(int L, int q1, int q2);

// Relative max-norm commutator residual between two dense transfer matrices,
// |AB - BA|_max / max(|AB|_max, 1); L <= 5.
double transfer_commutator_residual(int rep_a, cplx lambda_a, int rep_b,
                                    cplx lambda_b, int L);

}  // namespace sp4
