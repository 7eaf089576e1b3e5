#pragma once

#include "coposolve/instance.hpp"
#include "coposolve/matrix.hpp"
#include "coposolve/rng.hpp"

namespace coposolve {

/// Symmetric matrix with upper-triangle entries i.i.d. uniform on [-1, 1].
SymMatrix gen_stqp_instance(int n, RngStream& rng);

/// Random conic program family with known optimum 0 at x = 0: five
/// variables, c entrywise chi(1); A_0 has zeros on its first five diagonal
/// entries and chi(1) + 0.01 everywhere else; A_i pins its own diagonal
/// entry to 1, zeroes the other four, and fills the rest with standard
/// normals. Every feasible x is entrywise nonnegative, so x = 0 attains
/// the optimum. Requires n >= 5.
CoppInstance gen_copp_instance(int n, RngStream& rng);

/// B B^T for an n x k matrix B with entries |N(0,1)|; completely positive
/// by construction.
SymMatrix gen_cp_product(int n, int k, RngStream& rng);

/// Loads a matrix file for the CP tester, rejecting asymmetry beyond 1e-8
/// before symmetrizing.
SymMatrix load_cp_matrix(const std::string& path);

}  // namespace coposolve
