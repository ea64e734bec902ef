#ifndef MUTAD_SYMFUN_HPP
#define MUTAD_SYMFUN_HPP

#include <vector>

#include "mutad/mpoly.hpp"

namespace mutad {

// Symmetric functions in an explicit list of registry variables.
// `vars` holds registry indices; an empty list is allowed everywhere.

// e_i: sum of squarefree degree-i monomials. e_0 = 1, e_i = 0 for i > |vars|.
MPoly elementary_sym(RegistryPtr reg, int i, const std::vector<int>& vars);

// e_i evaluated on the negated variables, i.e. e_i(-x_1,...,-x_m).
MPoly elementary_sym_neg(RegistryPtr reg, int i, const std::vector<int>& vars);

// h_i: sum of all degree-i monomials. h_0 = 1; h_i(empty) = 0 for i > 0.
MPoly complete_sym(RegistryPtr reg, int i, const std::vector<int>& vars);

// prod_{i<j} (x_i - x_j)
MPoly vandermonde(RegistryPtr reg, const std::vector<int>& vars);

// Bialternant Schur polynomial for a weakly decreasing partition.
MPoly schur(RegistryPtr reg, const std::vector<long>& partition, const std::vector<int>& vars);

// Exact determinant of a square polynomial matrix. Laplace expansion with
// memoized minors up to 6x6, fraction-free elimination beyond that.
MPoly det_poly(const std::vector<std::vector<MPoly>>& mat);

// det [ x_j ^ exps_row ] where row r (top to bottom) carries exponent
// exps[n-1-r]; i.e. exps = (m_1,...,m_n) lists exponents bottom-up, so
// exps = (0,1,...,n-1) gives the Vandermonde matrix.
MPoly power_det(RegistryPtr reg, const std::vector<long>& exps, const std::vector<int>& vars);

} // namespace mutad

#endif
