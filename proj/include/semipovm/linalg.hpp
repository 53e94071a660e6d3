#pragma once
// Exact Hermitian linear algebra: the positive-semidefinite test via all
// principal minors, the induced partial order A <= B iff B-A is PSD, exact
// commutators and unitary conjugation, and certified operator-norm and
// eigenvalue enclosures built from the exact characteristic polynomial plus
// Sturm bisection.
#include "semipovm/interval.hpp"
#include "semipovm/matrix.hpp"
#include "semipovm/poly.hpp"

namespace semipovm {

// (G + G^dagger)/2. Identity on Hermitian inputs. DimensionError if G is not
// square (ComplexMatrix is square by type, so this only rejects dim 0 here).
HermitianMatrix hermitize(const ComplexMatrix& g);

// Exact determinant by fraction-exact Gaussian elimination.
ComplexRational det(const ComplexMatrix& a);

// True iff every principal minor (all 2^N - 1 of them, not only leading) is
// >= 0. For Hermitian matrices this characterizes positive semidefiniteness;
// leading minors alone do not suffice for the semidefinite case.
bool is_psd(const HermitianMatrix& a);

// True iff all leading principal minors are > 0 (Sylvester's criterion for
// positive definiteness).
bool is_pd(const HermitianMatrix& a);

// A <= B in the Loewner order, i.e. B - A is PSD. DimensionError on mismatch.
bool loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b);

// Characteristic polynomial det(xI - A) by the Faddeev-LeVerrier recurrence;
// coefficients are exactly real for Hermitian input.
RationalPoly charpoly(const HermitianMatrix& a);

// Sign of the minimum eigenvalue (-1, 0, +1), decided by Sturm root counting
// on the exact characteristic polynomial. Serves as an independent oracle
// for is_psd: is_psd(A) iff min_eigenvalue_sign(A) >= 0.
int min_eigenvalue_sign(const HermitianMatrix& a);

// Certified enclosures of the extreme eigenvalues, width <= 2^-k.
RationalInterval max_eigenvalue_bounds(const HermitianMatrix& a, unsigned k);
RationalInterval min_eigenvalue_bounds(const HermitianMatrix& a, unsigned k);

// Certified enclosure of the operator norm max(|lambda_max|, |lambda_min|),
// width <= 2^-k. Exact point interval for diagonal matrices.
RationalInterval operator_norm_bounds(const HermitianMatrix& a, unsigned k);

// AB - BA; generally not Hermitian. DimensionError on mismatch.
ComplexMatrix commutator(const HermitianMatrix& a, const HermitianMatrix& b);

// Exact unitarity test: U^dagger U == I.
bool is_unitary(const ComplexMatrix& u);

// U^dagger A U for exactly unitary U; preserves Hermiticity, trace and
// eigenvalues. ValidationError if U is not unitary, DimensionError on
// mismatch.
HermitianMatrix conjugate(const ComplexMatrix& u, const HermitianMatrix& a);

}  // namespace semipovm
