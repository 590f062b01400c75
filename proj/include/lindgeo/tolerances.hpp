#pragma once

namespace lindgeo::tol {

// Linear-algebra round trips and generator identities.
inline constexpr double lin = 1e-10;
// Hermiticity of Hamiltonians and density operators.
inline constexpr double herm = 1e-10;
// Positive-semidefiniteness, relative to the matrix norm.
inline constexpr double psd = 1e-9;
// Band around Q = B inside which a dissipator is flagged as boundary.
inline constexpr double boundary = 1e-9;

}  // namespace lindgeo::tol
