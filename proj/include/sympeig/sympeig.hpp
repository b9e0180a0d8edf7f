#pragma once

// Williamson-type symplectic diagonalization of real symmetric matrices:
// classical positive definite, positive semidefinite with symplectic
// kernel, and the eigenspace-symplectic class, with membership
// certificates and perturbation bounds on symplectic eigenvalues.

#include "sympeig/classify.hpp"
#include "sympeig/config.hpp"
#include "sympeig/generate.hpp"
#include "sympeig/matrix_io.hpp"
#include "sympeig/matrix_kernel.hpp"
#include "sympeig/perturbation.hpp"
#include "sympeig/prng.hpp"
#include "sympeig/symplectic.hpp"
#include "sympeig/williamson.hpp"
