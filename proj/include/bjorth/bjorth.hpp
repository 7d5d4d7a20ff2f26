#pragma once

// Umbrella header: orthogonality deciders for complex matrices viewed as a
// Hilbert module over the matrix algebra, with certificates, approximate
// (eps-relaxed) variants, representation checks, sampling oracles, and the
// randomized property suite.

#include "bjorth/approx.hpp"
#include "bjorth/bj.hpp"
#include "bjorth/config.hpp"
#include "bjorth/eig.hpp"
#include "bjorth/errors.hpp"
#include "bjorth/gns.hpp"
#include "bjorth/hull.hpp"
#include "bjorth/linalg.hpp"
#include "bjorth/matrix.hpp"
#include "bjorth/matrix_io.hpp"
#include "bjorth/minimize.hpp"
#include "bjorth/numrange.hpp"
#include "bjorth/oracle.hpp"
#include "bjorth/rng.hpp"
#include "bjorth/suite.hpp"
#include "bjorth/svd.hpp"
