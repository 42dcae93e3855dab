// SPDX-License-Identifier: Apache-2.0
// Umbrella header: the complete public surface of the library.
#pragma once

#include "bessel.hpp"
#include "errors.hpp"
#include "gamma.hpp"
#include "gegenbauer.hpp"
#include "green.hpp"
#include "hyp2f1.hpp"
#include "mehler_fock.hpp"
#include "quadrature.hpp"
#include "types.hpp"
