#pragma once
// Umbrella header.

#include "apply.hpp"
#include "bfile.hpp"
#include "exactnum.hpp"
#include "numquad.hpp"
#include "opalgebra.hpp"
#include "poly.hpp"
#include "serialize.hpp"
#include "verify.hpp"
