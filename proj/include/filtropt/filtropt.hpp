#pragma once

#include "filtropt/anf.hpp"
#include "filtropt/common.hpp"
#include "filtropt/complexity.hpp"
#include "filtropt/cosets.hpp"
#include "filtropt/experiment.hpp"
#include "filtropt/field.hpp"
#include "filtropt/gf2_bits.hpp"
#include "filtropt/lfsr.hpp"
#include "filtropt/likelihood.hpp"
#include "filtropt/poly_table.hpp"
#include "filtropt/spectral.hpp"
