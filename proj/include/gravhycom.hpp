#pragma once

#include "gravhycom/integer.hpp"
#include "gravhycom/int_matrix.hpp"
#include "gravhycom/smith.hpp"
#include "gravhycom/chain_complex.hpp"
#include "gravhycom/homology.hpp"
#include "gravhycom/permutation.hpp"
#include "gravhycom/orientation.hpp"
#include "gravhycom/cacti.hpp"
#include "gravhycom/cacti_operad.hpp"
#include "gravhycom/nested_tree.hpp"
#include "gravhycom/bar.hpp"
#include "gravhycom/moduli.hpp"
#include "gravhycom/json_io.hpp"
#include "gravhycom/verification.hpp"
