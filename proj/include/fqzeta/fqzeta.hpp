#pragma once

#include "fqzeta/fq.hpp"
#include "fqzeta/apoly.hpp"
#include "fqzeta/ratk.hpp"
#include "fqzeta/mpoly.hpp"
#include "fqzeta/serialize.hpp"
#include "fqzeta/fp_linalg.hpp"
#include "fqzeta/powersums.hpp"
#include "fqzeta/hyperderiv.hpp"
#include "fqzeta/shuffle.hpp"
#include "fqzeta/zeta.hpp"
