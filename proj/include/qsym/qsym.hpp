#pragma once

// Umbrella header.

#include "qsym/autgroup.hpp"
#include "qsym/bits.hpp"
#include "qsym/boxalg.hpp"
#include "qsym/certify.hpp"
#include "qsym/coeff.hpp"
#include "qsym/cyclotomic.hpp"
#include "qsym/diagram.hpp"
#include "qsym/errors.hpp"
#include "qsym/gf.hpp"
#include "qsym/graph.hpp"
#include "qsym/graph6.hpp"
#include "qsym/linalg.hpp"
#include "qsym/orbits.hpp"
#include "qsym/perm.hpp"
#include "qsym/rational.hpp"
#include "qsym/sha256.hpp"
#include "qsym/threading.hpp"
#include "qsym/weyl.hpp"
