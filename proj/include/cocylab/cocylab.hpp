#pragma once

#include "cocylab/arith.hpp"
#include "cocylab/chevalley.hpp"
#include "cocylab/coeff.hpp"
#include "cocylab/cocycle.hpp"
#include "cocylab/error.hpp"
#include "cocylab/extension.hpp"
#include "cocylab/group.hpp"
#include "cocylab/io.hpp"
#include "cocylab/linalg.hpp"
#include "cocylab/quasichar.hpp"
#include "cocylab/report.hpp"
#include "cocylab/sl2.hpp"
#include "cocylab/splitcert.hpp"
#include "cocylab/steinberg.hpp"
#include "cocylab/words.hpp"
