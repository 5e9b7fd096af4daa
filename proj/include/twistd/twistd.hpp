#pragma once

#include "twistd/axioms.hpp"
#include "twistd/bicrossed.hpp"
#include "twistd/cochain.hpp"
#include "twistd/cohomology.hpp"
#include "twistd/corpus.hpp"
#include "twistd/exponent.hpp"
#include "twistd/group.hpp"
#include "twistd/io.hpp"
#include "twistd/phase.hpp"
#include "twistd/snf.hpp"
#include "twistd/twisted_double.hpp"
