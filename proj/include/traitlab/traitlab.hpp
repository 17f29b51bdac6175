#ifndef TRAITLAB_TRAITLAB_HPP
#define TRAITLAB_TRAITLAB_HPP

#include "traitlab/containment.hpp"
#include "traitlab/enumeration.hpp"
#include "traitlab/error.hpp"
#include "traitlab/fixtures.hpp"
#include "traitlab/machine.hpp"
#include "traitlab/measures.hpp"
#include "traitlab/report.hpp"
#include "traitlab/traits.hpp"
#include "traitlab/transformers.hpp"

#endif
