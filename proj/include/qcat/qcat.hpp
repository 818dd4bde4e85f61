#pragma once

#include "qcat/core.hpp"
#include "qcat/quantale.hpp"
#include "qcat/vcat.hpp"
#include "qcat/presheaf.hpp"
#include "qcat/completion.hpp"
#include "qcat/functor.hpp"
#include "qcat/distributivity.hpp"
