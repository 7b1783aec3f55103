// entdist.hpp — umbrella header.

#pragma once

#include "entdist/eig.hpp"
#include "entdist/families.hpp"
#include "entdist/gellmann.hpp"
#include "entdist/io.hpp"
#include "entdist/measure.hpp"
#include "entdist/random.hpp"
#include "entdist/roof.hpp"
#include "entdist/tensor.hpp"
