#pragma once

#include "mixmean/combinatorics.hpp"
#include "mixmean/enclosure.hpp"
#include "mixmean/error.hpp"
#include "mixmean/inequality.hpp"
#include "mixmean/io.hpp"
#include "mixmean/lemma.hpp"
#include "mixmean/matrix.hpp"
#include "mixmean/means.hpp"
#include "mixmean/oracle.hpp"
#include "mixmean/rational.hpp"
#include "mixmean/subset.hpp"
