#pragma once

#include "padicframe/rational.hpp"
#include "padicframe/padic.hpp"
#include "padicframe/cyclotomic.hpp"
#include "padicframe/wavelet.hpp"
#include "padicframe/affine.hpp"
#include "padicframe/frame.hpp"
#include "padicframe/mra.hpp"
#include "padicframe/random.hpp"
#include "padicframe/serialize.hpp"
