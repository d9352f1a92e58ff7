#pragma once

#include "qlag/errors.hpp"
#include "qlag/involution.hpp"
#include "qlag/laguerre.hpp"
#include "qlag/limits.hpp"
#include "qlag/marked.hpp"
#include "qlag/matchings.hpp"
#include "qlag/poly3.hpp"
#include "qlag/verify.hpp"
