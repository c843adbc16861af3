#pragma once

#include "kirby/errors.hpp"
#include "kirby/matrix.hpp"
#include "kirby/algebra.hpp"
#include "kirby/grid.hpp"
#include "kirby/handlebody.hpp"
#include "kirby/stein.hpp"
#include "kirby/moves.hpp"
#include "kirby/adjunction.hpp"
#include "kirby/catalog.hpp"
#include "kirby/compare.hpp"
#include "kirby/document.hpp"
#include "kirby/report.hpp"
