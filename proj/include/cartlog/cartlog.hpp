// Umbrella header.

#pragma once

#include "cartlog/copresheaf.hpp"
#include "cartlog/json_io.hpp"
#include "cartlog/model.hpp"
#include "cartlog/parse.hpp"
#include "cartlog/print.hpp"
#include "cartlog/proof.hpp"
#include "cartlog/search.hpp"
#include "cartlog/syncat.hpp"
#include "cartlog/syntax.hpp"
#include "cartlog/theory.hpp"
#include "cartlog/translation.hpp"
#include "cartlog/wordprob.hpp"
