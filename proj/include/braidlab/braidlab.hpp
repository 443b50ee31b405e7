#pragma once

#include "braidlab/braid.hpp"
#include "braidlab/diagram.hpp"
#include "braidlab/error.hpp"
#include "braidlab/flow.hpp"
#include "braidlab/garside.hpp"
#include "braidlab/lee.hpp"
#include "braidlab/quasimorphism.hpp"
#include "braidlab/random.hpp"
#include "braidlab/rasmussen.hpp"
#include "braidlab/seifert.hpp"
#include "braidlab/version.hpp"
