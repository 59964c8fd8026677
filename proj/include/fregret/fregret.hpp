// Copyright 2026 The fregret Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FREGRET_FREGRET_HPP
#define FREGRET_FREGRET_HPP

#include "fregret/cfr.hpp"
#include "fregret/error.hpp"
#include "fregret/estimator.hpp"
#include "fregret/eval.hpp"
#include "fregret/features.hpp"
#include "fregret/game.hpp"
#include "fregret/games.hpp"
#include "fregret/io.hpp"
#include "fregret/rcfr.hpp"
#include "fregret/regret.hpp"

#endif  // FREGRET_FREGRET_HPP
