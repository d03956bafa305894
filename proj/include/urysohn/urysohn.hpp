// Copyright 2026 The urysohn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "urysohn/amalgamation.hpp"
#include "urysohn/approximation.hpp"
#include "urysohn/distance_set.hpp"
#include "urysohn/error.hpp"
#include "urysohn/fixtures.hpp"
#include "urysohn/four_values.hpp"
#include "urysohn/fraisse.hpp"
#include "urysohn/linear.hpp"
#include "urysohn/metric_space.hpp"
#include "urysohn/rational.hpp"
#include "urysohn/setexpr.hpp"
