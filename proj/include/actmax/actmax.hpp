// Copyright 2026 The Authors.
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

// Umbrella header.

#pragma once

#include "actmax/alias_table.hpp"
#include "actmax/coverage.hpp"
#include "actmax/diffusion.hpp"
#include "actmax/error.hpp"
#include "actmax/experiment.hpp"
#include "actmax/graph.hpp"
#include "actmax/hypergraph.hpp"
#include "actmax/parallel.hpp"
#include "actmax/polling.hpp"
#include "actmax/random.hpp"
#include "actmax/report.hpp"
#include "actmax/selector.hpp"
#include "actmax/stopping.hpp"
