// Copyright 2026 The su4c Authors
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

#pragma once

#include "su4c/compiler.hpp"
#include "su4c/config.hpp"
#include "su4c/density.hpp"
#include "su4c/errors.hpp"
#include "su4c/experiment.hpp"
#include "su4c/gates.hpp"
#include "su4c/haar.hpp"
#include "su4c/io.hpp"
#include "su4c/linalg.hpp"
#include "su4c/pipeline.hpp"
#include "su4c/tomography.hpp"
