// Copyright 2026 The fpp Authors
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

// Everything except the dense backend, which pulls in Eigen.

#include "fpp/algorithms.hpp"
#include "fpp/circuit.hpp"
#include "fpp/commutation.hpp"
#include "fpp/errors.hpp"
#include "fpp/numsys.hpp"
#include "fpp/parallel.hpp"
#include "fpp/perm_word.hpp"
#include "fpp/perms.hpp"
#include "fpp/report_io.hpp"
