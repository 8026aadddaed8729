// Copyright 2026 The hetdp Authors
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

#ifndef HETDP_HETDP_HPP_
#define HETDP_HETDP_HPP_

#include "hetdp/edge_bounds.hpp"
#include "hetdp/error.hpp"
#include "hetdp/extension.hpp"
#include "hetdp/graph.hpp"
#include "hetdp/io.hpp"
#include "hetdp/oracle.hpp"
#include "hetdp/path_mechanism.hpp"
#include "hetdp/propagation.hpp"
#include "hetdp/verify.hpp"

#endif  // HETDP_HETDP_HPP_
