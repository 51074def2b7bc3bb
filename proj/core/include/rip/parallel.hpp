// Copyright 2026 The RIP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>

namespace rip {

// Number of worker threads used by the batched kernels. Honors the
// RIP_THREADS environment variable when it holds a positive integer,
// otherwise std::thread::hardware_concurrency() (at least 1).
std::size_t worker_count();

// Runs body(i) for every i in [0, count). Work items are independent and each
// writes only its own outputs, so results never depend on the thread count.
// The first exception thrown by any item is rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace rip
