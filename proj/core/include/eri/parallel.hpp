/*
 * Copyright 2026 The ERI-Bench Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef ERI_PARALLEL_HPP_
#define ERI_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace eri {

// Runs task(i) for every i in [0, n) on up to `workers` threads. Tasks are
// handed out dynamically, so `task` must only write to state owned by index
// i. The first exception thrown by any task is rethrown after all workers
// have joined.
void parallel_for(std::size_t n, std::size_t workers,
                  const std::function<void(std::size_t)>& task);

}  // namespace eri

#endif  // ERI_PARALLEL_HPP_
