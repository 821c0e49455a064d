// Copyright 2026 The mdscorpus Authors.
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

// Resource files from data/, compiled into the library at configure time.

#ifndef MDSCORPUS_SRC_RESOURCES_H_
#define MDSCORPUS_SRC_RESOURCES_H_

#include <string_view>

namespace mdscorpus::resources {

extern const std::string_view kAbbreviations;
extern const std::string_view kBoilerplatePatterns;

}  // namespace mdscorpus::resources

#endif  // MDSCORPUS_SRC_RESOURCES_H_
