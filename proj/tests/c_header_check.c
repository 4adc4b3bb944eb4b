// Copyright 2026 The cavity2sat Authors
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

/* The public header must stay valid C. */

#include "cavity2sat/cavity2sat.h"

int c2s_header_is_c(void) {
  c2s_estimate e = {0.0, 0.0, 0, 0.0, 0.0};
  return e.samples == 0 && sizeof(c2s_status) > 0;
}
