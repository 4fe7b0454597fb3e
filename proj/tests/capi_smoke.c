/*
 * Copyright 2026 The dualreg Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* The public header must compile as C. */

#include <stdio.h>

#include "dualreg/dualreg.h"

int main(void) {
  dr_profile p = NULL;
  double s[4];
  if (dr_profile_create("algebraic", &p) != DR_OK) return 1;
  if (dr_profile_eval(p, 1.0, s) != DR_OK) return 1;
  dr_profile_destroy(p);
  if (dr_profile_create("none", &p) != DR_UNKNOWN_PROFILE) return 1;
  printf("%s: %s\n", dr_status_name(DR_UNKNOWN_PROFILE), dr_last_error());
  return s[0] > 0.7 && s[0] < 0.71 ? 0 : 1;
}
