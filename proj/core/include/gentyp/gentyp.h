// Copyright 2026 The gentyp Authors
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

#ifndef GENTYP_GENTYP_H
#define GENTYP_GENTYP_H

#include "gentyp/bns.h"
#include "gentyp/channels.h"
#include "gentyp/errors.h"
#include "gentyp/qcore.h"
#include "gentyp/restriction.h"
#include "gentyp/serialization.h"
#include "gentyp/typicality.h"

#define GENTYP_VERSION_STRING "0.3.0"

#endif  // GENTYP_GENTYP_H
