/*
   Copyright 2026 qcrt contributors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Umbrella header.

#ifndef QCRT_QCRT_HPP
#define QCRT_QCRT_HPP

#include "qcrt/analysis.hpp"
#include "qcrt/code.hpp"
#include "qcrt/crt.hpp"
#include "qcrt/decoder.hpp"
#include "qcrt/fqmat.hpp"
#include "qcrt/gf.hpp"
#include "qcrt/gfmat.hpp"
#include "qcrt/linpoly.hpp"
#include "qcrt/rankmetric.hpp"
#include "qcrt/rng.hpp"
#include "qcrt/serialize.hpp"
#include "qcrt/sim.hpp"

#endif
