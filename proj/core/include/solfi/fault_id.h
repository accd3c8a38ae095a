// Copyright 2026 The Solfi Authors
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

#ifndef SOLFI_FAULT_ID_H_
#define SOLFI_FAULT_ID_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace solfi {

// Defect identifiers in defect-classification table order.
enum class FaultId {
  A_MISP,
  A_MILV,
  A_MISV,
  A_MC,
  A_MCV,
  A_WVAE,
  A_WIS,
  A_WIT,
  A_WVATMD,
  A_WVAA,
  A_WCN,
  A_WVT,
  A_WDISV,
  A_WVN,
  CH_MRTS,
  CH_MRIV,
  CH_MROTS,
  CH_MROIV,
  CH_MRATS,
  CH_MRAIV,
  CH_MCHGL,
  CH_MCHAO,
  CH_MCHSF,
  CH_WRA,
  I_MVMSV,
  I_MFVM,
  I_WVPF,
  AL_MITSS,
  AL_MIIVS,
  AL_WRAR,
  AL_WEH,
  AL_ECSWS,
  F_MWF,
  F_MINHERITANCE,
  F_WIO,
  F_EINHERITANCE,
};

inline constexpr std::size_t kFaultCount = 36;

enum class DefectClass { Assignment, Checking, Interface, Algorithm, Function };
enum class DefectNature { Missing, Wrong, Extraneous };

const std::array<FaultId, kFaultCount>& AllFaults();

std::string_view FaultName(FaultId id);
std::string_view DefectClassName(DefectClass c);
std::string_view DefectNatureName(DefectNature n);

// Accepts canonical names plus the alias A_MIT for A_WIT.
std::optional<FaultId> ParseFaultId(std::string_view name);

DefectClass ClassOf(FaultId id);
DefectNature NatureOf(FaultId id);

// Human-readable defect name, e.g. "Integer Truncation (WIT)".
std::string_view DefectName(FaultId id);

}  // namespace solfi

#endif  // SOLFI_FAULT_ID_H_
