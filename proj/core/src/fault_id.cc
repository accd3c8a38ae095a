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

#include "solfi/fault_id.h"

namespace solfi {
namespace {

struct FaultInfo {
  FaultId id;
  std::string_view name;
  DefectClass cls;
  DefectNature nature;
  std::string_view defect;
};

using C = DefectClass;
using N = DefectNature;

constexpr FaultInfo kInfo[kFaultCount] = {
    {FaultId::A_MISP, "A_MISP", C::Assignment, N::Missing,
     "Initialization of Storage Variables/Pointers (MISP)"},
    {FaultId::A_MILV, "A_MILV", C::Assignment, N::Missing,
     "Initialization of Local Variable (MILV)"},
    {FaultId::A_MISV, "A_MISV", C::Assignment, N::Missing,
     "Initialization of State Variables (MISV)"},
    {FaultId::A_MC, "A_MC", C::Assignment, N::Missing, "Constructor (MC)"},
    {FaultId::A_MCV, "A_MCV", C::Assignment, N::Missing,
     "Compiler Version (MCV)"},
    {FaultId::A_WVAE, "A_WVAE", C::Assignment, N::Wrong,
     "Arithmetic Expression Used In Assignment (WVAE)"},
    {FaultId::A_WIS, "A_WIS", C::Assignment, N::Wrong, "Integer Sign (WIS)"},
    {FaultId::A_WIT, "A_WIT", C::Assignment, N::Wrong,
     "Integer Truncation (WIT)"},
    {FaultId::A_WVATMD, "A_WVATMD", C::Assignment, N::Wrong,
     "Value Assignment With Too Many Digits (WVATMD)"},
    {FaultId::A_WVAA, "A_WVAA", C::Assignment, N::Wrong,
     "Value Assigned To Contract Address (WVAA)"},
    {FaultId::A_WCN, "A_WCN", C::Assignment, N::Wrong,
     "Constructor Name (WCN)"},
    {FaultId::A_WVT, "A_WVT", C::Assignment, N::Wrong,
     "Variable Type (WVT)"},
    {FaultId::A_WDISV, "A_WDISV", C::Assignment, N::Wrong,
     "Declaration Of Invariant State Variable (WDISV)"},
    {FaultId::A_WVN, "A_WVN", C::Assignment, N::Wrong,
     "Variable Name, Variable Shadowing (WVN)"},
    {FaultId::CH_MRTS, "CH_MRTS", C::Checking, N::Missing,
     "\"require\" On Transaction Sender (MRTS)"},
    {FaultId::CH_MRIV, "CH_MRIV", C::Checking, N::Missing,
     "\"require\" On Input Variable(s) (MRIV)"},
    {FaultId::CH_MROTS, "CH_MROTS", C::Checking, N::Missing,
     "\"require\" OR Subexpression On Transaction Sender (MROTS)"},
    {FaultId::CH_MROIV, "CH_MROIV", C::Checking, N::Missing,
     "\"require\" OR Subexpression On Input Variable(s) (MROIV)"},
    {FaultId::CH_MRATS, "CH_MRATS", C::Checking, N::Missing,
     "\"require\" AND Subexpression On Transaction Sender (MRATS)"},
    {FaultId::CH_MRAIV, "CH_MRAIV", C::Checking, N::Missing,
     "\"require\" AND Subexpression On Input Variable(s) (MRAIV)"},
    {FaultId::CH_MCHGL, "CH_MCHGL", C::Checking, N::Missing,
     "Check On Gas Limit (MCHGL)"},
    {FaultId::CH_MCHAO, "CH_MCHAO", C::Checking, N::Missing,
     "Check On Arithmetic Operation (MCHAO)"},
    {FaultId::CH_MCHSF, "CH_MCHSF", C::Checking, N::Missing,
     "Check On Suicide Functionality (MCHSF)"},
    {FaultId::CH_WRA, "CH_WRA", C::Checking, N::Wrong,
     "\"require\" For Authorization, Authorization Through tx.origin (WRA)"},
    {FaultId::I_MVMSV, "I_MVMSV", C::Interface, N::Missing,
     "Visibility modifier of state variables (MVMSV)"},
    {FaultId::I_MFVM, "I_MFVM", C::Interface, N::Missing,
     "Function Visibility Modifier (MFVM)"},
    {FaultId::I_WVPF, "I_WVPF", C::Interface, N::Wrong,
     "Visibility (public) for private/internal function (WVPF)"},
    {FaultId::AL_MITSS, "AL_MITSS", C::Algorithm, N::Missing,
     "\"if\" construct on transaction sender plus statements (MITSS)"},
    {FaultId::AL_MIIVS, "AL_MIIVS", C::Algorithm, N::Missing,
     "\"if\" construct on input variable(s) plus statements (MIIVS)"},
    {FaultId::AL_WRAR, "AL_WRAR", C::Algorithm, N::Wrong,
     "Use of require, assert, and revert (WRAR)"},
    {FaultId::AL_WEH, "AL_WEH", C::Algorithm, N::Wrong,
     "Exception Handling (WEH)"},
    {FaultId::AL_ECSWS, "AL_ECSWS", C::Algorithm, N::Extraneous,
     "Continue-statements in do-while-statements or for (ECSWS)"},
    {FaultId::F_MWF, "F_MWF", C::Function, N::Missing,
     "Withdraw function (MWF)"},
    {FaultId::F_MINHERITANCE, "F_MINHERITANCE", C::Function, N::Missing,
     "Inheritance (MINHERITANCE)"},
    {FaultId::F_WIO, "F_WIO", C::Function, N::Wrong,
     "Inheritance and inheritance Order (WIO)"},
    {FaultId::F_EINHERITANCE, "F_EINHERITANCE", C::Function, N::Extraneous,
     "Inheritance (EINHERITANCE)"},
};

const FaultInfo& Info(FaultId id) { return kInfo[static_cast<int>(id)]; }

}  // namespace

const std::array<FaultId, kFaultCount>& AllFaults() {
  static const auto* all = [] {
    auto* a = new std::array<FaultId, kFaultCount>;
    for (std::size_t i = 0; i < kFaultCount; ++i) (*a)[i] = kInfo[i].id;
    return a;
  }();
  return *all;
}

std::string_view FaultName(FaultId id) { return Info(id).name; }
DefectClass ClassOf(FaultId id) { return Info(id).cls; }
DefectNature NatureOf(FaultId id) { return Info(id).nature; }
std::string_view DefectName(FaultId id) { return Info(id).defect; }

std::string_view DefectClassName(DefectClass c) {
  switch (c) {
    case DefectClass::Assignment: return "Assignment";
    case DefectClass::Checking: return "Checking";
    case DefectClass::Interface: return "Interface";
    case DefectClass::Algorithm: return "Algorithm";
    case DefectClass::Function: return "Function";
  }
  return "";
}

std::string_view DefectNatureName(DefectNature n) {
  switch (n) {
    case DefectNature::Missing: return "Missing";
    case DefectNature::Wrong: return "Wrong";
    case DefectNature::Extraneous: return "Extraneous";
  }
  return "";
}

std::optional<FaultId> ParseFaultId(std::string_view name) {
  if (name == "A_MIT") return FaultId::A_WIT;
  for (const auto& info : kInfo) {
    if (info.name == name) return info.id;
  }
  return std::nullopt;
}

}  // namespace solfi
