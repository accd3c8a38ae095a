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

#include "solfi/workload.h"

#include <algorithm>
#include <set>

#include <spdlog/spdlog.h>

#include "io_util.h"
#include "json.hpp"
#include "keyed_rng.h"
#include "solfi/error.h"

namespace solfi {
namespace {

using nlohmann::json;
using K = SolType::Kind;

Value Make(auto v) { return Value{std::move(v)}; }

Bytes Repeat(std::uint8_t byte, std::size_t n) { return Bytes(n, byte); }

bool IsPublic(const AstNode& fn) {
  const auto& v = fn.Attr(attr::kVisibility);
  return v == "public" || v == "external" || v == kNone;
}

std::vector<const AstNode*> InheritanceChain(const AstNode& unit,
                                             const AstNode& main) {
  std::set<std::string, std::less<>> names = {main.Attr(attr::kName)};
  std::vector<const AstNode*> todo = {&main};
  while (!todo.empty()) {
    const AstNode* c = todo.back();
    todo.pop_back();
    for (const auto& child : c->children) {
      if (child->kind != NodeKind::InheritanceSpecifier) continue;
      if (!names.insert(child->Attr(attr::kName)).second) continue;
      for (const auto& other : unit.children) {
        if (other->kind == NodeKind::ContractDefinition &&
            other->Attr(attr::kName) == child->Attr(attr::kName)) {
          todo.push_back(other.get());
        }
      }
    }
  }
  std::vector<const AstNode*> chain;
  for (const auto& c : unit.children) {
    if (c->kind == NodeKind::ContractDefinition &&
        names.count(c->Attr(attr::kName))) {
      chain.push_back(c.get());
    }
  }
  return chain;
}

std::vector<ParamSpec> Params(const AstNode& list) {
  std::vector<ParamSpec> params;
  for (const auto& p : list.children) {
    params.push_back({p->Attr(attr::kName), TypeFromAst(*p->child(0)),
                      p->Attr(attr::kStorageLocation)});
  }
  return params;
}

struct Target {
  FunctionSignature signature;
  const AstNode* node;
};

std::vector<Target> Targets(const AstNode& unit,
                            std::vector<std::string>* skipped) {
  std::vector<Target> targets;
  const AstNode* main = MainContract(unit);
  if (main == nullptr) return targets;
  for (const AstNode* contract : InheritanceChain(unit, *main)) {
    for (const auto& member : contract->children) {
      const AstNode& fn = *member;
      if (fn.kind != NodeKind::FunctionDefinition || !IsPublic(fn) ||
          fn.Attr(attr::kName).empty() ||
          fn.Attr(attr::kName) == contract->Attr(attr::kName)) {
        continue;
      }
      FunctionSignature sig;
      sig.name = fn.Attr(attr::kName);
      sig.visibility = fn.Attr(attr::kVisibility);
      sig.payable = fn.Attr(attr::kStateMutability) == "payable";
      try {
        sig.params = Params(*fn.child(0));
      } catch (const UnsupportedType& e) {
        spdlog::warn("skipping {}: {}", sig.name, e.what());
        if (skipped != nullptr) skipped->push_back(sig.name);
        continue;
      }
      std::string canonical = sig.Canonical();
      bool overridden = std::any_of(
          targets.begin(), targets.end(),
          [&](const Target& t) { return t.signature.Canonical() == canonical; });
      if (!overridden) targets.push_back({std::move(sig), &fn});
    }
  }
  return targets;
}

const AstNode* ConstructorOf(const AstNode& contract) {
  for (const auto& member : contract.children) {
    if (member->kind == NodeKind::ConstructorDefinition ||
        (member->kind == NodeKind::FunctionDefinition &&
         member->Attr(attr::kName) == contract.Attr(attr::kName))) {
      return member.get();
    }
  }
  return nullptr;
}

Value RandomValue(const SolType& type, KeyedRng& rng) {
  switch (type.kind) {
    case K::Bool: return Make((rng.Next() & 1) != 0);
    case K::Int: {
      BigInt v = rng.Bits(type.size);
      if (type.is_signed && v > MaxOf(type)) v -= BigInt(1) << type.size;
      return Make(v);
    }
    case K::Address:
    case K::FixedBytes:
    case K::Bytes: {
      std::size_t n = type.kind == K::Address  ? 20
                      : type.kind == K::Bytes ? rng.Below(65)
                                              : static_cast<std::size_t>(type.size);
      Bytes b(n);
      for (auto& byte : b) byte = static_cast<std::uint8_t>(rng.Next());
      return Make(std::move(b));
    }
    case K::String: {
      std::string s(rng.Below(65), ' ');
      for (auto& c : s) c = static_cast<char>(0x20 + rng.Below(95));
      return Make(std::move(s));
    }
    case K::Array: {
      std::size_t n = type.length ? *type.length : rng.Below(9);
      std::vector<Value> elems;
      for (std::size_t i = 0; i < n; ++i) {
        elems.push_back(RandomValue(type.element[0], rng));
      }
      return Make(std::move(elems));
    }
  }
  return {};
}

std::optional<BigInt> Subdenomination(std::string_view unit) {
  static const std::pair<std::string_view, const char*> kUnits[] = {
      {"wei", "1"},
      {"gwei", "1000000000"},
      {"szabo", "1000000000000"},
      {"finney", "1000000000000000"},
      {"ether", "1000000000000000000"},
      {"seconds", "1"},
      {"minutes", "60"},
      {"hours", "3600"},
      {"days", "86400"},
      {"weeks", "604800"},
      {"years", "31536000"},
  };
  if (unit.empty()) return BigInt(1);
  for (const auto& [name, factor] : kUnits) {
    if (name == unit) return BigInt(factor);
  }
  return std::nullopt;
}

bool AllDigits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(),
                                   [](char c) { return c >= '0' && c <= '9'; });
}

// Integer value of a decimal literal: digits, optionally with an integer
// exponent. Fractions are not supported.
std::optional<BigInt> DecimalValue(const std::string& text,
                                   std::string_view unit) {
  auto factor = Subdenomination(unit);
  if (!factor) return std::nullopt;
  auto e = text.find_first_of("eE");
  std::string mantissa = text.substr(0, e);
  if (!AllDigits(mantissa)) return std::nullopt;
  BigInt value(mantissa);
  if (e != std::string::npos) {
    std::string exponent = text.substr(e + 1);
    if (!AllDigits(exponent) || exponent.size() > 3) return std::nullopt;
    for (int i = std::stoi(exponent); i > 0; --i) value *= 10;
  }
  return value * *factor;
}

std::string Unquote(const std::string& literal) {
  std::string out;
  for (std::size_t i = 1; i + 1 < literal.size(); ++i) {
    char c = literal[i];
    if (c != '\\' || i + 2 >= literal.size()) {
      out += c;
      continue;
    }
    char next = literal[++i];
    switch (next) {
      case 'n': out += '\n'; break;
      case 't': out += '\t'; break;
      case 'r': out += '\r'; break;
      case 'x':
        if (i + 2 < literal.size()) {
          out += static_cast<char>(std::stoi(literal.substr(i + 1, 2), nullptr, 16));
          i += 2;
        }
        break;
      default: out += next;
    }
  }
  return out;
}

std::optional<Value> LiteralAs(const ConstHit& hit, const SolType& type) {
  const AstNode& lit = *hit.node;
  const auto& kind = lit.Attr(attr::kLiteralKind);
  const auto& text = lit.Attr(attr::kValue);
  bool negated = hit.parent() != nullptr &&
                 hit.parent()->kind == NodeKind::UnaryOp &&
                 hit.parent()->Attr(attr::kOperator) == "-";
  if (kind == "bool") {
    if (type.kind != K::Bool) return std::nullopt;
    return Make(text == "true");
  }
  if (kind == "string") {
    std::string s = Unquote(text);
    if (type.kind == K::String) return Make(s);
    Bytes b(s.begin(), s.end());
    if (type.kind == K::Bytes) return Make(b);
    if (type.kind == K::FixedBytes &&
        b.size() <= static_cast<std::size_t>(type.size)) {
      b.resize(type.size, 0);
      return Make(b);
    }
    return std::nullopt;
  }
  if (kind == "hex") {
    std::string digits = text.substr(2);
    if (type.kind == K::Address && digits.size() == 40) {
      return Make(HexDecode(digits));
    }
    if (type.kind == K::FixedBytes &&
        digits.size() == static_cast<std::size_t>(type.size) * 2) {
      return Make(HexDecode(digits));
    }
    if (type.kind != K::Int || digits.empty()) return std::nullopt;
    BigInt v(text);
    if (negated) v = -v;
    if (v < MinOf(type) || v > MaxOf(type)) return std::nullopt;
    return Make(v);
  }
  if (kind == "number" && type.kind == K::Int) {
    auto v = DecimalValue(text, lit.Attr(attr::kSubdenomination));
    if (!v) return std::nullopt;
    if (negated) *v = -*v;
    if (*v < MinOf(type) || *v > MaxOf(type)) return std::nullopt;
    return Make(*v);
  }
  return std::nullopt;
}

json ValueToJson(const SolType& type, const Value& value) {
  switch (type.kind) {
    case K::Bool: return std::get<bool>(value.data);
    case K::Int: return std::get<BigInt>(value.data).str();
    case K::Address:
    case K::Bytes:
    case K::FixedBytes: return "0x" + HexEncode(std::get<Bytes>(value.data));
    case K::String: return std::get<std::string>(value.data);
    case K::Array: {
      json arr = json::array();
      for (const auto& e : std::get<std::vector<Value>>(value.data)) {
        arr.push_back(ValueToJson(type.element[0], e));
      }
      return arr;
    }
  }
  return nullptr;
}

Value ValueFromJson(const SolType& type, const json& j) {
  try {
    switch (type.kind) {
      case K::Bool: return Make(j.get<bool>());
      case K::Int: return Make(BigInt(j.get<std::string>()));
      case K::Address:
      case K::Bytes:
      case K::FixedBytes: return Make(HexDecode(j.get<std::string>()));
      case K::String: return Make(j.get<std::string>());
      case K::Array: {
        std::vector<Value> elems;
        for (const auto& e : j) elems.push_back(ValueFromJson(type.element[0], e));
        return Make(std::move(elems));
      }
    }
  } catch (const json::exception& e) {
    throw SchemaError(std::string("bad value: ") + e.what());
  } catch (const std::runtime_error& e) {
    throw SchemaError(std::string("bad value: ") + e.what());
  }
  return {};
}

json ParamsToJson(const std::vector<ParamSpec>& params) {
  json arr = json::array();
  for (const auto& p : params) {
    arr.push_back(
        {{"name", p.name}, {"type", p.type.Canonical()}, {"location", p.location}});
  }
  return arr;
}

template <typename T>
T Field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(std::string("missing field: ") + key);
  try {
    return it->get<T>();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("bad field ") + key + ": " + e.what());
  }
}

std::vector<ParamSpec> ParamsFromJson(const json& arr) {
  std::vector<ParamSpec> params;
  for (const auto& p : arr) {
    try {
      params.push_back({Field<std::string>(p, "name"),
                        ParseSolType(Field<std::string>(p, "type")),
                        Field<std::string>(p, "location")});
    } catch (const UnsupportedType& e) {
      throw SchemaError(e.what());
    }
  }
  return params;
}

}  // namespace

std::string FunctionSignature::Canonical() const {
  std::string out = name + "(";
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i > 0) out += ",";
    out += params[i].type.Canonical();
  }
  return out + ")";
}

const AstNode* MainContract(const AstNode& unit) {
  const AstNode* main = nullptr;
  for (const auto& child : unit.children) {
    if (child->kind == NodeKind::ContractDefinition) main = child.get();
  }
  return main;
}

std::vector<FunctionSignature> ExtractSignatures(
    const AstNode& unit, std::vector<std::string>* skipped) {
  std::vector<FunctionSignature> out;
  for (auto& t : Targets(unit, skipped)) out.push_back(std::move(t.signature));
  return out;
}

std::string_view StrategyName(Strategy s) {
  switch (s) {
    case Strategy::TypeBased: return "TypeBased";
    case Strategy::LiteralBased: return "LiteralBased";
    case Strategy::Random: return "Random";
  }
  return "";
}

std::optional<Strategy> ParseStrategy(std::string_view name) {
  for (auto s : {Strategy::TypeBased, Strategy::LiteralBased, Strategy::Random}) {
    if (StrategyName(s) == name) return s;
  }
  return std::nullopt;
}

std::vector<Value> TypeBasedValues(const SolType& type,
                                   std::string_view sender) {
  std::vector<Value> out;
  auto add = [&](Value v) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
  };
  switch (type.kind) {
    case K::Bool:
      add(Make(true));
      add(Make(false));
      break;
    case K::Int:
      add(Make(MinOf(type)));
      add(Make(MaxOf(type)));
      add(Make(BigInt(0)));
      break;
    case K::Address:
      add(Make(Repeat(0, 20)));
      add(Make(HexDecode(sender)));
      break;
    case K::FixedBytes:
      add(Make(Repeat(0x00, type.size)));
      add(Make(Repeat(0xff, type.size)));
      break;
    case K::String:
      for (std::size_t n : {0, 1, 8}) {
        std::string s;
        for (std::size_t i = 0; i < n; ++i) s += static_cast<char>('a' + i);
        add(Make(s));
      }
      break;
    case K::Bytes:
      for (std::size_t n : {0, 1, 8}) {
        Bytes b;
        for (std::size_t i = 0; i < n; ++i) b.push_back(static_cast<std::uint8_t>(i + 1));
        add(Make(b));
      }
      break;
    case K::Array: {
      auto elems = TypeBasedValues(type.element[0], sender);
      if (type.length) {
        for (const auto& e : elems) add(Make(std::vector<Value>(*type.length, e)));
        break;
      }
      for (std::size_t n : {0, 1, 8}) {
        std::vector<Value> arr;
        for (std::size_t i = 0; i < n; ++i) arr.push_back(elems[i % elems.size()]);
        add(Make(std::move(arr)));
      }
      break;
    }
  }
  return out;
}

std::vector<Value> LiteralValues(const AstNode& function, const SolType& type) {
  std::vector<Value> out;
  if (function.children.size() < 3) return out;
  const AstNode& body = *function.child(2);
  for (const auto& hit : Find(body, [](const AstNode& n) {
         return n.kind == NodeKind::Literal;
       })) {
    auto v = LiteralAs(hit, type);
    if (v && std::find(out.begin(), out.end(), *v) == out.end()) {
      out.push_back(std::move(*v));
    }
  }
  return out;
}

Workload GenerateWorkload(const AstNode& unit, std::string_view contract_id,
                          const WorkloadOptions& options) {
  Workload w;
  w.contract_id = std::string(contract_id);
  w.seed = options.seed;
  w.cap_per_function = options.cap_per_function;
  w.sender = options.sender;
  const AstNode* main = MainContract(unit);
  if (main == nullptr) return w;
  w.contract_name = main->Attr(attr::kName);
  if (const AstNode* ctor = ConstructorOf(*main)) {
    w.constructor_params = Params(*ctor->child(0));
    for (const auto& p : w.constructor_params) {
      w.constructor_args.push_back(TypeBasedValues(p.type, w.sender).front());
    }
  }

  for (const auto& target : Targets(unit, nullptr)) {
    const FunctionSignature& sig = target.signature;
    const std::string canonical = sig.Canonical();
    w.functions.push_back(sig);
    std::size_t emitted = 0;
    auto emit = [&](Strategy strategy, std::vector<Value> args,
                    std::uint64_t value_wei) {
      if (emitted >= w.cap_per_function) return;
      CallSpec call;
      call.seq = w.calls.size();
      call.function = sig.name;
      call.signature = canonical;
      call.args = std::move(args);
      call.strategy = strategy;
      call.value_wei = value_wei;
      w.calls.push_back(std::move(call));
      ++emitted;
    };
    // Index-aligned zip; missing positions come from a seed-free stream so
    // that only the Random section depends on the seed.
    auto zip = [&](Strategy strategy, const std::vector<std::vector<Value>>& lists,
                   bool payable_variants) {
      std::size_t rows = 0;
      for (const auto& l : lists) rows = std::max(rows, l.size());
      for (std::size_t k = 0; k < rows; ++k) {
        std::vector<Value> args;
        for (std::size_t i = 0; i < lists.size(); ++i) {
          if (k < lists[i].size()) {
            args.push_back(lists[i][k]);
            continue;
          }
          KeyedRng fill("fill|" + w.contract_id + "|" + canonical + "|" +
                        std::string(StrategyName(strategy)) + "|" +
                        std::to_string(k) + "|" + std::to_string(i));
          args.push_back(RandomValue(sig.params[i].type, fill));
        }
        emit(strategy, args, 0);
        if (payable_variants) emit(strategy, std::move(args), 1);
      }
    };

    if (sig.params.empty()) {
      emit(Strategy::TypeBased, {}, 0);
      if (sig.payable) emit(Strategy::TypeBased, {}, 1);
      continue;
    }
    std::vector<std::vector<Value>> type_based, literal;
    for (const auto& p : sig.params) {
      type_based.push_back(TypeBasedValues(p.type, w.sender));
      literal.push_back(LiteralValues(*target.node, p.type));
    }
    zip(Strategy::TypeBased, type_based, sig.payable);
    zip(Strategy::LiteralBased, literal, false);
    while (emitted < w.cap_per_function) {
      KeyedRng rng(std::to_string(w.seed) + "|" + w.contract_id + "|" +
                   canonical + "|" + std::to_string(w.calls.size()));
      std::vector<Value> args;
      for (const auto& p : sig.params) args.push_back(RandomValue(p.type, rng));
      emit(Strategy::Random, std::move(args), 0);
    }
  }
  return w;
}

const FunctionSignature* Workload::FindFunction(std::string_view signature) const {
  for (const auto& f : functions) {
    if (f.Canonical() == signature) return &f;
  }
  return nullptr;
}

std::string WorkloadToJson(const Workload& w) {
  json j;
  j["schema_version"] = kWorkloadSchemaVersion;
  j["contract_id"] = w.contract_id;
  j["contract_name"] = w.contract_name;
  j["seed"] = w.seed;
  j["cap_per_function"] = w.cap_per_function;
  j["sender"] = w.sender;
  if (!w.config_hash.empty()) j["config_hash"] = w.config_hash;
  json ctor_args = json::array();
  for (std::size_t i = 0; i < w.constructor_args.size(); ++i) {
    ctor_args.push_back(ValueToJson(w.constructor_params[i].type, w.constructor_args[i]));
  }
  j["constructor"] = {{"params", ParamsToJson(w.constructor_params)},
                      {"args", ctor_args}};
  j["functions"] = json::array();
  for (const auto& f : w.functions) {
    j["functions"].push_back({{"name", f.name},
                              {"signature", f.Canonical()},
                              {"selector", FunctionSelector(f.Canonical())},
                              {"visibility", f.visibility},
                              {"payable", f.payable},
                              {"params", ParamsToJson(f.params)}});
  }
  j["calls"] = json::array();
  for (const auto& c : w.calls) {
    const FunctionSignature* f = w.FindFunction(c.signature);
    json args = json::array();
    for (std::size_t i = 0; i < c.args.size(); ++i) {
      args.push_back(ValueToJson(f->params.at(i).type, c.args[i]));
    }
    j["calls"].push_back({{"seq", c.seq},
                          {"function", c.function},
                          {"signature", c.signature},
                          {"strategy", StrategyName(c.strategy)},
                          {"value_wei", c.value_wei},
                          {"args", args}});
  }
  return j.dump(1) + "\n";
}

Workload WorkloadFromJson(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("workload is not JSON: ") + e.what());
  }
  if (Field<int>(j, "schema_version") != kWorkloadSchemaVersion) {
    throw SchemaError("unsupported workload schema_version");
  }
  Workload w;
  w.contract_id = Field<std::string>(j, "contract_id");
  w.contract_name = Field<std::string>(j, "contract_name");
  w.seed = Field<std::uint64_t>(j, "seed");
  w.cap_per_function = Field<std::size_t>(j, "cap_per_function");
  w.sender = Field<std::string>(j, "sender");
  w.config_hash = j.value("config_hash", "");
  const json& ctor = Field<json>(j, "constructor");
  w.constructor_params = ParamsFromJson(Field<json>(ctor, "params"));
  const json& ctor_args = Field<json>(ctor, "args");
  if (ctor_args.size() != w.constructor_params.size()) {
    throw SchemaError("constructor arity mismatch");
  }
  for (std::size_t i = 0; i < ctor_args.size(); ++i) {
    w.constructor_args.push_back(
        ValueFromJson(w.constructor_params[i].type, ctor_args[i]));
  }
  for (const auto& f : Field<json>(j, "functions")) {
    FunctionSignature sig;
    sig.name = Field<std::string>(f, "name");
    sig.visibility = Field<std::string>(f, "visibility");
    sig.payable = Field<bool>(f, "payable");
    sig.params = ParamsFromJson(Field<json>(f, "params"));
    w.functions.push_back(std::move(sig));
  }
  for (const auto& c : Field<json>(j, "calls")) {
    CallSpec call;
    call.seq = Field<std::size_t>(c, "seq");
    call.function = Field<std::string>(c, "function");
    call.signature = Field<std::string>(c, "signature");
    auto strategy = ParseStrategy(Field<std::string>(c, "strategy"));
    if (!strategy) throw SchemaError("unknown strategy");
    call.strategy = *strategy;
    call.value_wei = Field<std::uint64_t>(c, "value_wei");
    const FunctionSignature* f = w.FindFunction(call.signature);
    if (f == nullptr) throw SchemaError("call to unknown " + call.signature);
    const json& args = Field<json>(c, "args");
    if (args.size() != f->params.size()) {
      throw SchemaError("arity mismatch in call " + std::to_string(call.seq));
    }
    for (std::size_t i = 0; i < args.size(); ++i) {
      call.args.push_back(ValueFromJson(f->params[i].type, args[i]));
    }
    if (call.seq != w.calls.size()) throw SchemaError("calls out of sequence");
    w.calls.push_back(std::move(call));
  }
  return w;
}

void WriteWorkload(const Workload& workload, const std::filesystem::path& path) {
  WriteFile(path, WorkloadToJson(workload));
}

Workload ReadWorkload(const std::filesystem::path& path) {
  return WorkloadFromJson(ReadFile(path));
}

}  // namespace solfi
