// Copyright 2026 The bifact Authors.
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

#include "bifact/templates.h"

#include <algorithm>
#include <functional>

#include "bifact/error.h"
#include "bifact/io.h"
#include "json.hpp"

namespace bifact {
namespace {

constexpr std::string_view kOutputSchemaKey = "output_schema";
constexpr std::string_view kExamplesKey = "examples";

bool IsIdentStart(char c) { return (c >= 'a' && c <= 'z') || c == '_'; }
bool IsIdentChar(char c) { return IsIdentStart(c) || (c >= '0' && c <= '9'); }

// Calls `on_text` for literal runs and `on_placeholder` for `{name}`.
void Scan(std::string_view text,
          const std::function<void(std::string_view)>& on_text,
          const std::function<void(std::string_view)>& on_placeholder) {
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '{' && i + 1 < text.size() && text[i + 1] == '{') {
      on_text("{");
      i += 2;
      continue;
    }
    if (c == '}' && i + 1 < text.size() && text[i + 1] == '}') {
      on_text("}");
      i += 2;
      continue;
    }
    if (c == '{' && i + 1 < text.size() && IsIdentStart(text[i + 1])) {
      std::size_t j = i + 1;
      while (j < text.size() && IsIdentChar(text[j])) ++j;
      if (j < text.size() && text[j] == '}') {
        on_placeholder(text.substr(i + 1, j - i - 1));
        i = j + 1;
        continue;
      }
    }
    on_text(text.substr(i, 1));
    ++i;
  }
}

std::string RenderShots(const std::vector<ShotExample>& shots) {
  std::string out;
  for (std::size_t i = 0; i < shots.size(); ++i) {
    if (i > 0) out += "\n\n";
    out += "Example input:\n" + shots[i].input + "\n\nExample output:\n" +
           shots[i].output;
  }
  return out;
}

std::vector<ShotExample> LoadShots(const std::filesystem::path& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(ReadFile(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kTemplateError,
                path.string() + ": invalid JSON: " + e.what());
  }
  if (!doc.is_array()) {
    throw Error(ErrorCode::kTemplateError, path.string() + ": expected array");
  }
  std::vector<ShotExample> shots;
  for (const auto& item : doc) {
    if (!item.is_object() || !item.contains("input") ||
        !item.contains("output") || !item["input"].is_string()) {
      throw Error(ErrorCode::kTemplateError,
                  path.string() + ": each shot needs string 'input' and "
                                  "'output'");
    }
    const auto& output = item["output"];
    shots.push_back({item["input"].get<std::string>(),
                     output.is_string() ? output.get<std::string>()
                                        : output.dump()});
  }
  return shots;
}

}  // namespace

std::string_view TemplateFileStem(TemplateName name) {
  switch (name) {
    case TemplateName::kFactorizeGold: return "factorize_gold";
    case TemplateName::kAssess: return "assess";
    case TemplateName::kNliEntailment: return "nli_entailment";
    case TemplateName::kAutoraterMatch: return "autorater_match";
  }
  return "";
}

std::vector<std::string> RequiredPlaceholders(TemplateName name) {
  switch (name) {
    case TemplateName::kFactorizeGold: return {"gold_intent"};
    case TemplateName::kAssess:
      return {"gold_intent", "gold_facts", "predicted_intent"};
    case TemplateName::kNliEntailment: return {"premise", "hypothesis"};
    case TemplateName::kAutoraterMatch:
      return {"gold_intent", "predicted_intent"};
  }
  return {};
}

std::string_view OutputSchema(TemplateName name) {
  switch (name) {
    case TemplateName::kFactorizeGold:
      return R"({"facts": [string]})";
    case TemplateName::kAssess:
      return R"({"predicted_facts": [string], "gold_fact_labels": [{"fact": string, "implied": boolean}], "predicted_fact_labels": [{"fact": string, "implied": boolean}]})";
    case TemplateName::kNliEntailment:
      return R"({"entailment_probability": number})";
    case TemplateName::kAutoraterMatch:
      return R"({"match": boolean})";
  }
  return "";
}

std::vector<std::string> FindPlaceholders(std::string_view text) {
  std::vector<std::string> names;
  Scan(text, [](std::string_view) {},
       [&](std::string_view name) {
         if (std::find(names.begin(), names.end(), name) == names.end()) {
           names.emplace_back(name);
         }
       });
  return names;
}

PromptTemplate::PromptTemplate(TemplateName name, std::string template_text,
                               std::vector<ShotExample> shots)
    : name_(name), text_(std::move(template_text)), shots_(std::move(shots)) {
  const auto present = FindPlaceholders(text_);
  auto allowed = RequiredPlaceholders(name_);
  for (const auto& required : allowed) {
    if (std::find(present.begin(), present.end(), required) == present.end()) {
      throw Error(ErrorCode::kTemplateError,
                  std::string(TemplateFileStem(name_)) +
                      " template lacks placeholder {" + required + "}");
    }
  }
  allowed.emplace_back(kOutputSchemaKey);
  allowed.emplace_back(kExamplesKey);
  for (const auto& used : present) {
    if (std::find(allowed.begin(), allowed.end(), used) == allowed.end()) {
      throw Error(ErrorCode::kTemplateError,
                  std::string(TemplateFileStem(name_)) +
                      " template uses unknown placeholder {" + used + "}");
    }
  }
}

std::string PromptTemplate::Render(const Bindings& bindings) const {
  std::string out;
  out.reserve(text_.size() * 2);
  Scan(
      text_, [&](std::string_view literal) { out.append(literal); },
      [&](std::string_view name) {
        if (name == kOutputSchemaKey) {
          out.append(OutputSchema(name_));
          return;
        }
        if (name == kExamplesKey) {
          out.append(RenderShots(shots_));
          return;
        }
        auto it = bindings.find(std::string(name));
        if (it == bindings.end()) {
          throw Error(ErrorCode::kTemplateError,
                      "unbound placeholder {" + std::string(name) + "} in " +
                          std::string(TemplateFileStem(name_)));
        }
        out.append(it->second);
      });
  return out;
}

TemplateSet TemplateSet::LoadFromDirectory(const std::filesystem::path& dir) {
  std::vector<PromptTemplate> templates;
  for (TemplateName name : kAllTemplates) {
    const std::string stem(TemplateFileStem(name));
    const auto text_path = dir / (stem + ".txt");
    if (!std::filesystem::exists(text_path)) {
      throw Error(ErrorCode::kTemplateError,
                  "missing template " + text_path.string());
    }
    std::vector<ShotExample> shots;
    const auto shots_path = dir / (stem + ".shots.json");
    if (std::filesystem::exists(shots_path)) shots = LoadShots(shots_path);
    templates.emplace_back(name, ReadFile(text_path), std::move(shots));
  }
  return TemplateSet(std::move(templates));
}

TemplateSet::TemplateSet(std::vector<PromptTemplate> templates)
    : templates_(std::move(templates)) {
  for (TemplateName name : kAllTemplates) Get(name);
}

const PromptTemplate& TemplateSet::Get(TemplateName name) const {
  for (const auto& t : templates_) {
    if (t.name() == name) return t;
  }
  throw Error(ErrorCode::kTemplateError,
              "template set lacks " + std::string(TemplateFileStem(name)));
}

}  // namespace bifact
