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

// Prompt templates.
//
// A template is UTF-8 text where `{name}` (lowercase identifier) is a
// placeholder and `{{` / `}}` are literal braces. Any other brace is kept
// verbatim, so JSON snippets can appear in the text. Two placeholders are
// bound automatically: `{output_schema}` (the required JSON response shape)
// and `{examples}` (demonstrations loaded from `<name>.shots.json`).

#ifndef BIFACT_TEMPLATES_H_
#define BIFACT_TEMPLATES_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace bifact {

enum class TemplateName {
  kFactorizeGold,
  kAssess,
  kNliEntailment,
  kAutoraterMatch,
};

inline constexpr TemplateName kAllTemplates[] = {
    TemplateName::kFactorizeGold, TemplateName::kAssess,
    TemplateName::kNliEntailment, TemplateName::kAutoraterMatch};

std::string_view TemplateFileStem(TemplateName name);
std::vector<std::string> RequiredPlaceholders(TemplateName name);
// The JSON shape the judge must answer with, as shown to the judge.
std::string_view OutputSchema(TemplateName name);

struct ShotExample {
  std::string input;
  std::string output;
};

using Bindings = std::map<std::string, std::string>;

class PromptTemplate {
 public:
  // Throws TemplateError when a required placeholder is missing or the text
  // uses a placeholder this template cannot bind.
  PromptTemplate(TemplateName name, std::string template_text,
                 std::vector<ShotExample> shots = {});

  TemplateName name() const { return name_; }
  const std::string& text() const { return text_; }
  const std::vector<ShotExample>& shots() const { return shots_; }

  // Throws TemplateError on a placeholder without a binding.
  std::string Render(const Bindings& bindings) const;

 private:
  TemplateName name_;
  std::string text_;
  std::vector<ShotExample> shots_;
};

class TemplateSet {
 public:
  // Reads `<stem>.txt` and optional `<stem>.shots.json` for every template.
  static TemplateSet LoadFromDirectory(const std::filesystem::path& dir);

  explicit TemplateSet(std::vector<PromptTemplate> templates);

  const PromptTemplate& Get(TemplateName name) const;

 private:
  std::vector<PromptTemplate> templates_;
};

// Placeholder names occurring in `text`, in order of first appearance.
std::vector<std::string> FindPlaceholders(std::string_view text);

}  // namespace bifact

#endif  // BIFACT_TEMPLATES_H_
