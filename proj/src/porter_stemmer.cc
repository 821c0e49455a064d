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

// Porter (1980) suffix stripping with the NLTK extensions: the irregular
// form pool, the "ies"/"ied" short-word rules, the consonant-preceded y->i
// rule, the recursive "alli" rule, "fulli" and the "logi" rule, and the
// two-letter *o condition.

#include <functional>
#include <string>
#include <string_view>

#include "mdscorpus/text.h"

namespace mdscorpus {
namespace {

using Condition = std::function<bool(std::string_view)>;

struct Rule {
  std::string_view suffix;  // "*d" means "ends with a double consonant"
  std::string_view replacement;
  Condition condition;  // empty: unconditional
};

bool IsVowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool IsConsonant(std::string_view w, std::size_t i) {
  if (IsVowel(w[i])) return false;
  if (w[i] == 'y') {
    bool negate = false;
    while (i > 0 && w[i] == 'y') {
      negate = !negate;
      --i;
    }
    return (!IsVowel(w[i])) != negate;
  }
  return true;
}

// Number of vowel->consonant transitions, i.e. m in [C](VC){m}[V].
int Measure(std::string_view stem) {
  int m = 0;
  bool prev_consonant = true;
  bool prev_valid = false;
  for (std::size_t i = 0; i < stem.size(); ++i) {
    bool consonant;
    if (IsVowel(stem[i])) {
      consonant = false;
    } else if (stem[i] == 'y') {
      consonant = (i == 0) ? true : !prev_consonant;
    } else {
      consonant = true;
    }
    if (prev_valid && !prev_consonant && consonant) ++m;
    prev_consonant = consonant;
    prev_valid = true;
  }
  return m;
}

bool ContainsVowel(std::string_view stem) {
  bool prev_consonant = true;
  for (std::size_t i = 0; i < stem.size(); ++i) {
    bool consonant;
    if (IsVowel(stem[i])) {
      consonant = false;
    } else if (stem[i] == 'y') {
      consonant = (i == 0) ? true : !prev_consonant;
    } else {
      consonant = true;
    }
    if (!consonant) return true;
    prev_consonant = consonant;
  }
  return false;
}

bool EndsDoubleConsonant(std::string_view w) {
  return w.size() >= 2 && w[w.size() - 1] == w[w.size() - 2] &&
         IsConsonant(w, w.size() - 1);
}

// Condition *o.
bool EndsCvc(std::string_view w) {
  const std::size_t n = w.size();
  if (n >= 3 && IsConsonant(w, n - 3) && !IsConsonant(w, n - 2) &&
      IsConsonant(w, n - 1) && w[n - 1] != 'w' && w[n - 1] != 'x' &&
      w[n - 1] != 'y') {
    return true;
  }
  return n == 2 && !IsConsonant(w, 0) && IsConsonant(w, 1);
}

bool PositiveMeasure(std::string_view stem) { return Measure(stem) > 0; }
bool MeasureAboveOne(std::string_view stem) { return Measure(stem) > 1; }

std::string Concat(std::string_view a, std::string_view b) {
  std::string out;
  out.reserve(a.size() + b.size());
  out.append(a);
  out.append(b);
  return out;
}

// Applies the first rule whose suffix matches; a failed condition on that
// rule stops the search and leaves the word unchanged.
std::string ApplyRules(std::string_view word,
                       std::initializer_list<Rule> rules) {
  for (const Rule& rule : rules) {
    if (rule.suffix == "*d" && EndsDoubleConsonant(word)) {
      std::string_view stem = word.substr(0, word.size() - 2);
      if (!rule.condition || rule.condition(stem)) {
        return Concat(stem, rule.replacement);
      }
      return std::string(word);
    }
    if (word.ends_with(rule.suffix)) {
      std::string_view stem = word.substr(0, word.size() - rule.suffix.size());
      if (!rule.condition || rule.condition(stem)) {
        return Concat(stem, rule.replacement);
      }
      return std::string(word);
    }
  }
  return std::string(word);
}

std::string ReplaceSuffix(std::string_view word, std::string_view suffix,
                          std::string_view replacement) {
  return Concat(word.substr(0, word.size() - suffix.size()), replacement);
}

std::string Step1a(std::string_view word) {
  if (word.ends_with("ies") && word.size() == 4) {
    return ReplaceSuffix(word, "ies", "ie");
  }
  return ApplyRules(
      word,
      {{"sses", "ss", {}}, {"ies", "i", {}}, {"ss", "ss", {}}, {"s", "", {}}});
}

std::string Step1b(std::string_view word) {
  if (word.ends_with("ied")) {
    return ReplaceSuffix(word, "ied", word.size() == 4 ? "ie" : "i");
  }
  if (word.ends_with("eed")) {
    std::string_view stem = word.substr(0, word.size() - 3);
    if (Measure(stem) > 0) return Concat(stem, "ee");
    return std::string(word);
  }

  std::string_view intermediate;
  bool stripped = false;
  for (std::string_view suffix :
       {std::string_view("ed"), std::string_view("ing")}) {
    if (word.ends_with(suffix)) {
      intermediate = word.substr(0, word.size() - suffix.size());
      if (ContainsVowel(intermediate)) {
        stripped = true;
        break;
      }
    }
  }
  if (!stripped) return std::string(word);

  const char last = intermediate.back();
  const std::string last_letter(1, last);
  return ApplyRules(intermediate,
                    {{"at", "ate", {}},
                     {"bl", "ble", {}},
                     {"iz", "ize", {}},
                     {"*d", last_letter,
                      [last](std::string_view) {
                        return last != 'l' && last != 's' && last != 'z';
                      }},
                     {"", "e", [](std::string_view stem) {
                        return Measure(stem) == 1 && EndsCvc(stem);
                      }}});
}

std::string Step1c(std::string_view word) {
  return ApplyRules(word, {{"y", "i", [](std::string_view stem) {
                              return stem.size() > 1 &&
                                     IsConsonant(stem, stem.size() - 1);
                            }}});
}

std::string Step2(std::string_view word) {
  if (word.ends_with("alli") &&
      PositiveMeasure(word.substr(0, word.size() - 4))) {
    return Step2(ReplaceSuffix(word, "alli", "al"));
  }
  const std::string_view logi_stem =
      word.size() >= 3 ? word.substr(0, word.size() - 3) : std::string_view();
  return ApplyRules(word, {{"ational", "ate", PositiveMeasure},
                           {"tional", "tion", PositiveMeasure},
                           {"enci", "ence", PositiveMeasure},
                           {"anci", "ance", PositiveMeasure},
                           {"izer", "ize", PositiveMeasure},
                           {"bli", "ble", PositiveMeasure},
                           {"alli", "al", PositiveMeasure},
                           {"entli", "ent", PositiveMeasure},
                           {"eli", "e", PositiveMeasure},
                           {"ousli", "ous", PositiveMeasure},
                           {"ization", "ize", PositiveMeasure},
                           {"ation", "ate", PositiveMeasure},
                           {"ator", "ate", PositiveMeasure},
                           {"alism", "al", PositiveMeasure},
                           {"iveness", "ive", PositiveMeasure},
                           {"fulness", "ful", PositiveMeasure},
                           {"ousness", "ous", PositiveMeasure},
                           {"aliti", "al", PositiveMeasure},
                           {"iviti", "ive", PositiveMeasure},
                           {"biliti", "ble", PositiveMeasure},
                           {"fulli", "ful", PositiveMeasure},
                           // Keeps the "l": measured on the word minus "ogi".
                           {"logi", "log", [logi_stem](std::string_view) {
                              return PositiveMeasure(logi_stem);
                            }}});
}

std::string Step3(std::string_view word) {
  return ApplyRules(word, {{"icate", "ic", PositiveMeasure},
                           {"ative", "", PositiveMeasure},
                           {"alize", "al", PositiveMeasure},
                           {"iciti", "ic", PositiveMeasure},
                           {"ical", "ic", PositiveMeasure},
                           {"ful", "", PositiveMeasure},
                           {"ness", "", PositiveMeasure}});
}

std::string Step4(std::string_view word) {
  return ApplyRules(word, {{"al", "", MeasureAboveOne},
                           {"ance", "", MeasureAboveOne},
                           {"ence", "", MeasureAboveOne},
                           {"er", "", MeasureAboveOne},
                           {"ic", "", MeasureAboveOne},
                           {"able", "", MeasureAboveOne},
                           {"ible", "", MeasureAboveOne},
                           {"ant", "", MeasureAboveOne},
                           {"ement", "", MeasureAboveOne},
                           {"ment", "", MeasureAboveOne},
                           {"ent", "", MeasureAboveOne},
                           {"ion", "",
                            [](std::string_view stem) {
                              return Measure(stem) > 1 &&
                                     (stem.back() == 's' || stem.back() == 't');
                            }},
                           {"ou", "", MeasureAboveOne},
                           {"ism", "", MeasureAboveOne},
                           {"ate", "", MeasureAboveOne},
                           {"iti", "", MeasureAboveOne},
                           {"ous", "", MeasureAboveOne},
                           {"ive", "", MeasureAboveOne},
                           {"ize", "", MeasureAboveOne}});
}

std::string Step5a(std::string_view word) {
  if (word.ends_with('e')) {
    std::string_view stem = word.substr(0, word.size() - 1);
    const int m = Measure(stem);
    if (m > 1) return std::string(stem);
    if (m == 1 && !EndsCvc(stem)) return std::string(stem);
  }
  return std::string(word);
}

std::string Step5b(std::string_view word) {
  const std::string_view without_last = word.substr(0, word.size() - 1);
  return ApplyRules(word, {{"ll", "l", [without_last](std::string_view) {
                              return Measure(without_last) > 1;
                            }}});
}

// Irregular forms short-circuit the algorithm.
const char* IrregularForm(std::string_view word) {
  struct Entry {
    std::string_view form;
    const char* stem;
  };
  static constexpr Entry kPool[] = {
      {"sky", "sky"},         {"skies", "sky"},        {"dying", "die"},
      {"lying", "lie"},       {"tying", "tie"},        {"news", "news"},
      {"innings", "inning"},  {"inning", "inning"},    {"outings", "outing"},
      {"outing", "outing"},   {"cannings", "canning"}, {"canning", "canning"},
      {"howe", "howe"},       {"proceed", "proceed"},  {"exceed", "exceed"},
      {"succeed", "succeed"},
  };
  for (const Entry& e : kPool) {
    if (e.form == word) return e.stem;
  }
  return nullptr;
}

}  // namespace

std::string PorterStem(std::string_view word) {
  if (const char* irregular = IrregularForm(word)) return irregular;
  if (word.size() <= 2) return std::string(word);

  std::string stem = Step1a(word);
  stem = Step1b(stem);
  stem = Step1c(stem);
  stem = Step2(stem);
  stem = Step3(stem);
  stem = Step4(stem);
  stem = Step5a(stem);
  stem = Step5b(stem);
  return stem;
}

}  // namespace mdscorpus
