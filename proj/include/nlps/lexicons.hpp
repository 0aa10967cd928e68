// Copyright 2026 The nlps Authors
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

#pragma once

#include <string_view>

// Built-in word lists. Both can be replaced at run time with a file holding
// one entry per line.
namespace nlps::lexicons {

inline constexpr std::string_view kLanguages[]{
    "afrikaans", "akan", "albanian", "amharic", "ancient greek", "arabic", "aramaic", "armenian",
    "assamese", "asturian", "aymara", "azerbaijani", "balinese", "bambara", "bashkir", "basque",
    "belarusian", "bengali", "bhojpuri", "bislama", "bosnian", "breton", "bulgarian", "burmese",
    "cantonese", "catalan", "cebuano", "chechen", "cherokee", "chichewa", "chinese", "chuvash",
    "classical chinese", "coptic", "cornish", "corsican", "cree", "croatian", "czech", "danish",
    "dari", "dhivehi", "dinka", "dutch", "dzongkha", "egyptian arabic", "english", "esperanto",
    "estonian", "ewe", "faroese", "fijian", "filipino", "finnish", "flemish", "french",
    "frisian", "fula", "galician", "ganda", "georgian", "german", "gothic", "greek",
    "greenlandic", "guarani", "gujarati", "haitian creole", "hakka", "hausa", "hawaiian", "hebrew",
    "hiligaynon", "hindi", "hmong", "hungarian", "icelandic", "igbo", "ilocano", "indonesian",
    "inuktitut", "irish", "italian", "japanese", "javanese", "kabyle", "kannada", "kashmiri",
    "kazakh", "khmer", "kikuyu", "kinyarwanda", "kirundi", "komi", "konkani", "korean",
    "kurdish", "kyrgyz", "lao", "latin", "latvian", "lingala", "lithuanian", "low german",
    "luganda", "luxembourgish", "macedonian", "maithili", "malagasy", "malay", "malayalam", "maltese",
    "manchu", "mandarin", "manx", "maori", "marathi", "marshallese", "middle english", "min nan",
    "modern standard arabic", "moldovan", "mongolian", "nahuatl", "navajo", "ndebele", "nepali",
    "norwegian", "nynorsk", "occitan", "odia", "ojibwe", "old english", "old norse", "oriya",
    "oromo", "ossetian", "pali", "pashto", "persian", "polish", "portuguese", "punjabi",
    "quechua", "romanian", "romansh", "russian", "sami", "samoan", "sango", "sanskrit",
    "sardinian", "scottish gaelic", "serbian", "serbo-croatian", "sesotho", "setswana", "shona",
    "sindhi", "sinhala", "slovak", "slovene", "slovenian", "somali", "sorani", "spanish",
    "sundanese", "swahili", "swedish", "swiss german", "syriac", "tagalog", "tahitian", "tajik",
    "tamil", "tatar", "telugu", "tetum", "thai", "tibetan", "tigrinya", "tok pisin",
    "tongan", "tsonga", "tswana", "turkish", "turkmen", "twi", "uighur", "ukrainian",
    "urdu", "uyghur", "uzbek", "venda", "vietnamese", "volapuk", "walloon", "welsh",
    "wolof", "xhosa", "yiddish", "yoruba", "yucatec maya", "zapotec", "zhuang", "zulu",
    "american sign language", "british sign language", "brazilian portuguese", "inupiaq",
    "mixtec", "quichua",
};

/// Function words hidden from the unigram and bigram treemaps.
inline constexpr std::string_view kStopwords[]{
    "a", "about", "across", "after", "against", "all", "an", "and", "any", "are", "as", "at", "be", "between",
    "beyond", "both", "but", "by", "can", "do", "does", "for", "from", "how", "in", "into", "is", "it", "its",
    "more", "not", "of", "on", "or", "over", "than", "that", "the", "their", "them", "these", "this", "through",
    "to", "toward", "towards", "under", "up", "using", "via", "what", "when", "where", "which", "with", "without",
};

}  // namespace nlps::lexicons
