#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "screenbot/core/language.hpp"

namespace screenbot::rag {

enum class SourceKind { Cbt, Guide, Emotional, Helpline };

std::string_view source_kind_name(SourceKind kind) noexcept;
std::optional<SourceKind> parse_source_kind(std::string_view name) noexcept;

inline constexpr std::string_view kCbtGuideStore = "cbt_guide";
inline constexpr std::string_view kEmotionalStore = "emotional";
inline constexpr std::string_view kHelplineStore = "helpline";

// Fixed section order of every retrieval bundle.
inline constexpr std::array<std::string_view, 3> kStoreOrder{kCbtGuideStore, kEmotionalStore,
                                                             kHelplineStore};

// CBT transcripts and the therapist guide share a store; emotional-support
// corpora and helplines get one each.
std::string_view store_for(SourceKind kind) noexcept;

// Kind assumed for plain-text files ingested into `store`.
std::optional<SourceKind> default_kind_for_store(std::string_view store) noexcept;

struct Document {
  std::string doc_id;
  SourceKind source_kind = SourceKind::Cbt;
  Language lang = Language::English;
  std::string text;
};

}  // namespace screenbot::rag
