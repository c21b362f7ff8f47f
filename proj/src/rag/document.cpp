#include "screenbot/rag/document.hpp"

namespace screenbot::rag {

std::string_view source_kind_name(SourceKind kind) noexcept {
  switch (kind) {
    case SourceKind::Cbt:
      return "cbt";
    case SourceKind::Guide:
      return "guide";
    case SourceKind::Emotional:
      return "emotional";
    case SourceKind::Helpline:
      return "helpline";
  }
  return "cbt";
}

std::optional<SourceKind> parse_source_kind(std::string_view name) noexcept {
  if (name == "cbt") return SourceKind::Cbt;
  if (name == "guide") return SourceKind::Guide;
  if (name == "emotional") return SourceKind::Emotional;
  if (name == "helpline") return SourceKind::Helpline;
  return std::nullopt;
}

std::string_view store_for(SourceKind kind) noexcept {
  switch (kind) {
    case SourceKind::Cbt:
    case SourceKind::Guide:
      return kCbtGuideStore;
    case SourceKind::Emotional:
      return kEmotionalStore;
    case SourceKind::Helpline:
      return kHelplineStore;
  }
  return kCbtGuideStore;
}

std::optional<SourceKind> default_kind_for_store(std::string_view store) noexcept {
  if (store == kCbtGuideStore) return SourceKind::Cbt;
  if (store == kEmotionalStore) return SourceKind::Emotional;
  if (store == kHelplineStore) return SourceKind::Helpline;
  return std::nullopt;
}

}  // namespace screenbot::rag
