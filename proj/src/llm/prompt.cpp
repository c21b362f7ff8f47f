#include "screenbot/llm/prompt.hpp"

#include <sstream>

namespace screenbot::llm {

std::string system_prompt_text(Language lang) {
  (void)lang;
  return "You are a supportive depression-screening assistant. The conversation follows three "
         "phases.\n"
         "Rapport: talk warmly and briefly about how the user has been feeling. Do not diagnose.\n"
         "Screening: the PHQ-9 questionnaire is administered one item at a time, in order from "
         "item 1 to item 9. Every item refers to the last two weeks and has four answers: not at "
         "all, several days, more than half the days, nearly every day. If an answer does not "
         "clearly map to one of the four, ask a clarifying question with concrete examples; never "
         "guess a score and never classify prematurely.\n"
         "Feedback: explain the result in plain, non-judgemental language, suggest practical "
         "self-care drawn from the reference material, and encourage professional help where "
         "appropriate. There is no limit on feedback turns.\n"
         "If the user mentions self-harm or suicide, stop and share crisis resources.\n"
         "Use the reference material below when it is relevant and do not invent facts.";
}

std::string language_directive(Language lang) {
  switch (lang) {
    case Language::Mandarin:
      return "Respond in Mandarin Chinese (简体中文). 请用简体中文回答。";
    case Language::English:
    default:
      return "Respond in English.";
  }
}

std::string render_context(const rag::RetrievalBundle& bundle) {
  std::ostringstream out;
  for (const auto& section : bundle.sections) {
    if (section.hits.empty()) continue;
    out << "### " << section.store_name << "\n";
    for (const auto& hit : section.hits) {
      out << "[source: " << section.store_name << "/" << hit.chunk.doc_id << "#" << hit.chunk.seq
          << "]\n"
          << hit.chunk.text << "\n";
    }
  }
  return out.str();
}

PromptBundle assemble_prompt(const PromptInputs& inputs, const rag::RetrievalBundle& bundle,
                             std::size_t window) {
  PromptBundle p;
  p.lang = inputs.lang;
  p.system_prompt = system_prompt_text(inputs.lang);
  p.phase = inputs.phase;
  p.language_directive = language_directive(inputs.lang);
  p.context = render_context(bundle);
  p.notes = inputs.notes;
  const std::size_t n = inputs.transcript.size();
  const std::size_t first = n > window ? n - window : 0;
  p.transcript_window.assign(inputs.transcript.begin() + static_cast<std::ptrdiff_t>(first),
                             inputs.transcript.end());
  p.user_turn = inputs.user_turn;
  return p;
}

std::vector<ChatMessage> PromptBundle::messages() const {
  std::string sys = system_prompt;
  sys += "\n\nCurrent phase: " + phase;
  sys += "\n" + language_directive;
  if (!notes.empty()) sys += "\n\nSession notes:\n" + notes;
  sys += "\n\nReference material:\n" + (context.empty() ? std::string("(none)\n") : context);
  std::vector<ChatMessage> out;
  out.reserve(transcript_window.size() + 2);
  out.push_back({"system", std::move(sys)});
  out.insert(out.end(), transcript_window.begin(), transcript_window.end());
  out.push_back({"user", user_turn});
  return out;
}

std::string PromptBundle::render() const {
  std::string out;
  for (const auto& m : messages()) {
    out += "<" + m.role + ">\n" + m.content + "\n</" + m.role + ">\n";
  }
  return out;
}

}  // namespace screenbot::llm
