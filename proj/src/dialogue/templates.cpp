#include "templates.hpp"

#include "screenbot/core/text.hpp"

namespace screenbot::dialogue::templates {

namespace {

bool zh(Language lang) { return lang == Language::Mandarin; }

std::string option_lines(const phq9::Instrument& inst, int item, Language lang) {
  static constexpr const char* kLetters[] = {"A", "B", "C", "D"};
  const auto& labels = inst.item(item).option_labels.at(lang);
  std::string out;
  for (int i = 0; i < phq9::kOptionCount; ++i) {
    out += std::string("\n") + kLetters[i] + ") " + labels[i];
  }
  return out;
}

std::string helpline_lines(const std::vector<safety::HelplineEntry>& helplines) {
  std::string out;
  for (const auto& h : helplines) {
    out += "\n- " + h.name + ": " + h.contact;
    if (!h.description.empty()) out += " (" + h.description + ")";
  }
  return out;
}

}  // namespace

std::string greeting(Language lang) {
  if (zh(lang)) {
    return "你好，我在这里倾听你。最近感觉怎么样？等你准备好了，我们可以一起完成一份关于过去两周情绪的简短问卷。";
  }
  return "Hello, I'm here to listen. How have you been feeling lately? When you're ready, we can "
         "go through a short questionnaire about your mood over the last two weeks.";
}

std::string screening_intro(Language lang) {
  if (zh(lang)) {
    return "谢谢你和我分享这些。接下来我想和你一起完成 PHQ-9 问卷，共九个问题，都是关于过去两周的情况。"
           "你可以用字母、数字或自己的话回答，如果有不清楚的地方我会再和你确认。";
  }
  return "Thank you for sharing that with me. Next I'd like to go through the PHQ-9, a short "
         "questionnaire with nine questions about the last two weeks. You can answer with a "
         "letter, a number or in your own words, and I'll check with you if anything is unclear.";
}

std::string acknowledgement(Language lang) { return zh(lang) ? "谢谢。" : "Thank you."; }

std::string question(const phq9::Instrument& inst, int item, Language lang) {
  const auto& prompt = inst.item(item).prompt_text.at(lang);
  std::string out;
  if (zh(lang)) {
    out = "第" + std::to_string(item) + "题（共9题）。在过去两周里，你有多少时候受到以下问题困扰？\n" +
          prompt;
  } else {
    out = "Question " + std::to_string(item) +
          " of 9. Over the last 2 weeks, how often have you been bothered by the following?\n" +
          prompt;
  }
  return out + option_lines(inst, item, lang);
}

std::vector<std::string> options(const phq9::Instrument& inst, int item, Language lang) {
  const auto& labels = inst.item(item).option_labels.at(lang);
  return {labels.begin(), labels.end()};
}

std::string clarification(const phq9::Instrument& inst, int item, int attempt, int soft_limit,
                          Language lang) {
  const auto& prompt = inst.item(item).prompt_text.at(lang);
  const auto& labels = inst.item(item).option_labels.at(lang);
  if (attempt > soft_limit) {
    if (zh(lang)) return "请从以下四个选项中选择一个（" + prompt + "）：" + option_lines(inst, item, lang);
    return "Please choose one of these four options for \"" + prompt + "\":" +
           option_lines(inst, item, lang);
  }
  if (zh(lang)) {
    std::string lead = attempt == 1 ? "我想准确地记录你的回答。" : "抱歉，我还是不太确定哪个选项最合适。";
    return lead + "回想过去两周，你有多少天有这种情况：“" + prompt + "”？例如，如果只有几天，就是 B（" +
           labels[1] + "）；如果超过一半的日子都有，就是 C（" + labels[2] +
           "）；如果几乎每天都有，就是 D（" + labels[3] + "）；如果完全没有，就是 A（" +
           labels[0] + "）。" + option_lines(inst, item, lang);
  }
  std::string lead = attempt == 1 ? "I want to make sure I record this accurately."
                                  : "Sorry, I'm still not sure which option fits best.";
  return lead + " Thinking about the last 2 weeks, on how many days did you notice this: \"" +
         prompt + "\"? For example, if it happened on a few days, that would be B (" + labels[1] +
         "); on most days, C (" + labels[2] + "); almost every day, D (" + labels[3] +
         "); and if not at all, A (" + labels[0] + ")." + option_lines(inst, item, lang);
}

std::string crisis(const safety::CrisisMessages& msgs,
                   const std::vector<safety::HelplineEntry>& helplines) {
  return msgs.supportive + helpline_lines(helplines) + "\n\n" + msgs.resume_choice;
}

std::string resume(const phq9::Instrument& inst, const ActivePhase& phase, Language lang) {
  std::string out = zh(lang) ? "谢谢你告诉我你想继续。" : "Thank you for letting me know you'd like to continue.";
  if (const auto* s = std::get_if<Screening>(&phase)) {
    return out + "\n\n" + question(inst, s->current_item, lang);
  }
  if (std::holds_alternative<Feedback>(phase)) {
    return out + (zh(lang) ? "我们可以继续聊聊你的结果，或任何对你有帮助的事情。"
                           : " We can keep talking about your results or anything that might help.");
  }
  return out + (zh(lang) ? "你想聊些什么都可以。" : " We can keep talking about whatever is on your mind.");
}

std::string closing(const std::vector<safety::HelplineEntry>& helplines, std::string_view reason,
                    Language lang) {
  std::string out;
  if (reason == "idle") {
    out = zh(lang) ? "由于长时间没有活动，本次会话已结束。" : "This session was closed after a period of inactivity.";
  } else {
    out = zh(lang) ? "谢谢你和我交谈，本次会话已结束。" : "Thank you for talking with me. This session is now closed.";
  }
  out += zh(lang) ? "如果需要支持，可以联系：" : " If you need support, these services are available:";
  return out + helpline_lines(helplines);
}

std::string feedback_invitation(Language lang) {
  return zh(lang) ? "如果你愿意，我们可以聊聊这些结果，或者一些让自己感觉好一点的方法。"
                  : "If you'd like, we can talk about these results or ways to feel a little better.";
}

std::string apology(Language lang) {
  return zh(lang) ? "抱歉，我现在回应有些困难。可以再说一遍，或者多告诉我一些吗？"
                  : "Sorry, I'm having trouble responding right now. Could you say that again, or "
                    "tell me a little more?";
}

HoldChoice hold_choice(std::string_view input) {
  const auto folded = text::fold_punct_and_space(input);
  for (const char* w : {"resume", "continue", "继续", "繼續"}) {
    if (folded == w) return HoldChoice::Resume;
  }
  for (const char* w : {"end", "stop", "结束", "結束"}) {
    if (folded == w) return HoldChoice::End;
  }
  return HoldChoice::None;
}

}  // namespace screenbot::dialogue::templates
