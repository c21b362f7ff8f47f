#include "screenbot/phq9/summary.hpp"

#include <sstream>

namespace screenbot::phq9 {

namespace {

struct BandText {
  const char* interpretation;
  std::vector<const char*> recommendations;
};

BandText band_text(SeverityBand band, Language lang) {
  if (lang == Language::Mandarin) {
    switch (band) {
      case SeverityBand::MinimalNone:
        return {"你的得分提示目前几乎没有抑郁症状。",
                {"继续保持规律作息、适量运动和与亲友的联系。",
                 "如果情绪出现持续变化，可以随时再次进行筛查。"}};
      case SeverityBand::Mild:
        return {"你的得分提示存在轻度抑郁症状。",
                {"尝试记录情绪和睡眠，留意哪些活动能让你感觉好一些。",
                 "与信任的人聊聊你的感受。",
                 "如果症状持续两周以上，建议咨询全科医生或心理咨询师。"}};
      case SeverityBand::Moderate:
        return {"你的得分提示存在中度抑郁症状。",
                {"建议近期预约全科医生或精神心理专业人员进行评估。",
                 "认知行为疗法（CBT）等心理干预对中度症状通常有帮助。",
                 "保持日常结构，并尽量安排一些愉快的活动。"}};
      case SeverityBand::ModeratelySevere:
        return {"你的得分提示存在中重度抑郁症状。",
                {"请尽快联系医生或精神心理专业人员进行全面评估。",
                 "专业治疗（心理治疗和/或药物）可能会有帮助。",
                 "让身边信任的人了解你的状况。"}};
      case SeverityBand::Severe:
        return {"你的得分提示存在重度抑郁症状。",
                {"请尽快（最好在几天内）联系医生或精神科专业人员。",
                 "如果你感到自己有危险，请立即联系紧急服务。"}};
    }
  }
  switch (band) {
    case SeverityBand::MinimalNone:
      return {"Your score suggests minimal or no depressive symptoms at the moment.",
              {"Keep up routines that support you: regular sleep, activity and time with people "
               "you trust.",
               "You can repeat this screening any time your mood changes."}};
    case SeverityBand::Mild:
      return {"Your score suggests mild depressive symptoms.",
              {"Try keeping a short mood and sleep diary to notice what helps.",
               "Talk to someone you trust about how you have been feeling.",
               "If this lasts more than two weeks, consider speaking to your GP or a counsellor."}};
    case SeverityBand::Moderate:
      return {"Your score suggests moderate depressive symptoms.",
              {"Consider booking an appointment with your GP or a mental health professional "
               "soon.",
               "Talking therapies such as CBT are often helpful at this level.",
               "Keep some structure in your day and plan small activities you enjoy."}};
    case SeverityBand::ModeratelySevere:
      return {"Your score suggests moderately severe depressive symptoms.",
              {"Please contact your GP or a mental health professional soon for a full "
               "assessment.",
               "Professional treatment, such as therapy and/or medication, may help.",
               "Let someone close to you know how you are doing."}};
    case SeverityBand::Severe:
      return {"Your score suggests severe depressive symptoms.",
              {"Please contact your GP or a mental health professional as soon as possible, "
               "ideally within the next few days.",
               "If you feel unsafe at any point, contact emergency services immediately."}};
  }
  return {"", {}};
}

}  // namespace

SummaryDocument build_summary(const Phq9Result& result, Language lang,
                              const std::vector<safety::HelplineEntry>& helplines,
                              const Instrument& instrument) {
  SummaryDocument doc;
  doc.lang = lang;
  for (const auto& item : instrument.items()) {
    const int score = result.item(item.index).value();
    doc.items.push_back({item.index, item.prompt_text.at(lang), score,
                         item.option_labels.at(lang)[static_cast<std::size_t>(score)]});
  }
  doc.total = result.total();
  doc.band = result.severity();
  doc.band_label = std::string(band_label(doc.band, lang));
  const auto text = band_text(doc.band, lang);
  doc.interpretation = text.interpretation;
  for (const char* r : text.recommendations) doc.recommendations.emplace_back(r);
  doc.self_harm_flag = result.item(kSelfHarmItem).value() >= 1;
  if (doc.self_harm_flag) doc.helplines = helplines;
  return doc;
}

SummaryDocument build_summary(const Phq9Result& result, std::string_view lang_code,
                              const std::vector<safety::HelplineEntry>& helplines,
                              const Instrument& instrument) {
  return build_summary(result, require_language(lang_code), helplines, instrument);
}

nlohmann::json to_json(const SummaryDocument& doc) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& it : doc.items) {
    items.push_back(
        {{"index", it.index}, {"text", it.text}, {"score", it.score}, {"answer", it.answer_label}});
  }
  nlohmann::json j{{"lang", std::string(language_code(doc.lang))},
                   {"items", std::move(items)},
                   {"total", doc.total},
                   {"band", std::string(band_id(doc.band))},
                   {"band_label", doc.band_label},
                   {"interpretation", doc.interpretation},
                   {"recommendations", doc.recommendations},
                   {"self_harm_flag", doc.self_harm_flag}};
  if (doc.self_harm_flag) j["helplines"] = safety::to_json(doc.helplines);
  return j;
}

std::string render_text(const SummaryDocument& doc) {
  const bool zh = doc.lang == Language::Mandarin;
  std::ostringstream out;
  out << (zh ? "以下是你的 PHQ-9 结果：\n" : "Here are your PHQ-9 results:\n");
  for (const auto& it : doc.items) {
    out << it.index << ". " << it.text << ": " << it.answer_label << " (" << it.score << ")\n";
  }
  out << (zh ? "总分：" : "Total score: ") << doc.total << "/27 - " << doc.band_label << "\n";
  out << doc.interpretation << "\n";
  for (const auto& r : doc.recommendations) out << "- " << r << "\n";
  if (doc.self_harm_flag) {
    out << (zh ? "如果你有伤害自己的念头，请联系：\n"
               : "Because you mentioned thoughts of self-harm, please consider reaching out:\n");
    for (const auto& h : doc.helplines) out << "- " << h.name << ": " << h.contact << "\n";
  }
  out << (zh ? "这只是筛查结果，并非诊断。"
             : "This is a screening result, not a diagnosis.");
  return out.str();
}

}  // namespace screenbot::phq9
