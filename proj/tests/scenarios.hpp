#pragma once

#include <string>
#include <vector>

namespace testsupport {

// Golden session: four rapport turns (the fourth is the policy token), nine
// answers with one ambiguous reply on item 2 and a crisis interjection on
// item 4, then one feedback turn.
inline const std::vector<std::string>& golden_replies() {
  static const std::vector<std::string> r{
      "Thank you for telling me. How has your sleep been lately?",
      "That sounds exhausting. What has helped, even a little?",
      "Stress at work can wear anyone down. Whenever you feel ready, we can start the "
      "questionnaire.",
      "A regular wake time and some morning daylight often help. Would you like to try that "
      "this week?",
  };
  return r;
}

inline const std::vector<std::string>& golden_inputs() {
  static const std::vector<std::string> in{
      "Hi, I'm not sure what to expect.",
      "I've been sleeping badly and feel flat most days.",
      "Work has been really stressful.",
      "ready",
      "B",
      "maybe sometimes?",
      "more than half the days",
      "D",
      "honestly I sometimes want to end my life",
      "resume",
      "2",
      "C",
      "one",
      "option b",
      "Not at all",
      "B",
      "What can I do about my sleep?",
  };
  return in;
}

inline constexpr int kGoldenTotal = 13;
inline constexpr const char* kGoldenBand = "Moderate";

}  // namespace testsupport
