#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "screenbot/core/language.hpp"
#include "screenbot/dialogue/phase.hpp"
#include "screenbot/phq9/instrument.hpp"
#include "screenbot/safety/helplines.hpp"
#include "screenbot/safety/safety_guard.hpp"

// Fixed reply texts. Screening questions, clarifications and crisis
// messages are never generated, so their wording is reviewable here.
namespace screenbot::dialogue::templates {

std::string greeting(Language lang);
std::string screening_intro(Language lang);
std::string acknowledgement(Language lang);
std::string question(const phq9::Instrument& inst, int item, Language lang);
std::vector<std::string> options(const phq9::Instrument& inst, int item, Language lang);
std::string clarification(const phq9::Instrument& inst, int item, int attempt, int soft_limit,
                          Language lang);
std::string crisis(const safety::CrisisMessages& msgs,
                   const std::vector<safety::HelplineEntry>& helplines);
std::string resume(const phq9::Instrument& inst, const ActivePhase& phase, Language lang);
std::string closing(const std::vector<safety::HelplineEntry>& helplines, std::string_view reason,
                    Language lang);
std::string feedback_invitation(Language lang);
std::string apology(Language lang);

enum class HoldChoice { None, Resume, End };
HoldChoice hold_choice(std::string_view input);

}  // namespace screenbot::dialogue::templates
