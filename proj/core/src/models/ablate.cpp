#include "postedit/models/ablate.hpp"

#include "postedit/error.hpp"

namespace postedit::models {

const char* ablation_category_name(AblationCategory c) {
  switch (c) {
    case AblationCategory::editing: return "editing";
    case AblationCategory::mouse: return "mouse";
    case AblationCategory::wait: return "wait";
    case AblationCategory::first_wait: return "first_wait";
  }
  return "?";
}

AblationCategory ablation_category_from_name(const std::string& name) {
  for (AblationCategory c : {AblationCategory::editing, AblationCategory::mouse,
                             AblationCategory::wait, AblationCategory::first_wait})
    if (name == ablation_category_name(c)) return c;
  throw Error(Errc::usage_error, "unknown ablation category '" + name + "'");
}

std::vector<SymbolId> ablate_sequence(const std::vector<SymbolId>& ids,
                                      const Vocabulary& vocab,
                                      const std::set<AblationCategory>& categories,
                                      bool keep_only) {
  // first-wait positions: W symbols in the leading run of W/MC/MS
  std::vector<bool> is_first_wait(ids.size(), false);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const ActionType t = vocab.decode(ids[i]).type;
    if (t == ActionType::wait) {
      is_first_wait[i] = true;
    } else if (!is_mouse_action(t)) {
      break;
    }
  }

  std::vector<SymbolId> out;
  out.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const ActionType t = vocab.decode(ids[i]).type;
    if (t == ActionType::stop) {
      out.push_back(ids[i]);
      continue;
    }
    bool in_categories = false;
    if (categories.count(AblationCategory::editing) && is_edit_action(t))
      in_categories = true;
    if (categories.count(AblationCategory::mouse) && is_mouse_action(t))
      in_categories = true;
    if (categories.count(AblationCategory::wait) && t == ActionType::wait)
      in_categories = true;
    if (categories.count(AblationCategory::first_wait) && is_first_wait[i])
      in_categories = true;
    if (keep_only ? in_categories : !in_categories) out.push_back(ids[i]);
  }

  bool only_stop = true;
  for (const SymbolId id : out)
    if (vocab.decode(id).type != ActionType::stop) only_stop = false;
  if (only_stop)
    throw Error(Errc::empty_after_ablation, "nothing but S remains after ablation");
  return out;
}

}  // namespace postedit::models
