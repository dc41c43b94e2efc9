#pragma once

// JSON instance, answers and result files.
//
// kb:      {"facts":[{"id":int,"label":str?}], "conflicts":[[int,int]|[int]], "priority":[[int,int]]}
// answers: {"query":str, "answers":[{"id":str, "causes":[[int,...],...]}]}
//
// When "facts" is absent the universe is every id mentioned in conflicts,
// priority or causes. Internally facts are renumbered densely.

#include <stdexcept>
#include <string>

#include "orbits/encoder.hpp"
#include "orbits/filters.hpp"
#include "orbits/kb_model.hpp"

namespace orbits {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadedInstance {
  PrioritizedInstance instance;
  std::string query;
};

/// Throws IoError on unreadable files or malformed JSON (with line and
/// column), InstanceError on dangling ids or an invalid priority relation.
LoadedInstance parse_instance(const std::string& kb_text, const std::string& answers_text);
LoadedInstance load_instance(const std::string& kb_path, const std::string& answers_path);

std::string kb_to_json(const PrioritizedInstance& instance);
std::string answers_to_json(const PrioritizedInstance& instance, const std::string& query);
/// Same kb document with an extra boolean "score_structured" field.
std::string kb_to_json_with_structure(const PrioritizedInstance& instance);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

inline constexpr int kResultSchemaVersion = 1;

std::string result_to_json(const FilterReport& report, const EncodingSpec& spec,
                           Algorithm algorithm);

}  // namespace orbits
