#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "spinelab/autos.hpp"
#include "spinelab/gog.hpp"
#include "spinelab/groups.hpp"
#include "spinelab/spine.hpp"

namespace spinelab {

using json = nlohmann::json;

FiniteGroup group_from_json(const json& j);
FactorSystem factors_from_json(const json& j);
// Accepts the C<k>/S<k> mini-language or a path to a JSON factor file.
FactorSystem load_factors(const std::string& spec_or_path);

Word word_from_json(const FactorSystem& sys, const json& j);
json word_to_json(const Word& w);

OuterAutoWord auto_from_json(const FactorSystem& sys, const json& j);
json auto_to_json(const OuterAutoWord& f);

GraphOfGroups marking_from_json(const FactorSystem& sys, const json& j);
json marking_to_json(const GraphOfGroups& X);
std::string marking_to_dot(const GraphOfGroups& X);

json spine_ball_to_json(const FactorSystem& sys, const SpineBall& B);
std::string spine_ball_to_dot(const FactorSystem& sys, const SpineBall& B);

json read_json_file(const std::string& path);

}  // namespace spinelab
