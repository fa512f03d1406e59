#pragma once

#include <string>

#include "brown/measures.hpp"

namespace brown::io {

// JSON forms, tagged by "variant". Complex numbers are a number or [re, im].
//   {"variant":"atomic","positions":[..],"weights":[..],"domain":"real|circle|plane"}
//   {"variant":"semicircle","variance":g}  {"variant":"arcsine"}
//   {"variant":"quarter_circle","scale":t} {"variant":"poisson_kernel","q":q}
//   {"variant":"two_by_two","entries":[[a11,a12],[a21,a22]]}
//   {"variant":"self_adjoint","law":{..}}  {"variant":"unitary","law":{..}}
//   {"variant":"finite_normal","atoms":[..],"weights":[..]}
//   {"variant":"semicircular","variance":g} {"variant":"zero"}
// Malformed input throws ValidationError.
measures::SpectralMeasure parse_measure(const std::string& json);
measures::OperatorModel parse_model(const std::string& json);
std::string to_json(const measures::SpectralMeasure& m);
std::string to_json(const measures::OperatorModel& a);

enum class Perturbation { Haar, Circular };

// {"perturbation":"haar"|"circular","t":t,"element":{model}}
struct ModelFile {
  Perturbation perturbation = Perturbation::Haar;
  double t = 1.0;
  measures::OperatorModel element = measures::Zero{};
};
ModelFile parse_model_file(const std::string& json);
std::string to_json(const ModelFile& f);

}  // namespace brown::io
