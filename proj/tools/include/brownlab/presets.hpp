#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "brown/measures.hpp"
#include "brown/model_io.hpp"
#include "brown/rmt_lab.hpp"

namespace brownlab {

using brown::cplx;

enum class Pipeline { Haar, Circular, Elliptic, Cross, Enclosure };

struct Params {
  std::optional<double> t;
  std::optional<std::string> alpha;
  std::optional<std::string> beta;
  std::optional<double> q;
};

struct Resolved {
  std::string name;
  Pipeline pipeline = Pipeline::Haar;
  brown::measures::OperatorModel model = brown::measures::Zero{};
  double t = 1.0;
  cplx alpha = 1.0;
  cplx beta = 0.0;
  double q = 0.5;
  double half_width = 2.0;  // default window [-w, w]^2
  // Matrix model of size n; empty when no matrix model exists.
  std::function<brown::rmt::EnsemblePtr(int n)> ensemble;
  std::vector<cplx> hull;  // enclosure presets: sigma(A)
};

std::vector<std::string> preset_names();
Resolved resolve_preset(const std::string& name, const Params& p);
Resolved resolve_model_file(const brown::io::ModelFile& f, const Params& p);

// "1", "-2.5", "i", "-i", "0.5+2i", "1e-3-4i".
cplx parse_complex(const std::string& s);

}  // namespace brownlab
