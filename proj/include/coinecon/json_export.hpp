#pragma once

#include <json.hpp>

#include <vector>

#include "coinecon/diagnostics.hpp"
#include "coinecon/johansen.hpp"
#include "coinecon/model_catalog.hpp"
#include "coinecon/series_store.hpp"
#include "coinecon/unit_root.hpp"
#include "coinecon/vecm.hpp"

namespace coinecon::json_export {

using Json = nlohmann::ordered_json;

[[nodiscard]] Json to_json(const series::LoadReport& r);
[[nodiscard]] Json to_json(const unit_root::UnitRootResult& r);
[[nodiscard]] Json to_json(const unit_root::IntegrationOrder& o);
[[nodiscard]] Json to_json(const johansen::CointRankResult& r);
[[nodiscard]] Json to_json(const johansen::PantulaResult& r);
[[nodiscard]] Json to_json(const vecm::CoefficientCell& c);
[[nodiscard]] Json to_json(const vecm::EffectTables& t);
[[nodiscard]] Json to_json(const vecm::VecmFit& f);
[[nodiscard]] Json to_json(const diagnostics::DiagnosticReport& d);
[[nodiscard]] Json to_json(const catalog::PipelineResult& r);
[[nodiscard]] Json to_json(const std::vector<catalog::PipelineResult>& results);
[[nodiscard]] Json to_json(const series::CorrelationMatrix& c);

/// Row-major nested arrays.
[[nodiscard]] Json matrix_to_json(const Eigen::MatrixXd& m);

}  // namespace coinecon::json_export
