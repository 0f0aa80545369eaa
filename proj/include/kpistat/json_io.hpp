// Copyright 2026 The kpistat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "json.hpp"

#include "kpistat/clustering.hpp"
#include "kpistat/correlation.hpp"
#include "kpistat/distances.hpp"
#include "kpistat/factor_analysis.hpp"
#include "kpistat/kpi_frame.hpp"
#include "kpistat/ordination.hpp"

namespace kpistat {

nlohmann::json matrix_to_json(const Matrix& m);

nlohmann::json to_json(const KpiFrame& frame);
nlohmann::json to_json(const CorrelationResult& result);
nlohmann::json to_json(const DistanceMatrix& dm);
nlohmann::json to_json(const Dendrogram& tree);
nlohmann::json to_json(const Partition& partition);
nlohmann::json to_json(const Embedding& embedding);
nlohmann::json to_json(const CaResult& ca);
nlohmann::json to_json(const FactorModel& model);

/// Label,x,y rows for the first two columns of `coords` (zero-padded when fewer).
std::string coordinates_csv(const std::vector<std::string>& labels, const Matrix& coords,
                            std::string_view kind = {});

}  // namespace kpistat
