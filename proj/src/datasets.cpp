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

#include <array>
#include <string>
#include <vector>

#include "kpistat/error.hpp"
#include "kpistat/kpi_frame.hpp"

namespace kpistat {

namespace {

// Hourly QoS KPIs of the trial network.
constexpr std::array<std::array<double, 5>, 20> kTable1 = {{
    {1, 0, 0, 0.00204, 2.442508},
    {1, 0, 0, 0.00213, 3.348526},
    {3, 0.00028, 0, 0.00238, 87.952500},
    {3, 0, 0, 0.00243, 99.157604},
    {5, 0, 0, 0.00294, 216.021441},
    {6, 0, 0.00028, 0.00277, 238.313785},
    {2, 0, 0, 0.00208, 28.812852},
    {2, 0, 0, 0.00213, 48.393216},
    {3, 0.00333, 0.00056, 0.00217, 65.983333},
    {2, 0, 0, 0.00208, 29.313644},
    {2, 0, 0.0025, 0.00213, 57.543637},
    {1, 0, 0, 0.00200, 2.781329},
    {1, 0, 0, 0.00200, 2.660693},
    {1, 0, 0, 0.00200, 2.667828},
    {1, 0, 0, 0.00200, 3.030091},
    {1, 0, 0, 0.00200, 2.578499},
    {1, 0, 0, 0.00204, 2.371938},
    {1, 0, 0, 0.00213, 2.370775},
    {1, 0, 0, 0.00238, 2.373311},
    {1, 0, 0, 0.00243, 2.369829},
}};

// Per-minute QoS and per-service throughput samples.
constexpr std::array<std::array<double, 8>, 20> kTable2 = {{
    {1.219, 26.89, 1, 3.376, 1.12, 5.779, 0, 6.170},
    {1.114, 11.15, 0, 1.201, 2.79, 3.543, 0.207, 2.599},
    {1.115, 11.16, 0, 1.101, 1.59, 2.450, 0, 2.413},
    {1.158, 14.65, 0, 1.770, 1.19, 0, 0, 2.732},
    {1.155, 14.65, 0, 0.792, 3.56, 2.769, 0, 1.910},
    {1.301, 30.69, 1, 4.095, 5.16, 0, 0.414, 5.974},
    {1.293, 30.69, 1, 6.010, 3.31, 5.981, 0, 6.316},
    {1.289, 26.84, 0, 5.508, 2.17, 6.774, 0.128, 5.154},
    {1.281, 26.84, 1, 7.965, 1.72, 5.853, 0.327, 5.780},
    {1.283, 26.52, 0, 4.781, 3.17, 6.120, 0, 3.125},
    {1.285, 26.52, 0, 3.790, 6.03, 7.002, 0, 4.538},
    {1.311, 32.93, 2, 5.834, 3.17, 9.176, 0, 7.437},
    {1.309, 32.93, 1, 7.860, 6.58, 8.402, 1.379, 11.508},
    {1.193, 19.24, 0, 1.659, 4.03, 5.198, 0.693, 5.001},
    {1.201, 19.24, 0, 1.878, 5.24, 4.708, 0.145, 4.609},
    {1.282, 28.75, 1, 4.012, 6.79, 7.934, 0, 8.622},
    {1.291, 28.75, 1, 4.665, 6.69, 0, 0.019, 7.480},
    {1.450, 45.62, 11, 5.234, 7.75, 11.356, 0.954, 23.990},
    {1.499, 45.62, 7, 6.651, 6.51, 16.435, 0, 24.105},
    {1.460, 45.63, 1, 5.633, 6.50, 10.994, 0, 19.786},
}};

template <std::size_t R, std::size_t C>
KpiFrame make_frame(const std::array<std::array<double, C>, R>& table, const std::string& prefix,
                    std::vector<std::string> labels, std::vector<std::string> units) {
  std::vector<std::string> samples;
  Matrix m(R, C);
  for (std::size_t i = 0; i < R; ++i) {
    samples.push_back(prefix + std::to_string(i + 1));
    for (std::size_t j = 0; j < C; ++j) m(i, j) = table[i][j];
  }
  return KpiFrame(std::move(samples), std::move(labels), std::move(units), std::move(m));
}

}  // namespace

const std::vector<DatasetInfo>& builtin_datasets() {
  static const std::vector<DatasetInfo> infos = {
      {BuiltinDataset::table1_kpi,
       "table1_kpi",
       "20 hourly QoS KPI samples: GGSN utilization, Gn/Gi packet loss, latency, Gi throughput",
       "Sample period",
       {"first sample is printed as 'Hour 1' in the source table; all samples use 'Hr k'"}},
      {BuiltinDataset::table2_services,
       "table2_services",
       "20 of 480 per-minute samples: latency, throughput, packet losses and per-service throughput",
       "Sample Period",
       {"'Voice' is labelled 'Audio' in the published correlation output",
        "E-mail has no unit in the source table; recorded as Mbps by analogy",
        "Packet Losses has no unit in the source table"}},
  };
  return infos;
}

const DatasetInfo& builtin_info(std::string_view name) {
  for (const auto& info : builtin_datasets())
    if (info.name == name) return info;
  throw DomainError("unknown builtin dataset '" + std::string(name) + "'");
}

const DatasetInfo& builtin_info(BuiltinDataset id) {
  for (const auto& info : builtin_datasets())
    if (info.id == id) return info;
  throw DomainError("unknown builtin dataset");
}

KpiFrame builtin_dataset(BuiltinDataset name) {
  switch (name) {
    case BuiltinDataset::table1_kpi:
      return make_frame(kTable1, "Hr ",
                        {"GGSN utilization", "Gn interface Packet loss", "Gi interface Packet loss",
                         "Latency", "Throughput in Gi interface(Eth1:100)"},
                        {"%", "Packet/s", "Packet/s", "second", "Mbps"});
    case BuiltinDataset::table2_services:
      return make_frame(kTable2, "Sample ",
                        {"Latency", "Throughput", "Packet Losses", "Web service", "Voice", "FTP",
                         "E-mail", "Video"},
                        {"second", "Mbps", "", "Mbps", "Mbps", "Mbps", "Mbps", "Mbps"});
  }
  throw DomainError("unknown builtin dataset");
}

}  // namespace kpistat
