// Copyright 2026 The privguess Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRIVGUESS_IO_HPP_
#define PRIVGUESS_IO_HPP_

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "privguess/curve.hpp"
#include "privguess/pmf.hpp"

namespace privguess {

// 12 significant digits, '.' decimal point, no locale surprises.
std::string format_sig(double v);

// Joint pmf CSV: header "x,y,p", one row per cell in row-major order.
std::string joint_to_csv(const JointPmf& joint);
JointPmf joint_from_csv(const std::string& text, bool normalize = false);

nlohmann::ordered_json joint_to_json(const JointPmf& joint);
JointPmf joint_from_json(const nlohmann::json& j, bool normalize = false);
nlohmann::ordered_json channel_to_json(const Channel& ch);

struct CurveCsvOptions {
  bool source_column = false;   // oracle curves: lp | search
  std::vector<std::string> sources;
  bool n_column = false;        // vector curves
  int n = 1;
  bool achieved_column = false;
  bool upper_column = false;    // Markov bounds
  std::vector<double> upper;
};

// Fixed schema: epsilon,utility,regime,filter_param then optional columns.
std::string curve_to_csv(const TradeoffCurve& curve,
                         const CurveCsvOptions& opts = {});

// JSON mirror: {"meta": ..., "points": [...]}; filter tables embedded for
// alphabets up to `embed_filter_max_inputs` rows.
nlohmann::ordered_json curve_to_json(const TradeoffCurve& curve,
                                     const nlohmann::ordered_json& meta,
                                     std::size_t embed_filter_max_inputs = 16);

void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

}  // namespace privguess

#endif  // PRIVGUESS_IO_HPP_
