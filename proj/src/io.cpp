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

#include "privguess/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace privguess {

std::string format_sig(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string joint_to_csv(const JointPmf& joint) {
  std::string out = "x,y,p\n";
  for (std::size_t x = 0; x < joint.m; ++x)
    for (std::size_t y = 0; y < joint.n; ++y) {
      out += std::to_string(x);
      out += ',';
      out += std::to_string(y);
      out += ',';
      out += format_sig(joint.at(x, y));
      out += '\n';
    }
  return out;
}

JointPmf joint_from_csv(const std::string& text, bool normalize) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("joint csv: empty input");
  // tolerate trailing \r from CRLF files
  auto strip = [](std::string& s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
  };
  strip(line);
  if (line != "x,y,p") {
    throw ValidationError("joint csv: expected header 'x,y,p', got '" + line +
                          "'");
  }
  struct Cell { std::size_t x, y; double p; };
  std::vector<Cell> cells;
  std::size_t max_x = 0, max_y = 0;
  while (std::getline(in, line)) {
    strip(line);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string fx, fy, fp;
    if (!std::getline(ls, fx, ',') || !std::getline(ls, fy, ',') ||
        !std::getline(ls, fp)) {
      throw ValidationError("joint csv: malformed row '" + line + "'");
    }
    Cell c{};
    try {
      c.x = std::stoul(fx);
      c.y = std::stoul(fy);
      c.p = std::stod(fp);
    } catch (const std::exception&) {
      throw ValidationError("joint csv: malformed row '" + line + "'");
    }
    max_x = std::max(max_x, c.x);
    max_y = std::max(max_y, c.y);
    cells.push_back(c);
  }
  if (cells.empty()) throw ValidationError("joint csv: no rows");
  std::vector<double> table((max_x + 1) * (max_y + 1), 0.0);
  for (const Cell& c : cells) table[c.x * (max_y + 1) + c.y] = c.p;
  return JointPmf(max_x + 1, max_y + 1, std::move(table), normalize);
}

nlohmann::ordered_json joint_to_json(const JointPmf& joint) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t x = 0; x < joint.m; ++x) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t y = 0; y < joint.n; ++y) row.push_back(joint.at(x, y));
    rows.push_back(row);
  }
  return nlohmann::ordered_json{{"m", joint.m}, {"n", joint.n}, {"p", rows}};
}

JointPmf joint_from_json(const nlohmann::json& j, bool normalize) {
  try {
    const auto& rows = j.at("p");
    std::size_t m = rows.size();
    if (m == 0) throw ValidationError("joint json: empty table");
    std::size_t n = rows.at(0).size();
    std::vector<double> table;
    table.reserve(m * n);
    for (const auto& row : rows) {
      if (row.size() != n) throw ValidationError("joint json: ragged table");
      for (const auto& v : row) table.push_back(v.get<double>());
    }
    return JointPmf(m, n, std::move(table), normalize);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("joint json: ") + e.what());
  }
}

nlohmann::ordered_json channel_to_json(const Channel& ch) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t y = 0; y < ch.n; ++y) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t z = 0; z < ch.k; ++z) row.push_back(ch.at(y, z));
    rows.push_back(row);
  }
  return nlohmann::ordered_json{{"n", ch.n}, {"k", ch.k}, {"rows", rows}};
}

std::string curve_to_csv(const TradeoffCurve& curve,
                         const CurveCsvOptions& opts) {
  std::string out = "epsilon,utility,regime,filter_param";
  if (opts.n_column) out += ",n";
  if (opts.achieved_column) out += ",achieved";
  if (opts.upper_column) out += ",upper";
  if (opts.source_column) out += ",source";
  out += '\n';
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const TradeoffPoint& pt = curve.points[i];
    out += format_sig(pt.epsilon);
    out += ',';
    out += format_sig(pt.utility);
    out += ',';
    out += regime_name(pt.regime);
    out += ',';
    out += format_sig(pt.filter_param);
    if (opts.n_column) {
      out += ',';
      out += std::to_string(opts.n);
    }
    if (opts.achieved_column) out += pt.achieved ? ",1" : ",0";
    if (opts.upper_column) {
      out += ',';
      out += format_sig(i < opts.upper.size() ? opts.upper[i] : 0.0);
    }
    if (opts.source_column) {
      out += ',';
      out += i < opts.sources.size() ? opts.sources[i] : "lp";
    }
    out += '\n';
  }
  return out;
}

nlohmann::ordered_json curve_to_json(const TradeoffCurve& curve,
                                     const nlohmann::ordered_json& meta,
                                     std::size_t embed_filter_max_inputs) {
  nlohmann::ordered_json points = nlohmann::ordered_json::array();
  for (const TradeoffPoint& pt : curve.points) {
    nlohmann::ordered_json jp{{"epsilon", pt.epsilon},
                              {"utility", pt.utility},
                              {"regime", regime_name(pt.regime)},
                              {"filter_param", pt.filter_param},
                              {"achieved", pt.achieved}};
    if (pt.filter && pt.filter->n <= embed_filter_max_inputs) {
      jp["filter"] = channel_to_json(*pt.filter);
    }
    points.push_back(jp);
  }
  return nlohmann::ordered_json{{"meta", meta},
                                {"eps_min", curve.eps_min},
                                {"eps_max", curve.eps_max},
                                {"points", points}};
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open for writing: " + path);
  out << contents;
  if (!out) throw ValidationError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace privguess
