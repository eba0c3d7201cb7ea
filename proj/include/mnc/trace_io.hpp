// Line-delimited trace files.
//
//   {"format":"mnc-trace","version":1,"program":"<name>"}
//   {"step":0,"control_input":[..],"gates":[..],"read_addrs":[..],
//    "read_values":[..],"module_outputs":[[..],..],"write_addrs":[..],
//    "write_values":[..],"halted":false[,"memory":[..]]}
//   ...
//   {"status":"halted","steps":N,"final_memory":[..]}
//
// Doubles are written with 17 significant digits so a parsed trace
// re-serializes to identical bytes.
#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mnc/machine.hpp"
#include "mnc/text.hpp"

namespace mnc {

inline std::string serialize_step(const StepRecord& r) {
  std::string s = "{\"step\":" + std::to_string(r.step);
  s += ",\"control_input\":" + format_array(r.control_input);
  s += ",\"gates\":" + format_array(r.gates);
  s += ",\"read_addrs\":" + format_array(r.read_addresses);
  s += ",\"read_values\":" + format_array(r.read_values);
  s += ",\"module_outputs\":[";
  for (std::size_t k = 0; k < r.module_outputs.size(); ++k) {
    if (k) s += ',';
    s += format_array(r.module_outputs[k]);
  }
  s += "],\"write_addrs\":" + format_array(r.write_addresses);
  s += ",\"write_values\":" + format_array(r.write_values);
  s += r.halted ? ",\"halted\":true" : ",\"halted\":false";
  if (r.snapshot) s += ",\"memory\":" + format_array(*r.snapshot);
  s += '}';
  return s;
}

inline void write_trace(std::ostream& out, const std::string& program, const ExecutionTrace& trace) {
  out << "{\"format\":\"mnc-trace\",\"version\":1,\"program\":" << nlohmann::json(program).dump() << "}\n";
  for (const auto& r : trace.records) out << serialize_step(r) << '\n';
  out << "{\"status\":\"" << to_string(trace.status) << "\",\"steps\":" << trace.records.size()
      << ",\"final_memory\":" << format_array(trace.final_memory.values) << "}\n";
}

inline std::string trace_to_string(const std::string& program, const ExecutionTrace& trace) {
  std::ostringstream os;
  write_trace(os, program, trace);
  return os.str();
}

struct LoadedTrace {
  std::string program;
  ExecutionTrace trace;
};

namespace detail {

inline std::vector<double> json_doubles(const nlohmann::json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_array()) throw ParseError(std::string("trace: missing array '") + field + "'");
  std::vector<double> out;
  for (const auto& v : j[field]) {
    if (!v.is_number()) throw ParseError(std::string("trace: non-numeric entry in '") + field + "'");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace detail

inline LoadedTrace read_trace(std::istream& in) {
  LoadedTrace out;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  bool have_footer = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (have_footer) throw ParseError("trace: content after the final line");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("trace line " + std::to_string(lineno) + ": " + e.what());
    }
    if (!have_header) {
      if (j.value("format", "") != "mnc-trace") throw ParseError("trace: missing header line");
      out.program = j.value("program", "");
      have_header = true;
    } else if (j.contains("status")) {
      const std::string status = j["status"].get<std::string>();
      if (status == "halted") out.trace.status = TerminationStatus::halted;
      else if (status == "max_steps_exceeded") out.trace.status = TerminationStatus::max_steps_exceeded;
      else throw ParseError("trace: unknown status '" + status + "'");
      out.trace.final_memory = MemoryState(detail::json_doubles(j, "final_memory"));
      if (j.value("steps", std::size_t{0}) != out.trace.records.size())
        throw ParseError("trace: step count does not match the number of records");
      have_footer = true;
    } else {
      StepRecord r;
      r.step = j.at("step").get<std::size_t>();
      r.control_input = detail::json_doubles(j, "control_input");
      r.gates = detail::json_doubles(j, "gates");
      r.read_addresses = detail::json_doubles(j, "read_addrs");
      r.read_values = detail::json_doubles(j, "read_values");
      for (const auto& row : j.at("module_outputs")) {
        std::vector<double> u;
        for (const auto& v : row) u.push_back(v.get<double>());
        r.module_outputs.push_back(std::move(u));
      }
      r.write_addresses = detail::json_doubles(j, "write_addrs");
      r.write_values = detail::json_doubles(j, "write_values");
      r.halted = j.at("halted").get<bool>();
      if (j.contains("memory")) r.snapshot = detail::json_doubles(j, "memory");
      out.trace.records.push_back(std::move(r));
    }
  }
  if (!have_header || !have_footer) throw ParseError("trace: truncated file");
  return out;
}

}  // namespace mnc
