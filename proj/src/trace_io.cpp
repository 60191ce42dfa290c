#include "regretlab/trace_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace regretlab {

namespace {

// 17 significant digits round-trips every double exactly.
std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace

std::string trace_to_csv(const RegretTrace& trace) {
  std::ostringstream out;
  out << "round,alg_loss_nats,comparator_loss_nats,cum_regret_nats\n";
  for (std::size_t t = 0; t < trace.rounds(); ++t) {
    out << (t + 1) << ',' << fmt(trace.alg_loss[t]) << ',' << fmt(trace.comparator_loss[t])
        << ',' << fmt(trace.cum_regret[t]) << '\n';
  }
  return out.str();
}

std::string trace_to_json(const RegretTrace& trace) {
  std::ostringstream out;
  out << "{\"trace\":[";
  for (std::size_t t = 0; t < trace.rounds(); ++t) {
    if (t) out << ',';
    out << "{\"round\":" << (t + 1) << ",\"alg_loss_nats\":" << fmt(trace.alg_loss[t])
        << ",\"comparator_loss_nats\":" << fmt(trace.comparator_loss[t])
        << ",\"cum_regret_nats\":" << fmt(trace.cum_regret[t]) << '}';
  }
  out << "]}\n";
  return out.str();
}

void emit_trace(const RegretTrace& trace, const std::string& path, TraceFormat format) {
  write_file(path, format == TraceFormat::csv ? trace_to_csv(trace) : trace_to_json(trace));
}

RegretTrace read_trace_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  nlohmann::json doc = nlohmann::json::parse(in);
  RegretTrace trace;
  for (const auto& row : doc.at("trace")) {
    trace.alg_loss.push_back(row.at("alg_loss_nats").get<double>());
    trace.comparator_loss.push_back(row.at("comparator_loss_nats").get<double>());
    trace.cum_regret.push_back(row.at("cum_regret_nats").get<double>());
  }
  return trace;
}

}  // namespace regretlab
