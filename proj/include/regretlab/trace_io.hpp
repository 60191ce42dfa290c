#pragma once

#include <string>

#include "regretlab/types.hpp"

namespace regretlab {

enum class TraceFormat { csv, json };

// CSV columns exactly: round,alg_loss_nats,comparator_loss_nats,cum_regret_nats
// with round starting at 1; JSON mirrors the same fields. Floats are written
// with 17 significant digits so a parse reproduces them bit for bit.
// I/O failures throw std::runtime_error carrying the path.
void emit_trace(const RegretTrace& trace, const std::string& path, TraceFormat format);

std::string trace_to_csv(const RegretTrace& trace);
std::string trace_to_json(const RegretTrace& trace);

RegretTrace read_trace_json(const std::string& path);

}  // namespace regretlab
