#include "ncdag/slot_log.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace ncdag::engine {

void SlotLogWriter::write(const SlotOutcome& o) {
  nlohmann::ordered_json j;
  j["run"] = run_tag_;
  j["round"] = o.round;
  j["start_slot"] = o.start_slot;
  j["slots"] = o.slots;
  j["result"] = to_string(o.result);
  j["source"] = o.source;
  j["generation"] = o.generation;
  auto actions = nlohmann::ordered_json::array();
  for (auto a : o.actions) actions.push_back(to_string(a));
  j["actions"] = std::move(actions);
  j["impacts"] = o.impacts;
  j["innovative"] = o.innovative;
  std::string modes;
  for (auto m : o.modes) modes.push_back(static_cast<char>(m));
  j["modes"] = modes;
  out_ << j.dump() << '\n';
}

std::vector<SlotLogEntry> read_slot_log(std::istream& in) {
  std::vector<SlotLogEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      SlotLogEntry e;
      e.run = j.at("run").get<std::int64_t>();
      e.round = j.at("round").get<std::uint64_t>();
      e.start_slot = j.at("start_slot").get<std::uint64_t>();
      e.slots = j.at("slots").get<std::uint64_t>();
      e.result = j.at("result").get<std::string>();
      e.source = j.at("source").get<int>();
      e.generation = j.at("generation").get<int>();
      e.modes = j.at("modes").get<std::string>();
      entries.push_back(std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      throw std::runtime_error("slot log line " + std::to_string(line_no) + ": " + ex.what());
    }
  }
  return entries;
}

std::vector<double> energy_from_log(const std::vector<SlotLogEntry>& entries, const EnergyModel& model,
                                    double slot_us) {
  std::vector<double> energy;
  for (const auto& e : entries) {
    if (energy.size() < e.modes.size()) energy.resize(e.modes.size(), 0.0);
    const double seconds = static_cast<double>(e.slots) * slot_us * 1e-6;
    for (std::size_t i = 0; i < e.modes.size(); ++i) {
      switch (e.modes[i]) {
        case 'T': energy[i] += model.transmit_w * seconds; break;
        case 'R': energy[i] += model.receive_w * seconds; break;
        case 'I': energy[i] += model.idle_w * seconds; break;
        default: throw std::runtime_error("unknown radio mode in slot log");
      }
    }
  }
  return energy;
}

}  // namespace ncdag::engine
