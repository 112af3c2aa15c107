#include "isokd/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace isokd {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

}  // namespace

MixedHardLabel LabelRecord::hard_label() const {
  return MixedHardLabel(label_a, label_b, gamma, soft.size());
}

DataError::DataError(std::size_t line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                  : message),
      line_(line) {}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string serialize_record(const LabelRecord& record) {
  std::string out = "{\"id\":";
  out += json(record.id).dump();
  out += ",\"gamma\":";
  out += format_double(record.gamma);
  out += ",\"label_a\":";
  out += std::to_string(record.label_a);
  out += ",\"label_b\":";
  out += std::to_string(record.label_b);
  out += ",\"soft\":[";
  for (Index k = 0; k < record.soft.size(); ++k) {
    if (k > 0) out += ',';
    out += format_double(record.soft[k]);
  }
  out += "]}";
  return out;
}

LabelRecord parse_record(const std::string& line, std::size_t line_no) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw DataError(line_no, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw DataError(line_no, "record is not a JSON object");
  for (const char* key : {"id", "gamma", "label_a", "label_b", "soft"}) {
    if (!j.contains(key)) {
      throw DataError(line_no, std::string("missing key \"") + key + "\"");
    }
  }
  LabelRecord record;
  record.line = line_no;
  try {
    record.id = j.at("id").get<std::string>();
    record.gamma = j.at("gamma").get<double>();
    record.label_a = j.at("label_a").get<Index>();
    record.label_b = j.at("label_b").get<Index>();
    const auto& soft = j.at("soft");
    if (!soft.is_array() || soft.size() < 2) {
      throw DataError(line_no, "\"soft\" must be an array of at least 2 numbers");
    }
    record.soft.resize(static_cast<Index>(soft.size()));
    for (std::size_t k = 0; k < soft.size(); ++k) {
      record.soft[static_cast<Index>(k)] = soft.at(k).get<double>();
    }
  } catch (const json::exception& e) {
    throw DataError(line_no, std::string("bad field type: ") + e.what());
  }
  try {
    record.hard_label();  // validates labels and gamma against the soft length
  } catch (const std::invalid_argument& e) {
    throw DataError(line_no, e.what());
  }
  return record;
}

std::vector<LabelRecord> read_records(std::istream& in) {
  std::vector<LabelRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    LabelRecord record = parse_record(line, line_no);
    if (!records.empty() && record.soft.size() != records.front().soft.size()) {
      throw DataError(line_no,
                      "label count " + std::to_string(record.soft.size()) +
                          " differs from first record's " +
                          std::to_string(records.front().soft.size()));
    }
    records.push_back(std::move(record));
  }
  return records;
}

std::vector<LabelRecord> read_records_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(0, "cannot open " + path);
  return read_records(in);
}

void write_records_file(const std::string& path,
                        const std::vector<LabelRecord>& records) {
  std::ofstream out(path);
  if (!out) throw DataError(0, "cannot write " + path);
  for (const auto& record : records) out << serialize_record(record) << '\n';
}

ExperimentConfig parse_experiment_config(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw DataError(line_no, "expected key = value");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    try {
      if (key == "data_seed") cfg.data_seed = std::stoull(value);
      else if (key == "n_train") cfg.n_train = std::stol(value);
      else if (key == "n_test") cfg.n_test = std::stol(value);
      else if (key == "dim") cfg.dim = std::stol(value);
      else if (key == "num_classes") cfg.num_classes = std::stol(value);
      else if (key == "overlap") cfg.overlap = std::stod(value);
      else if (key == "label_noise") cfg.label_noise = std::stod(value);
      else if (key == "mode") cfg.mode = value;
      else if (key == "augmentation") cfg.augmentation = value;
      else if (key == "epochs") cfg.epochs = std::stoi(value);
      else if (key == "teacher_epochs") cfg.teacher_epochs = std::stoi(value);
      else if (key == "learning_rate") cfg.learning_rate = std::stod(value);
      else if (key == "teacher_learning_rate") cfg.teacher_learning_rate = std::stod(value);
      else if (key == "batch_size") cfg.batch_size = std::stol(value);
      else if (key == "hidden_dim") cfg.hidden_dim = std::stol(value);
      else if (key == "mixing_alpha") cfg.mixing_alpha = std::stod(value);
      else if (key == "tau") cfg.tau = std::stod(value);
      else if (key == "alpha") cfg.alpha = std::stod(value);
      else if (key == "beta") cfg.beta = std::stod(value);
      else if (key == "sigma") cfg.sigma = std::stod(value);
      else if (key == "out_dir") cfg.out_dir = value;
      else if (key == "seeds") {
        cfg.seeds.clear();
        for (const auto& item : split(value, ',')) {
          if (!item.empty()) cfg.seeds.push_back(std::stoull(item));
        }
        if (cfg.seeds.empty()) throw DataError(line_no, "seeds must not be empty");
      } else if (key == "fractions") {
        cfg.fractions.clear();
        for (const auto& item : split(value, ',')) {
          if (!item.empty()) cfg.fractions.push_back(std::stod(item));
        }
        if (cfg.fractions.empty()) {
          throw DataError(line_no, "fractions must not be empty");
        }
      } else {
        throw DataError(line_no, "unknown key \"" + key + "\"");
      }
    } catch (const DataError&) {
      throw;
    } catch (const std::exception&) {
      throw DataError(line_no, "bad value for \"" + key + "\": " + value);
    }
  }
  return cfg;
}

ExperimentConfig parse_experiment_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(0, "cannot open " + path);
  return parse_experiment_config(in);
}

}  // namespace isokd
